#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cesaro/exponents.hpp"
#include "cesaro/operators.hpp"

namespace cesaro {

struct NormEstimate {
    double p = 0;
    std::int64_t N = 0;
    OperatorKind kind = OperatorKind::cesaro;
    double lower_bound = 0;
    double analytic = 0;
    double rel_gap = 0;  ///< (analytic - lower_bound) / analytic
    int iterations = 0;
    std::vector<double> ratio_trace;  ///< nondecreasing; every entry is a bound
};

/// Analytic operator norm of the chosen operator minus identity on l^p. The
/// transpose case for p < 2 is resolved through duality; the transpose at
/// p = inf is unbounded and rejected.
double analytic_norm(OperatorKind kind, const Exponent& p);

/// Ascent iteration x <- Phi_{p'}(M^T Phi_p(M x)) for the section p->p norm,
/// Phi_q(v) = sign(v) |v|^{q-1}. Each Rayleigh-type ratio ||M x||_p / ||x||_p
/// is a valid lower bound on the section norm (hence on the operator norm)
/// whether or not the iteration has converged, and the trace of ratios never
/// decreases. Stops when the ratio stalls within tol for three consecutive
/// iterations or at max_iter. Requires finite p > 1 and a nonzero start.
NormEstimate dual_power_lower_bound(OperatorKind kind, double p, std::int64_t N,
                                    std::span<const double> x0,
                                    int max_iter = 10000, double tol = 1e-12);

struct MultiStartOptions {
    int starts = 8;
    int max_iter = 10000;
    double tol = 1e-12;
    std::uint64_t seed = 0x5EED;
    int threads = 1;
};

/// Best dual_power_lower_bound over a deterministic family of starts: the
/// truncated extremal sequence (or its dual transform), power-law profiles,
/// the first basis vector, and seeded random fills. The p->p problem is not
/// convex, so this is a certified lower bound with no global claim.
NormEstimate multi_start_lower_bound(OperatorKind kind, double p, std::int64_t N,
                                     const MultiStartOptions& opt = {});

/// Runs the iteration on both sides of ||M||_p = ||M^T||_{p'} (exact equality
/// for finite sections) from matched seeds and returns the relative
/// discrepancy of the two bounds, which reflects only iteration truncation.
double duality_check(double p, std::int64_t N, int max_iter = 10000,
                     std::uint64_t seed = 0x5EED);

struct InterpolationReport {
    double p0 = 0, p = 0, p1 = 0;
    double theta = 0;   ///< 1/p = (1-theta)/p0 + theta/p1
    double lhs = 0;     ///< analytic norm at p
    double rhs = 0;     ///< product of the analytic norms at p0, p1, weighted
    bool holds = false;
    double section_p0 = 0, section_p = 0, section_p1 = 0;  ///< context bounds
};

/// Log-convexity consequence of interpolation between exponents: the analytic
/// norm at p stays below the weighted geometric mean of the norms at p0, p1.
/// Requires 2 < p0 < p < p1.
InterpolationReport interpolation_spot_check(double p0, double p, double p1,
                                             std::int64_t N = 256);

}  // namespace cesaro
