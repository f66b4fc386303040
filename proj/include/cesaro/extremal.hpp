#pragma once

#include <cstdint>

#include "cesaro/exponents.hpp"
#include "cesaro/operators.hpp"

namespace cesaro {

/// Near-extremal input for the averaging operator minus identity at p > 2:
/// a flat negative head of length m followed by the power-law tail
/// x_n = (n-1)^{1-r} - n^{1-r} with decay rate r = 1/t_p. The image y = C x
/// and the difference z = y - x have matching closed forms, so all three are
/// available without applying the operator.
class ExtremalSequence {
public:
    ExtremalSequence(double p, std::int64_t m);

    double p() const noexcept { return p_; }
    double rate() const noexcept { return r_; }      ///< r = 1/t_p, always > 2
    std::int64_t cutoff() const noexcept { return m_; }
    double envelope_minimum() const noexcept { return m_value_; }

    double x(std::int64_t n) const;
    double y(std::int64_t n) const;
    double z(std::int64_t n) const;

    /// Materialize x_1..x_N, N > m.
    RealVector build(std::int64_t length) const;

private:
    double p_;
    double r_;
    double m_value_;
    std::int64_t m_;
};

struct ExtremalReport {
    double p = 0;
    double r = 0;
    std::int64_t m = 0;
    std::int64_t N = 0;
    double sum_x_p = 0;
    double sum_z_p = 0;
    double ratio_p = 0;         ///< sum_z_p / sum_x_p
    double analytic_limit = 0;  ///< 1 / m_p
    double gap = 0;             ///< analytic_limit - ratio_p
};

/// Closed-form lower bound for the ratio at finite cutoff m; increases to
/// 1/m_p as m grows.
double ratio_lower_bound_at_cutoff(double p, double r, std::int64_t m);

/// p-th power sums of x and z for the extremal family, streamed in O(N) with
/// compensated accumulation. The integral-comparison tail bounds beyond N must
/// stay below 1e-12 of the partial sums, otherwise a std::runtime_error asks
/// for a larger N. The computed ratio is checked to lie between the cutoff
/// lower bound and the analytic limit.
ExtremalReport discrete_ratio(double p, std::int64_t m, std::int64_t N);

struct ContinuousIntegrals {
    double integral_x_p;  ///< 1 + (r-1)^p / (pr - 1)
    double integral_z_p;  ///< r^p / (pr - 1)
};

/// Exact integrals for the continuous extremal pair; their ratio reproduces
/// 1/m_p to full precision (verified internally at 1e-11 relative).
ContinuousIntegrals continuous_extremal_integrals(double p);

struct QuadratureSpec {
    int panels = 10000;
    double cut = 1000.0;   ///< quadrature on (0, cut], analytic tail beyond
    double tol = 1e-6;     ///< admissible relative discrepancy
};

/// Composite-quadrature cross check of the closed forms above (the powers are
/// integrated numerically in log space, never via their antiderivatives, so
/// the two routes stay independent). Returns the max relative discrepancy;
/// throws std::runtime_error when it exceeds spec.tol.
double quadrature_check_continuous(const EvenRational& p, const QuadratureSpec& spec);

/// Piecewise constant function on (0, inf): values[i] on (breaks[i], breaks[i+1]),
/// zero outside (breaks.front(), breaks.back()).
struct StepFunction {
    std::vector<double> breaks;
    std::vector<double> values;
};

/// (integral of (y - x)^p) / ((p-1)^p integral of x^p) with y the dual
/// averaging of x computed exactly piece by piece. At most 1 for every x.
double dual_ratio_for_step(const StepFunction& x, const EvenRational& p);

/// Worst dual_ratio_for_step over `families` random step functions.
double dual_continuous_check(const EvenRational& p, int families,
                             std::uint64_t seed = 0x5EED);

}  // namespace cesaro
