#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cesaro/exponents.hpp"

namespace cesaro {

/// Result of one grid sweep of a scalar inequality. worst_margin is the
/// smallest LHS - RHS found (>= 0 means the inequality held everywhere); for
/// equality certificates it is -|deviation|. passed applies the check's slack
/// at the scale of the worst point.
struct CheckReport {
    std::string name;
    double p = 0;  ///< 0 when the check does not depend on an exponent
    std::int64_t grid_size = 0;
    double worst_margin = 0;
    double worst_point = 0;
    bool passed = false;
};

struct MvtMargins {
    double lower;  ///< (b^p - a^p) - p a^{p-1}(b - a)
    double upper;  ///< p b^{p-1}(b - a) - (b^p - a^p)
};

/// Two-sided mean value sandwich for signed powers, valid on all of R for
/// qualifying exponents. Both margins are non-negative up to rounding.
MvtMargins mvt_sandwich_margins(const EvenRational& p, double a, double b);

/// LHS - RHS of the pointwise bound behind the transpose norm estimate:
///   (p-1) p^{p-2} t^p + (t+1)^p - p (t+1)^{p-1} t  >=  p^{p-2} (p-1)^{1-p}.
/// Equality holds at t = 1/(p-1).
double transpose_pointwise_margin(const EvenRational& p, double t);

struct CriticalValues {
    double at_zero;          ///< 1
    double at_inv_pm1;       ///< p^{p-2} (p-1)^{1-p}, the global minimum
    double at_neg_inv_pp1;   ///< p^{p-2} (2p-1) (p+1)^{1-p}
};

/// The three candidate minima of the pointwise bound's left-hand side, for any
/// real p >= 2 (all three coincide at p = 2).
CriticalValues transpose_pointwise_critical_values(double p);

/// p^{p-2} (p-1)^{1-p} as a function of a real exponent x > 1, evaluated in
/// log space. Equals 1 at x = 2 and decreases for x > 2.
double second_critical_value(double x);

/// second_critical_value(x) - second_critical_value(x + h); >= 0 for x > 2,
/// h > 0.
double second_critical_value_decrease(double x, double h);

struct TangentMargins {
    double at_one;    ///< (x - 1) - ln x
    double at_two;    ///< (x/2 - 1 + ln 2) - ln x
    double at_three;  ///< (x/3 - 1 + ln 3) - ln x
};

/// The logarithm lies below its tangent lines at x = 1, 2, 3; margins vanish
/// exactly at the tangency points. Requires x > 0.
TangentMargins log_tangent_margins(double x);

/// ln(2p-1) - (p-1) ln((p+1)/(p-1)) for p >= 2; non-negative, zero at p = 2.
/// Orders the second critical value below the third.
double log_comparison_margin(double p);

/// Tangent-line minorants of log_comparison_margin: piece 1 is valid on
/// [5, inf), piece 2 on [3, 5], piece 3 on [2, 3]. Each is <= the exact
/// expression on its interval.
double log_comparison_minorant(double p, int piece);

/// envelope_extended(t, p) - m_p; >= 0 for all real t when p qualifies.
double envelope_global_margin(const EvenRational& p, double t);

struct SweepOptions {
    double t_min = -50.0;
    double t_max = 50.0;
    std::int64_t points = 100000;  ///< uniform grid size (refinement is added)
    std::int64_t pairs = 10000;    ///< random pairs for the mvt sweep
    std::uint64_t seed = 0x5EED;
};

/// Suite sweeps. Report names are the stable identifiers used in CSV output
/// and by the verify command.
std::vector<CheckReport> sweep_lemma1(const EvenRational& p, const SweepOptions& opt);
std::vector<CheckReport> sweep_lemma2(const EvenRational& p, const SweepOptions& opt);
std::vector<CheckReport> sweep_mvt(const EvenRational& p, const SweepOptions& opt);
std::vector<CheckReport> sweep_tangent(const SweepOptions& opt);
std::vector<CheckReport> sweep_logpiece(const SweepOptions& opt);
std::vector<CheckReport> sweep_identities(const SweepOptions& opt);

}  // namespace cesaro
