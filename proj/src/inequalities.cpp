#include "cesaro/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "cesaro/minimizer.hpp"
#include "cesaro/operators.hpp"

namespace cesaro {

namespace {

constexpr double kSweepSlack = 1e-10;       // grid sweeps of proof inequalities
constexpr double kStructuralSlack = 1e-12;  // algebraic margins
constexpr double kLogSlack = 1e-14;         // pure log/tangent arithmetic

// One running minimum with the rounding scale captured at the worst point.
class WorstMargin {
public:
    void offer(double margin, double point, double scale) noexcept {
        if (!seen_ || margin < margin_) {
            seen_ = true;
            margin_ = margin;
            point_ = point;
            scale_ = std::max(1.0, scale);
        }
    }

    CheckReport report(std::string name, double p, std::int64_t grid,
                       double slack) const {
        CheckReport r;
        r.name = std::move(name);
        r.p = p;
        r.grid_size = grid;
        r.worst_margin = margin_;
        r.worst_point = point_;
        r.passed = margin_ >= -slack * scale_;
        return r;
    }

private:
    bool seen_ = false;
    double margin_ = 0.0;
    double point_ = 0.0;
    double scale_ = 1.0;
};

std::vector<double> uniform_grid(double lo, double hi, std::int64_t points) {
    if (points < 2 || !(lo < hi)) {
        throw std::domain_error("sweep grid needs at least 2 points, lo < hi");
    }
    std::vector<double> g;
    g.reserve(static_cast<std::size_t>(points));
    for (std::int64_t i = 0; i < points; ++i) {
        g.push_back(lo + (hi - lo) * static_cast<double>(i) /
                             static_cast<double>(points - 1));
    }
    return g;
}

// Dense patches around the analytic critical points, plus the points
// themselves: negative margins could only hide where the margin vanishes.
void refine_near(std::vector<double>& grid, double center, double radius,
                 std::int64_t points) {
    for (std::int64_t i = 0; i <= points; ++i) {
        grid.push_back(center - radius + 2.0 * radius * static_cast<double>(i) /
                                             static_cast<double>(points));
    }
    grid.push_back(center);
}

}  // namespace

MvtMargins mvt_sandwich_margins(const EvenRational& p, double a, double b) {
    const double q = p.value();
    const double diff = even_pow(b, q) - even_pow(a, q);
    return MvtMargins{diff - q * odd_pow(a, q - 1.0) * (b - a),
                      q * odd_pow(b, q - 1.0) * (b - a) - diff};
}

double transpose_pointwise_margin(const EvenRational& p, double t) {
    const double q = p.value();
    const double q_pow = std::exp((q - 2.0) * std::log(q));  // p^{p-2}
    const double lhs = (q - 1.0) * q_pow * even_pow(t, q) +
                       even_pow(t + 1.0, q) -
                       q * odd_pow(t + 1.0, q - 1.0) * t;
    return lhs - second_critical_value(q);
}

CriticalValues transpose_pointwise_critical_values(double p) {
    if (!(p >= 2.0)) {
        throw std::domain_error(
            "transpose_pointwise_critical_values: requires p >= 2");
    }
    CriticalValues cv;
    cv.at_zero = 1.0;
    cv.at_inv_pm1 = second_critical_value(p);
    cv.at_neg_inv_pp1 = std::exp((p - 2.0) * std::log(p) + std::log(2.0 * p - 1.0) +
                                 (1.0 - p) * std::log(p + 1.0));
    return cv;
}

double second_critical_value(double x) {
    if (!(x > 1.0)) {
        throw std::domain_error("second_critical_value: requires x > 1");
    }
    return std::exp((x - 2.0) * std::log(x) + (1.0 - x) * std::log(x - 1.0));
}

double second_critical_value_decrease(double x, double h) {
    if (!(x > 2.0)) {
        throw std::domain_error("second_critical_value_decrease: requires x > 2");
    }
    if (!(h > 0.0) || !std::isfinite(x + h)) {
        throw std::domain_error("second_critical_value_decrease: requires h > 0");
    }
    return second_critical_value(x) - second_critical_value(x + h);
}

TangentMargins log_tangent_margins(double x) {
    if (!(x > 0.0)) {
        throw std::domain_error("log_tangent_margins: requires x > 0");
    }
    const double lx = std::log(x);
    return TangentMargins{x - 1.0 - lx,
                          x / 2.0 - 1.0 + std::log(2.0) - lx,
                          x / 3.0 - 1.0 + std::log(3.0) - lx};
}

double log_comparison_margin(double p) {
    if (!(p >= 2.0)) {
        throw std::domain_error("log_comparison_margin: requires p >= 2");
    }
    return std::log(2.0 * p - 1.0) - (p - 1.0) * std::log((p + 1.0) / (p - 1.0));
}

double log_comparison_minorant(double p, int piece) {
    switch (piece) {
        case 1:
            return std::log(2.0 * p - 1.0) - 2.0;
        case 2:
            return std::log(2.0 * p - 1.0) - 1.0 +
                   (p - 1.0) * (0.5 - std::log(2.0));
        case 3:
            return std::log(2.0 * p - 1.0) - 2.0 / 3.0 +
                   (p - 1.0) * (2.0 / 3.0 - std::log(3.0));
        default:
            throw std::domain_error("log_comparison_minorant: piece must be 1..3");
    }
}

double envelope_global_margin(const EvenRational& p, double t) {
    const double q = p.value();
    return envelope_extended(t, q) - minimize_envelope(q).value;
}

std::vector<CheckReport> sweep_lemma1(const EvenRational& p, const SweepOptions& opt) {
    const double q = p.value();
    const double q_pow = std::exp((q - 2.0) * std::log(q));
    const double rhs = second_critical_value(q);
    const double equality_point = 1.0 / (q - 1.0);

    std::vector<double> grid = uniform_grid(opt.t_min, opt.t_max, opt.points);
    refine_near(grid, 0.0, 1e-2, 2000);
    refine_near(grid, equality_point, 1e-2, 2000);
    refine_near(grid, -1.0 / (q + 1.0), 1e-2, 2000);

    WorstMargin sweep;
    for (double t : grid) {
        const double lhs = (q - 1.0) * q_pow * even_pow(t, q) +
                           even_pow(t + 1.0, q) -
                           q * odd_pow(t + 1.0, q - 1.0) * t;
        sweep.offer(lhs - rhs, t, std::max(std::fabs(lhs), std::fabs(rhs)));
    }

    std::vector<CheckReport> out;
    out.push_back(sweep.report("lemma1", q,
                               static_cast<std::int64_t>(grid.size()), kSweepSlack));

    // Equality certificate at t = 1/(p-1).
    const double deviation = std::fabs(transpose_pointwise_margin(p, equality_point));
    WorstMargin eq;
    eq.offer(-deviation, equality_point, rhs);
    out.push_back(eq.report("lemma1_equality", q, 1, kSweepSlack));

    // The middle critical value must be the smallest of the three.
    const CriticalValues cv = transpose_pointwise_critical_values(q);
    WorstMargin order;
    order.offer(std::min(cv.at_zero, cv.at_neg_inv_pp1) - cv.at_inv_pm1, q,
                std::max(cv.at_zero, cv.at_neg_inv_pp1));
    out.push_back(order.report("lemma1_critical_values", q, 1, kStructuralSlack));
    return out;
}

std::vector<CheckReport> sweep_lemma2(const EvenRational& p, const SweepOptions& opt) {
    const double q = p.value();
    const EnvelopeMinimum mp = minimize_envelope(q);

    std::vector<double> grid = uniform_grid(opt.t_min, opt.t_max, opt.points);
    refine_near(grid, 0.0, 1e-2, 2000);
    refine_near(grid, mp.t, 1e-2, 2000);
    refine_near(grid, 0.5, 1e-2, 2000);

    WorstMargin minimum;
    WorstMargin decreasing;  // derivative < 0 left of 0
    WorstMargin increasing;  // derivative > 0 right of 1/2
    for (double t : grid) {
        const double f = envelope_extended(t, q);
        minimum.offer(f - mp.value, t, std::max(std::fabs(f), mp.value));
        if (t <= 0.0) {
            const double d = envelope_derivative_extended(t, q);
            decreasing.offer(-d, t, std::fabs(d));
        } else if (t >= 0.5) {
            const double d = envelope_derivative_extended(t, q);
            increasing.offer(d, t, std::fabs(d));
        }
    }

    const auto grid_size = static_cast<std::int64_t>(grid.size());
    std::vector<CheckReport> out;
    out.push_back(minimum.report("lemma2", q, grid_size, kSweepSlack));
    out.push_back(decreasing.report("lemma2_sign_neg", q, grid_size, kSweepSlack));
    out.push_back(increasing.report("lemma2_sign_pos", q, grid_size, kSweepSlack));
    return out;
}

std::vector<CheckReport> sweep_mvt(const EvenRational& p, const SweepOptions& opt) {
    if (opt.pairs < 1) {
        throw std::domain_error("sweep_mvt: needs at least one pair");
    }
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> box(-20.0, 20.0);

    WorstMargin lower;
    WorstMargin upper;
    for (std::int64_t i = 0; i < opt.pairs; ++i) {
        const double a = box(rng);
        const double b = box(rng);
        const MvtMargins m = mvt_sandwich_margins(p, a, b);
        const double scale = std::max(even_pow(a, p.value()), even_pow(b, p.value()));
        lower.offer(m.lower, a, scale);
        upper.offer(m.upper, a, scale);
    }
    // degenerate interval must give exact zeros
    const MvtMargins deg = mvt_sandwich_margins(p, 3.5, 3.5);
    lower.offer(deg.lower, 3.5, 1.0);
    upper.offer(deg.upper, 3.5, 1.0);

    std::vector<CheckReport> out;
    out.push_back(lower.report("mvt_lower", p.value(), opt.pairs + 1, kStructuralSlack));
    out.push_back(upper.report("mvt_upper", p.value(), opt.pairs + 1, kStructuralSlack));
    return out;
}

std::vector<CheckReport> sweep_tangent(const SweepOptions& opt) {
    if (opt.points < 2) {
        throw std::domain_error("sweep_tangent: needs at least 2 points");
    }
    // log spaced over (0, t_max], plus the exact tangency points
    const double hi = std::max(opt.t_max, 10.0);
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(opt.points) + 3);
    const double llo = std::log(1e-6);
    const double lhi = std::log(hi);
    for (std::int64_t i = 0; i < opt.points; ++i) {
        grid.push_back(std::exp(llo + (lhi - llo) * static_cast<double>(i) /
                                          static_cast<double>(opt.points - 1)));
    }
    grid.insert(grid.end(), {1.0, 2.0, 3.0});

    WorstMargin m1;
    WorstMargin m2;
    WorstMargin m3;
    for (double x : grid) {
        const TangentMargins t = log_tangent_margins(x);
        m1.offer(t.at_one, x, std::fabs(x));
        m2.offer(t.at_two, x, std::fabs(x));
        m3.offer(t.at_three, x, std::fabs(x));
    }

    const auto grid_size = static_cast<std::int64_t>(grid.size());
    std::vector<CheckReport> out;
    out.push_back(m1.report("tangent1", 0, grid_size, kLogSlack));
    out.push_back(m2.report("tangent2", 0, grid_size, kLogSlack));
    out.push_back(m3.report("tangent3", 0, grid_size, kLogSlack));
    return out;
}

std::vector<CheckReport> sweep_logpiece(const SweepOptions& opt) {
    std::vector<CheckReport> out;

    const std::int64_t points = std::max<std::int64_t>(opt.points, 1000);
    WorstMargin main;
    for (double pv : uniform_grid(2.0, 50.0, points)) {
        main.offer(log_comparison_margin(pv), pv, std::log(2.0 * pv));
    }
    out.push_back(main.report("logpiece", 0, points, kLogSlack));

    // each tangent-line minorant stays below the exact expression on its interval
    const double lo_bounds[3] = {5.0, 3.0, 2.0};
    const double hi_bounds[3] = {50.0, 5.0, 3.0};
    for (int piece = 1; piece <= 3; ++piece) {
        WorstMargin wm;
        for (double pv : uniform_grid(lo_bounds[piece - 1], hi_bounds[piece - 1], 4001)) {
            const double exact = log_comparison_margin(pv);
            wm.offer(exact - log_comparison_minorant(pv, piece), pv,
                     std::fabs(exact));
        }
        out.push_back(wm.report("logpiece_lb" + std::to_string(piece), 0, 4001,
                                kLogSlack));
    }

    // the minorants themselves are non-negative on their intervals
    WorstMargin nonneg;
    for (int piece = 1; piece <= 3; ++piece) {
        for (double pv : uniform_grid(lo_bounds[piece - 1], hi_bounds[piece - 1], 4001)) {
            nonneg.offer(log_comparison_minorant(pv, piece), pv, 1.0);
        }
    }
    out.push_back(nonneg.report("logpiece_pieces_nonneg", 0, 3 * 4001, kLogSlack));

    // monotone decrease of the second critical value, plus its value 1 at x = 2
    WorstMargin decrease;
    for (double x : uniform_grid(2.0 + 1e-9, 50.0, 4001)) {
        decrease.offer(second_critical_value_decrease(x, 1e-3), x, 1.0);
    }
    out.push_back(decrease.report("logpiece_g_decreasing", 0, 4001, kLogSlack));

    WorstMargin boundary;
    boundary.offer(-std::fabs(second_critical_value(2.0) - 1.0), 2.0, 1.0);
    out.push_back(boundary.report("logpiece_g_boundary", 0, 1, kLogSlack));
    return out;
}

std::vector<CheckReport> sweep_identities(const SweepOptions& opt) {
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> box(-1.0, 1.0);

    const std::int64_t sizes[] = {16, 1000, 100000};
    WorstMargin mean;
    WorstMargin transpose;
    WorstMargin telescoping;
    WorstMargin adjoint;
    for (std::int64_t n : sizes) {
        RealVector x(static_cast<std::size_t>(n));
        RealVector w(static_cast<std::size_t>(n));
        for (auto& v : x) v = box(rng);
        for (auto& v : w) v = box(rng);

        mean.offer(-mean_identity_residual(x), static_cast<double>(n), 1.0);
        transpose.offer(-transpose_identity_residual(x), static_cast<double>(n), 1.0);

        RealVector y = apply_cesaro(x);
        y.push_back(box(rng));  // length N+1 profile for the telescoping sum
        telescoping.offer(-telescoping_residual(y, 4.0), static_cast<double>(n), 1.0);
        telescoping.offer(-telescoping_residual(y, 10.0 / 3.0),
                          static_cast<double>(n), 1.0);

        // adjointness of the two sections: <C x, w> = <x, C^T w>
        const double lhs = dot(apply_cesaro(x), w);
        const double rhs = dot(x, apply_cesaro_transpose(w));
        const double scale = std::max(std::fabs(lhs), std::fabs(rhs));
        adjoint.offer(-std::fabs(lhs - rhs) / std::max(1.0, scale),
                      static_cast<double>(n), 1.0);
    }

    std::vector<CheckReport> out;
    out.push_back(mean.report("identity_mean", 0, 3, kStructuralSlack));
    out.push_back(transpose.report("identity_transpose", 0, 3, kStructuralSlack));
    out.push_back(telescoping.report("identity_telescoping", 0, 6, kStructuralSlack));
    out.push_back(adjoint.report("identity_adjoint", 0, 3, kStructuralSlack));
    return out;
}

}  // namespace cesaro
