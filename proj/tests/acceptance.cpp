// Acceptance suite: one pass/fail line per criterion, exit 0 only if all pass.
// Every tolerance is pinned here; the section lower-bound floors were fixed
// from converged oracle runs at the stated sizes (see the per-criterion
// comments) and the dual power bounds below reproduce them.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "cesaro/estimation.hpp"
#include "cesaro/extremal.hpp"
#include "cesaro/inequalities.hpp"
#include "cesaro/minimizer.hpp"
#include "cesaro/operators.hpp"

using namespace cesaro;

namespace {

int g_failures = 0;
std::vector<std::string> g_notes;

void note(const std::string& text) { g_notes.push_back(text); }

bool expect(bool ok, const std::string& what) {
    if (!ok) {
        note("  failed: " + what);
    }
    return ok;
}

void criterion(int index, const std::string& label, bool ok, double seconds) {
    std::printf("[%s] criterion %d: %s (%.1fs)\n", ok ? "PASS" : "FAIL", index,
                label.c_str(), seconds);
    if (!ok) {
        ++g_failures;
        for (const auto& line : g_notes) {
            std::printf("%s\n", line.c_str());
        }
    }
    g_notes.clear();
}

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_ =
        std::chrono::steady_clock::now();
};

double rel_err(double got, double want) {
    return std::fabs(got - want) / std::max(1.0, std::fabs(want));
}

// ---------------------------------------------------------------------------

bool criterion1_exact_values() {
    bool ok = true;
    ok &= expect(rel_err(cesaro_minus_identity_norm(Exponent(4.0 / 3.0)), 3.0) <=
                     1e-12,
                 "norm(4/3) = 3 to 1e-12");
    ok &= expect(std::fabs(cesaro_minus_identity_norm(Exponent(2.0)) - 1.0) <=
                     1e-12,
                 "norm(2) = 1");
    // both branches agree at p = 2: the envelope is identically 1 there
    for (double t : {0.0, 0.25, 0.5}) {
        ok &= expect(std::fabs(envelope(t, 2.0) - 1.0) <= 1e-12,
                     "envelope(t, 2) = 1 at t = " + std::to_string(t));
    }

    const EnvelopeMinimum m3 = minimize_envelope(3.0);
    const double sqrt2 = std::sqrt(2.0);
    ok &= expect(std::fabs(m3.value - (2.0 - sqrt2)) <= 1e-10,
                 "minimum at p = 3 is 2 - sqrt(2)");
    ok &= expect(std::fabs(cesaro_minus_identity_norm(Exponent(3.0)) -
                           std::pow(2.0 - sqrt2, -1.0 / 3.0)) <= 1e-10,
                 "norm(3) = (2 - sqrt 2)^(-1/3)");

    const EnvelopeMinimum m4 = minimize_envelope(4.0);
    ok &= expect(std::fabs(m4.t - 1.0 / 3.0) <= 1e-10, "t at p = 4 is 1/3");
    ok &= expect(std::fabs(m4.value - 1.0 / 3.0) <= 1e-10,
                 "minimum at p = 4 is 1/3");
    ok &= expect(std::fabs(cesaro_minus_identity_norm(Exponent(4.0)) -
                           std::pow(3.0, 0.25)) <= 1e-10,
                 "norm(4) = 3^(1/4)");

    ok &= expect(cesaro_minus_identity_norm(Exponent::infinite()) == 2.0,
                 "norm(inf) = 2");

    for (double p : {2.0, 3.0, 4.0, 10.0}) {
        const double t = transpose_minus_identity_norm(p);
        ok &= expect(std::fabs(t - (p - 1.0)) <= 1e-12,
                     "transpose norm is p - 1 at p = " + std::to_string(p));
        const double via_dual =
            cesaro_minus_identity_norm(Exponent(dual_exponent(p)));
        ok &= expect(std::fabs(t - via_dual) <= 1e-12 * t,
                     "transpose norm matches the dual formula at p = " +
                         std::to_string(p));
    }
    return ok;
}

bool criterion2_extremal_convergence() {
    bool ok = true;
    for (double p : {3.0, 4.0}) {
        double prev_ratio = 0.0;
        for (std::int64_t m : {100, 1000, 10000}) {
            const ExtremalReport rep = discrete_ratio(p, m, 1000 * m);
            ok &= expect(rep.ratio_p > prev_ratio,
                         "ratio strictly increases in m at p = " +
                             std::to_string(p) + ", m = " + std::to_string(m));
            ok &= expect(rep.ratio_p <= rep.analytic_limit * (1.0 + 1e-9),
                         "ratio stays below 1/m_p");
            ok &= expect(
                ratio_lower_bound_at_cutoff(p, rep.r, m) <= rep.ratio_p,
                "closed-form cutoff bound sits below the computed ratio");
            if (m == 10000) {
                ok &= expect(rep.gap <= 0.01 * rep.analytic_limit,
                             "ratio within 1% of 1/m_p at m = 10^4");
            }
            prev_ratio = rep.ratio_p;
        }
    }
    return ok;
}

bool criterion3_continuous_exactness() {
    bool ok = true;
    for (int k = 1; k <= 20; ++k) {
        const double p = 2.0 + 0.9 * k;  // 20 values in (2, 20]
        const ContinuousIntegrals ii = continuous_extremal_integrals(p);
        const double m_p = minimize_envelope(p).value;
        const double defect =
            std::fabs(ii.integral_z_p / ii.integral_x_p * m_p - 1.0);
        ok &= expect(defect <= 1e-11,
                     "continuous ratio identity at p = " + std::to_string(p) +
                         " (defect " + std::to_string(defect) + ")");
    }
    return ok;
}

bool criterion4_section_lower_bounds() {
    // Floors pinned from converged oracle runs at N = 4096 (multistart dual
    // power method run to stall, both dual routes agreeing to 14 digits):
    //   p = 4/3 achieved 2.24121 = 0.747 * analytic -- the finite section
    //   itself sits that far below the operator norm at this size, so the
    //   floor is 0.74; the other three achieve >= 0.998 * analytic.
    struct Cell {
        double p;
        double floor_fraction;
    };
    const Cell cells[] = {{4.0 / 3.0, 0.74}, {2.0, 0.95}, {3.0, 0.95},
                          {4.0, 0.95}};
    bool ok = true;
    for (const Cell& cell : cells) {
        MultiStartOptions opt;
        opt.starts = 8;
        opt.max_iter = 3000;
        opt.threads = 4;
        const NormEstimate est =
            multi_start_lower_bound(OperatorKind::cesaro, cell.p, 4096, opt);
        ok &= expect(est.lower_bound <= est.analytic * (1.0 + 1e-9),
                     "bound below analytic at p = " + std::to_string(cell.p));
        ok &= expect(est.lower_bound >= cell.floor_fraction * est.analytic,
                     "bound above " + std::to_string(cell.floor_fraction) +
                         " * analytic at p = " + std::to_string(cell.p) +
                         " (got " + std::to_string(est.lower_bound / est.analytic) +
                         ")");
        for (std::size_t i = 1; i < est.ratio_trace.size(); ++i) {
            if (!(est.ratio_trace[i] >=
                  est.ratio_trace[i - 1] * (1.0 - 1e-13))) {
                ok &= expect(false, "nondecreasing trace at p = " +
                                        std::to_string(cell.p));
                break;
            }
        }
    }
    return ok;
}

bool criterion5_inequality_suites() {
    SweepOptions opt;  // full default grids
    bool ok = true;
    const EvenRational exponents[] = {
        EvenRational::make(12, 5), EvenRational::make(8, 3),
        EvenRational::make(4, 1),  EvenRational::make(10, 3),
        EvenRational::make(6, 1),  EvenRational::make(22, 3)};
    auto check_all = [&](const std::vector<CheckReport>& reports) {
        for (const auto& rep : reports) {
            ok &= expect(rep.passed, rep.name + " at p = " +
                                         std::to_string(rep.p) + " (margin " +
                                         std::to_string(rep.worst_margin) + ")");
        }
    };
    for (const auto& q : exponents) {
        check_all(sweep_lemma1(q, opt));
        check_all(sweep_lemma2(q, opt));
        check_all(sweep_mvt(q, opt));
    }
    check_all(sweep_tangent(opt));
    check_all(sweep_logpiece(opt));
    check_all(sweep_identities(opt));
    return ok;
}

bool criterion6_algebraic_identities() {
    bool ok = true;
    std::mt19937_64 rng(0x5EED);
    std::uniform_real_distribution<double> box(-1.0, 1.0);
    for (std::size_t n : {100u, 10000u, 100000u}) {
        RealVector x(n);
        for (auto& v : x) {
            v = box(rng);
        }
        ok &= expect(mean_identity_residual(x) <= 1e-12,
                     "mean identity at N = " + std::to_string(n));
        ok &= expect(transpose_identity_residual(x) <= 1e-12,
                     "transpose identity at N = " + std::to_string(n));
        RealVector y = apply_cesaro(x);
        y.push_back(box(rng));
        ok &= expect(telescoping_residual(y, 4.0) <= 1e-12,
                     "telescoping identity at N = " + std::to_string(n));
    }

    // prefix sums against the naive quadratic oracle at N = 512
    RealVector x(512);
    for (auto& v : x) {
        v = box(rng);
    }
    const RealVector fast = apply_cesaro(x);
    const RealVector fast_t = apply_cesaro_transpose(x);
    for (std::size_t n = 0; n < x.size(); ++n) {
        double s = 0.0;
        for (std::size_t k = 0; k <= n; ++k) {
            s += x[k];
        }
        s /= static_cast<double>(n + 1);
        ok &= expect(std::fabs(fast[n] - s) <= 1e-13 * std::max(1.0, std::fabs(s)),
                     "prefix oracle row " + std::to_string(n));
        double t = 0.0;
        for (std::size_t k = n; k < x.size(); ++k) {
            t += x[k] / static_cast<double>(k + 1);
        }
        ok &= expect(std::fabs(fast_t[n] - t) <=
                         1e-13 * std::max(1.0, std::fabs(t)),
                     "suffix oracle row " + std::to_string(n));
    }
    return ok;
}

bool criterion7_duality() {
    bool ok = true;
    ok &= expect(duality_check(4.0, 512) <= 1e-3,
                 "duality discrepancy at (4, 4/3), N = 512");
    ok &= expect(duality_check(3.0, 512) <= 1e-3,
                 "duality discrepancy at (3, 3/2), N = 512");
    return ok;
}

}  // namespace

int main() {
    {
        Stopwatch w;
        const bool ok = criterion1_exact_values();
        criterion(1, "exact-value oracles", ok, w.seconds());
    }
    {
        Stopwatch w;
        const bool ok = criterion2_extremal_convergence();
        criterion(2, "extremal ratio convergence (p = 3, 4; m up to 10^4)", ok, w.seconds());
    }
    {
        Stopwatch w;
        const bool ok = criterion3_continuous_exactness();
        criterion(3, "continuous ratio exactness on 20 exponents", ok, w.seconds());
    }
    {
        Stopwatch w;
        const bool ok = criterion4_section_lower_bounds();
        criterion(4, "section lower bounds at N = 4096", ok, w.seconds());
    }
    {
        Stopwatch w;
        const bool ok = criterion5_inequality_suites();
        criterion(5, "inequality suites on full grids", ok, w.seconds());
    }
    {
        Stopwatch w;
        const bool ok = criterion6_algebraic_identities();
        criterion(6, "algebraic identity suites", ok, w.seconds());
    }
    {
        Stopwatch w;
        const bool ok = criterion7_duality();
        criterion(7, "section-level duality", ok, w.seconds());
    }
    if (g_failures != 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
