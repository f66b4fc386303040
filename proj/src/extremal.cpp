#include "cesaro/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "cesaro/compensated.hpp"
#include "cesaro/minimizer.hpp"

namespace cesaro {

namespace {

constexpr double kTailBudget = 1e-12;  // admissible relative truncation error

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

// Gauss-Legendre nodes by Newton iteration on the Legendre recurrence; exact
// to machine precision for the orders used here.
GaussRule gauss_legendre(int n) {
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) {
                break;
            }
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

template <typename F>
double integrate_gl(const F& f, double a, double b, int panels,
                    const GaussRule& rule) {
    CompensatedSum sum;
    const double h = (b - a) / panels;
    for (int k = 0; k < panels; ++k) {
        const double mid = a + (k + 0.5) * h;
        for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
            sum.add(rule.weights[j] * f(mid + 0.5 * h * rule.nodes[j]));
        }
    }
    return 0.5 * h * sum.value();
}

template <typename F>
double integrate_simpson(const F& f, double a, double b, int panels) {
    CompensatedSum sum;
    const double h = (b - a) / panels;
    double left = f(a);
    for (int k = 0; k < panels; ++k) {
        const double xm = a + (k + 0.5) * h;
        const double xr = a + (k + 1.0) * h;
        const double right = f(xr);
        sum.add(h / 6.0 * (left + 4.0 * f(xm) + right));
        left = right;
    }
    return sum.value();
}

// Integral-comparison bound for sum_{j >= N} j^{-q}, q > 1.
double power_tail_bound(double N, double q) {
    return std::exp(-q * std::log(N)) +
           std::exp((1.0 - q) * std::log(N)) / (q - 1.0);
}

}  // namespace

ExtremalSequence::ExtremalSequence(double p, std::int64_t m) {
    if (m < 2) {
        throw std::domain_error("ExtremalSequence: cutoff m must be >= 2");
    }
    const EnvelopeMinimum mp = minimize_envelope(p);  // validates p > 2
    p_ = p;
    r_ = 1.0 / mp.t;
    m_value_ = mp.value;
    m_ = m;
}

double ExtremalSequence::x(std::int64_t n) const {
    if (n < 1) {
        throw std::domain_error("ExtremalSequence: index must be >= 1");
    }
    if (n <= m_) {
        return -std::exp(-r_ * std::log(static_cast<double>(m_)));
    }
    // (n-1)^{1-r} - n^{1-r}, a small difference of near-equal powers for large
    // n; the expm1/log1p form keeps full relative accuracy.
    const double nd = static_cast<double>(n);
    return std::exp((1.0 - r_) * std::log(nd)) *
           std::expm1((1.0 - r_) * std::log1p(-1.0 / nd));
}

double ExtremalSequence::y(std::int64_t n) const {
    if (n < 1) {
        throw std::domain_error("ExtremalSequence: index must be >= 1");
    }
    const double base = static_cast<double>(n <= m_ ? m_ : n);
    return -std::exp(-r_ * std::log(base));
}

double ExtremalSequence::z(std::int64_t n) const {
    if (n < 1) {
        throw std::domain_error("ExtremalSequence: index must be >= 1");
    }
    if (n <= m_) {
        return 0.0;
    }
    return -(x(n) + std::exp(-r_ * std::log(static_cast<double>(n))));
}

RealVector ExtremalSequence::build(std::int64_t length) const {
    if (length <= m_) {
        throw std::domain_error("ExtremalSequence: length must exceed the cutoff");
    }
    RealVector out(static_cast<std::size_t>(length));
    for (std::int64_t n = 1; n <= length; ++n) {
        out[static_cast<std::size_t>(n - 1)] = x(n);
    }
    return out;
}

double ratio_lower_bound_at_cutoff(double p, double r, std::int64_t m) {
    const double md = static_cast<double>(m);
    const double a = md / (md + 1.0);
    const double b = (md - 1.0) / (md + 1.0);
    const double pr = p * r;
    const double numerator = std::exp(p * std::log(r) + p * std::log(a));
    const double denominator = (pr - 1.0) * std::exp((1.0 - pr) * std::log(a)) +
                               std::exp(p * std::log(r - 1.0) +
                                        (1.0 - pr) * std::log(b));
    return numerator / denominator;
}

ExtremalReport discrete_ratio(double p, std::int64_t m, std::int64_t N) {
    if (N <= m) {
        throw std::domain_error("discrete_ratio: need N > m");
    }
    const ExtremalSequence seq(p, m);
    const double r = seq.rate();
    const double pr = p * r;

    // head: m copies of m^{-r}
    CompensatedSum sum_x;
    CompensatedSum sum_z;
    sum_x.add(std::exp((1.0 - pr) * std::log(static_cast<double>(m))));
    for (std::int64_t n = m + 1; n <= N; ++n) {
        sum_x.add(std::pow(seq.x(n), p));
        sum_z.add(std::pow(-seq.z(n), p));
    }

    const double tail_base = power_tail_bound(static_cast<double>(N), pr);
    const double tail_x = std::exp(p * std::log(r - 1.0)) * tail_base;
    const double tail_z = std::exp(p * std::log(r)) * tail_base;
    if (!(tail_x <= kTailBudget * sum_x.value()) ||
        !(tail_z <= kTailBudget * sum_z.value())) {
        throw std::runtime_error(
            "discrete_ratio: truncation tail above 1e-12 of the partial sums; "
            "increase N");
    }

    ExtremalReport rep;
    rep.p = p;
    rep.r = r;
    rep.m = m;
    rep.N = N;
    rep.sum_x_p = sum_x.value();
    rep.sum_z_p = sum_z.value();
    rep.ratio_p = rep.sum_z_p / rep.sum_x_p;
    rep.analytic_limit = 1.0 / seq.envelope_minimum();
    rep.gap = rep.analytic_limit - rep.ratio_p;

    const double lb = ratio_lower_bound_at_cutoff(p, r, m);
    if (!(lb <= rep.ratio_p) ||
        !(rep.ratio_p <= rep.analytic_limit * (1.0 + 1e-9))) {
        throw std::runtime_error(
            "discrete_ratio: computed ratio escaped its certified bracket");
    }
    return rep;
}

ContinuousIntegrals continuous_extremal_integrals(double p) {
    const EnvelopeMinimum mp = minimize_envelope(p);
    const double r = 1.0 / mp.t;
    const double pr = p * r;
    ContinuousIntegrals out;
    out.integral_x_p = 1.0 + std::exp(p * std::log(r - 1.0)) / (pr - 1.0);
    out.integral_z_p = std::exp(p * std::log(r)) / (pr - 1.0);
    const double defect =
        std::fabs(out.integral_z_p / out.integral_x_p * mp.value - 1.0);
    if (!(defect <= 1e-11)) {
        throw std::runtime_error(
            "continuous_extremal_integrals: ratio identity defect above 1e-11");
    }
    return out;
}

double quadrature_check_continuous(const EvenRational& p, const QuadratureSpec& spec) {
    if (spec.panels < 8) {
        throw std::domain_error("quadrature_check_continuous: need >= 8 panels");
    }
    if (!(spec.cut >= 2.0) || !std::isfinite(spec.cut)) {
        throw std::domain_error("quadrature_check_continuous: need cut >= 2");
    }
    const double pv = p.value();
    const EnvelopeMinimum mp = minimize_envelope(pv);
    const double r = 1.0 / mp.t;
    const double pr = pv * r;

    // |x|^p = 1 on (0,1): integrate the actual even power of the piece value.
    const double head = integrate_simpson(
        [&](double) { return even_pow(-1.0, pv); }, 0.0, 1.0, 8);

    // On (1, cut) substitute s = e^u; the tail beyond the cut is added from the
    // integral comparison in closed form.
    const double L = std::log(spec.cut);
    const double body =
        integrate_simpson([&](double u) { return std::exp((1.0 - pr) * u); },
                          0.0, L, spec.panels);
    const double tail = std::exp((1.0 - pr) * L) / (pr - 1.0);

    const double num_x = head + std::exp(pv * std::log(r - 1.0)) * (body + tail);
    const double num_z = std::exp(pv * std::log(r)) * (body + tail);

    const ContinuousIntegrals exact = continuous_extremal_integrals(pv);
    const double disc =
        std::max(std::fabs(num_x / exact.integral_x_p - 1.0),
                 std::fabs(num_z / exact.integral_z_p - 1.0));
    if (!(disc <= spec.tol)) {
        throw std::runtime_error(
            "quadrature_check_continuous: discrepancy above the requested "
            "tolerance; increase panels or cut");
    }
    return disc;
}

double dual_ratio_for_step(const StepFunction& x, const EvenRational& p) {
    const std::size_t k = x.values.size();
    if (k == 0 || x.breaks.size() != k + 1) {
        throw std::domain_error("dual_ratio_for_step: malformed step function");
    }
    if (!(x.breaks.front() > 0.0)) {
        throw std::domain_error("dual_ratio_for_step: support must be in (0, inf)");
    }
    for (std::size_t i = 0; i + 1 < x.breaks.size(); ++i) {
        if (!(x.breaks[i] < x.breaks[i + 1])) {
            throw std::domain_error("dual_ratio_for_step: breaks must increase");
        }
    }
    const double pv = p.value();

    // suffix log-integrals: T[i] = integral over pieces right of piece i
    std::vector<double> T(k + 1, 0.0);
    for (std::size_t i = k; i-- > 0;) {
        T[i] = T[i + 1] +
               x.values[i] * (std::log(x.breaks[i + 1]) - std::log(x.breaks[i]));
    }
    if (T[0] == 0.0 && std::all_of(x.values.begin(), x.values.end(),
                                   [](double c) { return c == 0.0; })) {
        throw std::domain_error("dual_ratio_for_step: x must be nonzero");
    }

    CompensatedSum int_x_p;
    for (std::size_t i = 0; i < k; ++i) {
        int_x_p.add(even_pow(x.values[i], pv) * (x.breaks[i + 1] - x.breaks[i]));
    }

    static const GaussRule rule = gauss_legendre(16);
    CompensatedSum int_z_p;
    // constant y on (0, first break), where x vanishes
    int_z_p.add(even_pow(T[0], pv) * x.breaks.front());
    for (std::size_t i = 0; i < k; ++i) {
        const double lo = x.breaks[i];
        const double hi = x.breaks[i + 1];
        const double c = x.values[i];
        if (c == 0.0) {
            int_z_p.add(even_pow(T[i + 1], pv) * (hi - lo));
            continue;
        }
        // y(s) - x(s) = A - c ln s - c on the piece, monotone in s
        const double A = T[i + 1] + c * std::log(hi);
        const auto integrand = [&](double s) {
            return even_pow(A - c * std::log(s) - c, pv);
        };
        // split at the sign change so each part is a smooth one-signed power
        const double root = std::exp((A - c) / c);
        if (root > lo && root < hi) {
            int_z_p.add(integrate_gl(integrand, lo, root, 40, rule));
            int_z_p.add(integrate_gl(integrand, root, hi, 40, rule));
        } else {
            int_z_p.add(integrate_gl(integrand, lo, hi, 40, rule));
        }
    }

    return int_z_p.value() /
           (std::exp(pv * std::log(pv - 1.0)) * int_x_p.value());
}

double dual_continuous_check(const EvenRational& p, int families,
                             std::uint64_t seed) {
    if (families < 1) {
        throw std::domain_error("dual_continuous_check: families must be >= 1");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> support(0.05, 20.0);
    std::uniform_real_distribution<double> level(-2.0, 2.0);
    std::uniform_int_distribution<int> piece_count(1, 6);

    double worst = 0.0;
    for (int f = 0; f < families; ++f) {
        StepFunction step;
        const int k = piece_count(rng);
        step.breaks.resize(static_cast<std::size_t>(k) + 1);
        for (;;) {
            for (auto& b : step.breaks) {
                b = support(rng);
            }
            std::sort(step.breaks.begin(), step.breaks.end());
            bool separated = true;
            for (int i = 0; i < k; ++i) {
                separated = separated && step.breaks[i + 1] - step.breaks[i] > 1e-2;
            }
            if (separated) {
                break;
            }
        }
        step.values.resize(static_cast<std::size_t>(k));
        double peak = 0.0;
        for (auto& c : step.values) {
            c = level(rng);
            peak = std::max(peak, std::fabs(c));
        }
        if (peak < 0.1) {
            step.values[0] = 1.0;
        }
        worst = std::max(worst, dual_ratio_for_step(step, p));
    }
    return worst;
}

}  // namespace cesaro
