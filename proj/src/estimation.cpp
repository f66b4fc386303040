#include "cesaro/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

#include "cesaro/compensated.hpp"
#include "cesaro/extremal.hpp"
#include "cesaro/minimizer.hpp"

namespace cesaro {

namespace {

// |a|^q with cheap dispatch: the exponents that occur in the hot loops are
// small integers, halves, and thirds (p' - 1 for p in {4/3, 3/2, 2, 3, 4}).
class AbsPow {
public:
    explicit AbsPow(double q) : q_(q) {
        if (q == 1.0) {
            kind_ = Kind::identity;
        } else if (is_small_int(q)) {
            kind_ = Kind::integer;
            k_ = static_cast<int>(q);
        } else if (is_small_int(2.0 * q)) {
            kind_ = Kind::half;
            k_ = static_cast<int>(2.0 * q);
        } else if (is_small_int(3.0 * q)) {
            kind_ = Kind::third;
            k_ = static_cast<int>(3.0 * q);
        } else {
            kind_ = Kind::general;
        }
    }

    double operator()(double a) const {  // a >= 0
        switch (kind_) {
            case Kind::identity: return a;
            case Kind::integer: return ipow(a, k_);
            case Kind::half: return ipow(std::sqrt(a), k_);
            case Kind::third: return ipow(std::cbrt(a), k_);
            default: return std::pow(a, q_);
        }
    }

private:
    enum class Kind { identity, integer, half, third, general };

    static bool is_small_int(double v) {
        return v == std::floor(v) && v >= 0.0 && v <= 24.0;
    }

    static double ipow(double a, int k) {
        double out = 1.0;
        double base = a;
        for (int e = k; e > 0; e >>= 1) {
            if (e & 1) {
                out *= base;
            }
            base *= base;
        }
        return out;
    }

    double q_;
    Kind kind_ = Kind::general;
    int k_ = 0;
};

double peak_abs(std::span<const double> v) {
    double peak = 0.0;
    for (double vi : v) {
        peak = std::max(peak, std::fabs(vi));
    }
    return peak;
}

double p_norm_fast(std::span<const double> v, double p, const AbsPow& pw) {
    const double peak = peak_abs(v);
    if (peak == 0.0) {
        return 0.0;
    }
    CompensatedSum sum;
    for (double vi : v) {
        sum.add(pw(std::fabs(vi) / peak));
    }
    return peak * std::exp(std::log(sum.value()) / p);
}

// Phi_q with rescaling by the peak; the iteration renormalizes afterwards, so
// the scaling cancels and overflow is impossible even for p near 1.
void duality_map(std::span<const double> v, const AbsPow& pw, RealVector& out) {
    const double peak = peak_abs(v);
    out.resize(v.size());
    if (peak == 0.0) {
        std::fill(out.begin(), out.end(), 0.0);
        return;
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double mag = pw(std::fabs(v[i]) / peak);
        out[i] = v[i] < 0.0 ? -mag : mag;
    }
}

OperatorKind transpose_of(OperatorKind kind) {
    return kind == OperatorKind::cesaro ? OperatorKind::cesaro_transpose
                                        : OperatorKind::cesaro;
}

RealVector power_law_seed(double p, std::int64_t N, double eps) {
    RealVector x(static_cast<std::size_t>(N));
    for (std::int64_t n = 1; n <= N; ++n) {
        x[static_cast<std::size_t>(n - 1)] =
            std::exp(-(1.0 / p + eps) * std::log(static_cast<double>(n)));
    }
    return x;
}

std::vector<RealVector> build_seeds(OperatorKind kind, double p, std::int64_t N,
                                    const MultiStartOptions& opt) {
    std::vector<RealVector> seeds;
    const double logN = std::log(static_cast<double>(N + 1));

    if (kind == OperatorKind::cesaro && p > 2.0 && N >= 8) {
        for (std::int64_t m : {N / 256, N / 64, N / 16}) {
            m = std::clamp<std::int64_t>(m, 2, N / 2);
            ExtremalSequence seq(p, m);
            RealVector s = seq.build(N);
            if (seeds.empty() || s != seeds.back()) {
                seeds.push_back(std::move(s));
            }
        }
    } else if (kind == OperatorKind::cesaro_transpose && p < 2.0 && N >= 8) {
        // dual transform of the extremal family at the conjugate exponent
        const double pd = dual_exponent(p);
        ExtremalSequence seq(pd, std::max<std::int64_t>(2, N / 64));
        RealVector z = apply_minus_identity(OperatorKind::cesaro, seq.build(N));
        RealVector s;
        duality_map(z, AbsPow(pd - 1.0), s);
        seeds.push_back(std::move(s));
    }
    // power-law profiles drive both operators toward their norms as the
    // exponent offset shrinks
    for (double c : {0.25, 1.0, 3.0}) {
        seeds.push_back(power_law_seed(p, N, c / logN));
    }

    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    {
        RealVector e1(static_cast<std::size_t>(N), 0.0);
        e1[0] = 1.0;
        for (auto& v : e1) {
            v += 0.01 * gauss(rng);
        }
        seeds.push_back(std::move(e1));
    }
    while (static_cast<int>(seeds.size()) < opt.starts) {
        RealVector s(static_cast<std::size_t>(N));
        for (auto& v : s) {
            v = gauss(rng);
        }
        seeds.push_back(std::move(s));
    }
    seeds.resize(static_cast<std::size_t>(
        std::max(1, std::min<int>(opt.starts, static_cast<int>(seeds.size())))));
    return seeds;
}

}  // namespace

double analytic_norm(OperatorKind kind, const Exponent& p) {
    if (kind == OperatorKind::cesaro) {
        return cesaro_minus_identity_norm(p);
    }
    if (p.is_infinite()) {
        throw std::domain_error(
            "analytic_norm: the transpose operator is unbounded at p = inf");
    }
    if (p.value() >= 2.0) {
        return transpose_minus_identity_norm(p.value());
    }
    return cesaro_minus_identity_norm(Exponent(p.dual()));
}

NormEstimate dual_power_lower_bound(OperatorKind kind, double p, std::int64_t N,
                                    std::span<const double> x0, int max_iter,
                                    double tol) {
    if (!(p > 1.0) || std::isinf(p)) {
        throw std::domain_error("dual_power_lower_bound: requires finite p > 1");
    }
    if (N < 1 || static_cast<std::int64_t>(x0.size()) != N) {
        throw std::domain_error("dual_power_lower_bound: start length mismatch");
    }
    if (peak_abs(x0) == 0.0) {
        throw std::domain_error("dual_power_lower_bound: start must be nonzero");
    }
    if (max_iter < 1 || !(tol > 0.0)) {
        throw std::domain_error("dual_power_lower_bound: bad iteration budget");
    }

    const double pd = dual_exponent(p);
    const AbsPow pw_p(p);
    const AbsPow phi_p(p - 1.0);
    const AbsPow phi_d(pd - 1.0);

    NormEstimate est;
    est.p = p;
    est.N = N;
    est.kind = kind;
    est.analytic = analytic_norm(kind, Exponent(p));

    RealVector x(x0.begin(), x0.end());
    {
        const double nx = p_norm_fast(x, p, pw_p);
        for (auto& v : x) {
            v /= nx;
        }
    }

    RealVector y;
    RealVector u;
    RealVector w;
    double best = 0.0;
    int stall = 0;
    for (int it = 0; it < max_iter; ++it) {
        y = apply_minus_identity(kind, x);
        const double ratio = p_norm_fast(y, p, pw_p);  // ||x||_p == 1
        est.ratio_trace.push_back(ratio);
        if (ratio == 0.0) {
            break;
        }
        if (ratio <= best * (1.0 + tol)) {
            if (++stall >= 3) {
                break;
            }
        } else {
            stall = 0;
        }
        best = std::max(best, ratio);

        duality_map(y, phi_p, u);
        w = apply_minus_identity(transpose_of(kind), u);
        if (peak_abs(w) == 0.0) {
            break;
        }
        duality_map(w, phi_d, x);
        const double nx = p_norm_fast(x, p, pw_p);
        for (auto& v : x) {
            v /= nx;
        }
    }

    est.lower_bound = best;
    est.iterations = static_cast<int>(est.ratio_trace.size());
    est.rel_gap = (est.analytic - est.lower_bound) / est.analytic;
    return est;
}

NormEstimate multi_start_lower_bound(OperatorKind kind, double p, std::int64_t N,
                                     const MultiStartOptions& opt) {
    const std::vector<RealVector> seeds = build_seeds(kind, p, N, opt);
    std::vector<NormEstimate> results(seeds.size());

    const int threads =
        std::max(1, std::min<int>(opt.threads, static_cast<int>(seeds.size())));
    if (threads <= 1) {
        for (std::size_t i = 0; i < seeds.size(); ++i) {
            results[i] =
                dual_power_lower_bound(kind, p, N, seeds[i], opt.max_iter, opt.tol);
        }
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&, t]() {
                for (std::size_t i = static_cast<std::size_t>(t); i < seeds.size();
                     i += static_cast<std::size_t>(threads)) {
                    results[i] = dual_power_lower_bound(kind, p, N, seeds[i],
                                                        opt.max_iter, opt.tol);
                }
            });
        }
        for (auto& th : pool) {
            th.join();
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < results.size(); ++i) {
        if (results[i].lower_bound > results[best].lower_bound) {
            best = i;
        }
    }
    return results[best];
}

double duality_check(double p, std::int64_t N, int max_iter, std::uint64_t seed) {
    const double pd = dual_exponent(p);

    MultiStartOptions opt;
    opt.seed = seed;
    RealVector x0;
    if (p > 2.0 && N >= 8) {
        x0 = ExtremalSequence(p, std::max<std::int64_t>(2, N / 16)).build(N);
    } else {
        x0 = power_law_seed(p, N, 1.0 / std::log(static_cast<double>(N + 1)));
    }

    // matched seeds: the transpose side starts from the duality transform of
    // the primal image
    const AbsPow pw_p(p);
    RealVector xn = x0;
    const double nx = p_norm_fast(xn, p, pw_p);
    for (auto& v : xn) {
        v /= nx;
    }
    RealVector y = apply_minus_identity(OperatorKind::cesaro, xn);
    RealVector w0;
    duality_map(y, AbsPow(p - 1.0), w0);
    if (peak_abs(w0) == 0.0) {
        w0 = x0;
    }

    const NormEstimate primal = dual_power_lower_bound(
        OperatorKind::cesaro, p, N, x0, max_iter, 1e-13);
    const NormEstimate dual = dual_power_lower_bound(
        OperatorKind::cesaro_transpose, pd, N, w0, max_iter, 1e-13);

    const double hi = std::max(primal.lower_bound, dual.lower_bound);
    if (hi == 0.0) {
        return 0.0;
    }
    return std::fabs(primal.lower_bound - dual.lower_bound) / hi;
}

InterpolationReport interpolation_spot_check(double p0, double p, double p1,
                                             std::int64_t N) {
    if (!(2.0 < p0 && p0 < p && p < p1) || std::isinf(p1)) {
        throw std::domain_error(
            "interpolation_spot_check: requires 2 < p0 < p < p1");
    }
    InterpolationReport rep;
    rep.p0 = p0;
    rep.p = p;
    rep.p1 = p1;
    rep.theta = (1.0 / p - 1.0 / p0) / (1.0 / p1 - 1.0 / p0);
    rep.lhs = cesaro_minus_identity_norm(Exponent(p));
    const double n0 = cesaro_minus_identity_norm(Exponent(p0));
    const double n1 = cesaro_minus_identity_norm(Exponent(p1));
    rep.rhs = std::exp((1.0 - rep.theta) * std::log(n0) +
                       rep.theta * std::log(n1));
    rep.holds = rep.lhs <= rep.rhs * (1.0 + 1e-12);

    MultiStartOptions opt;
    opt.starts = 3;
    opt.max_iter = 400;
    rep.section_p0 =
        multi_start_lower_bound(OperatorKind::cesaro, p0, N, opt).lower_bound;
    rep.section_p =
        multi_start_lower_bound(OperatorKind::cesaro, p, N, opt).lower_bound;
    rep.section_p1 =
        multi_start_lower_bound(OperatorKind::cesaro, p1, N, opt).lower_bound;
    return rep;
}

}  // namespace cesaro
