#include "cesaro/minimizer.hpp"

#include <cmath>
#include <stdexcept>

namespace cesaro {

namespace {

void require_unit_interval(double t) {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw std::domain_error(
            "envelope: t outside [0, 1]; use the extended variant");
    }
}

// Sign-equivalent form of the envelope derivative on (0, 1/2):
//   log((p-1) t^{p-2}) - log((1-t)^{p-1} + t^{p-1}),
// monotone increasing in t, finite for any p > 2 where the direct formula
// would underflow.
double derivative_log_form(double t, double p) {
    const double lt = std::log(t);
    const double l1t = std::log1p(-t);
    return std::log(p - 1.0) + (p - 2.0) * lt - (p - 1.0) * l1t -
           std::log1p(std::exp((p - 1.0) * (lt - l1t)));
}

double envelope_second_derivative(double t, double p) {
    return p * (p - 1.0) *
           ((p - 2.0) * std::pow(t, p - 3.0) + std::pow(1.0 - t, p - 2.0) -
            std::pow(t, p - 2.0));
}

}  // namespace

double envelope(double t, double p) {
    if (!(p >= 2.0)) {
        throw std::domain_error("envelope: requires p >= 2");
    }
    require_unit_interval(t);
    return p * std::pow(t, p - 1.0) + std::pow(1.0 - t, p) - std::pow(t, p);
}

double envelope_derivative(double t, double p) {
    if (!(p > 2.0)) {
        throw std::domain_error("envelope_derivative: requires p > 2");
    }
    require_unit_interval(t);
    return p * ((p - 1.0) * std::pow(t, p - 2.0) - std::pow(1.0 - t, p - 1.0) -
                std::pow(t, p - 1.0));
}

double envelope_extended(double t, double p) {
    if (!(p >= 2.0)) {
        throw std::domain_error("envelope_extended: requires p >= 2");
    }
    return p * odd_pow(t, p - 1.0) + even_pow(1.0 - t, p) - even_pow(t, p);
}

double envelope_derivative_extended(double t, double p) {
    if (!(p > 2.0)) {
        throw std::domain_error("envelope_derivative_extended: requires p > 2");
    }
    return p * ((p - 1.0) * even_pow(t, p - 2.0) - odd_pow(1.0 - t, p - 1.0) -
                odd_pow(t, p - 1.0));
}

EnvelopeMinimum minimize_envelope(double p, double tol) {
    if (!(p > 2.0) || std::isinf(p)) {
        throw std::domain_error("minimize_envelope: requires finite p > 2");
    }
    if (!(tol > 0.0) || tol > 1e-10) {
        throw std::domain_error("minimize_envelope: tol must be in (0, 1e-10]");
    }

    double lo = 1e-12;
    double hi = 0.5 - 1e-12;
    int iterations = 0;
    while (hi - lo > 1e-17 && iterations < 200) {
        const double mid = 0.5 * (lo + hi);
        if (derivative_log_form(mid, p) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
        ++iterations;
    }

    double t = 0.5 * (lo + hi);
    double residual = std::fabs(envelope_derivative(t, p));

    // Newton polish; the bisection bracket keeps the steps safe.
    for (int k = 0; k < 8; ++k) {
        const double d2 = envelope_second_derivative(t, p);
        if (!(d2 > 0.0) || !std::isfinite(d2)) {
            break;
        }
        const double step = envelope_derivative(t, p) / d2;
        const double cand = t - step;
        if (!(cand > 0.0 && cand < 0.5)) {
            break;
        }
        const double cand_res = std::fabs(envelope_derivative(cand, p));
        ++iterations;
        if (cand_res < residual) {
            t = cand;
            residual = cand_res;
        } else {
            break;
        }
    }

    if (!(residual <= tol * p)) {
        throw std::runtime_error("minimize_envelope: did not reach tolerance");
    }

    EnvelopeMinimum out;
    out.p = p;
    out.t = t;
    out.value = envelope(t, p);
    out.residual = residual;
    out.iterations = iterations;
    return out;
}

double cesaro_minus_identity_norm(const Exponent& p) {
    if (p.is_infinite()) {
        return 2.0;
    }
    const double pv = p.value();
    if (pv <= 2.0) {
        return 1.0 / (pv - 1.0);
    }
    const EnvelopeMinimum mp = minimize_envelope(pv);
    return std::exp(-std::log(mp.value) / pv);
}

double transpose_minus_identity_norm(double p) {
    if (!(p >= 2.0)) {
        throw std::domain_error("transpose_minus_identity_norm: requires p >= 2");
    }
    return p - 1.0;
}

}  // namespace cesaro
