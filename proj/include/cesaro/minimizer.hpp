#pragma once

#include "cesaro/exponents.hpp"

namespace cesaro {

/// The scalar profile p t^{p-1} + (1-t)^p - t^p whose minimum over [0, 1/2]
/// controls the norm of the averaging operator minus identity for p > 2.
/// Standard domain t in [0, 1], p >= 2.
double envelope(double t, double p);

/// Derivative p ((p-1) t^{p-2} - (1-t)^{p-1} - t^{p-1}) on [0, 1], p > 2.
/// Negative at 0 (value -p), positive at 1/2 (value p (p-2) 2^{2-p}).
double envelope_derivative(double t, double p);

/// Same two functions extended to all real t with even/odd signed powers.
/// Well defined in the classical sense for EvenRational exponents; any real
/// p > 2 is accepted and evaluated with the identical formulas.
double envelope_extended(double t, double p);
double envelope_derivative_extended(double t, double p);

struct EnvelopeMinimum {
    double p = 0;
    double t = 0;         ///< unique critical point in (0, 1/2)
    double value = 0;     ///< envelope minimum m_p = envelope(t, p)
    double residual = 0;  ///< |envelope_derivative(t, p)|
    int iterations = 0;
};

/// Locates the unique critical point of the envelope in (0, 1/2) for p > 2.
/// The derivative changes sign across the interval and the envelope is strictly
/// convex there, so bisection cannot fail; sign queries run in log space, which
/// keeps p up to several hundred free of underflow. A short Newton polish
/// follows. Requires 0 < tol <= 1e-10; the residual satisfies
/// |envelope_derivative| <= tol * p.
EnvelopeMinimum minimize_envelope(double p, double tol = 1e-12);

/// Operator norm of C - I on l^p:
///   1/(p-1)     for 1 < p <= 2,
///   m_p^{-1/p}  for 2 < p < inf,
///   2           for p = inf.
/// Both finite branches give 1 at p = 2; the left branch is used there.
double cesaro_minus_identity_norm(const Exponent& p);

/// Operator norm of C^T - I on l^p for p >= 2, which is p - 1. Coincides with
/// cesaro_minus_identity_norm at the dual exponent.
double transpose_minus_identity_norm(double p);

}  // namespace cesaro
