#pragma once

#include <span>
#include <string>
#include <vector>

#include "cesaro/exponents.hpp"

namespace cesaro {

using RealVector = std::vector<double>;

enum class OperatorKind { cesaro, cesaro_transpose };

const char* to_string(OperatorKind kind) noexcept;

/// y_n = (1/n) sum_{k<=n} x_k. One compensated prefix sum, O(N); the matrix is
/// never materialized.
RealVector apply_cesaro(std::span<const double> x);

/// y_n = sum_{k=n}^{N} x_k / k. One compensated suffix sum, O(N). Truncation at
/// N discards the positive tail, so section norms built on this operator are
/// lower bounds for the full operator norm.
RealVector apply_cesaro_transpose(std::span<const double> x);

RealVector apply(OperatorKind kind, std::span<const double> x);

/// (A - I) x for the selected section.
RealVector apply_minus_identity(OperatorKind kind, std::span<const double> x);

/// l^p norm with rescaling by the max entry so large p cannot overflow;
/// p = inf gives max |v_n|. Requires p >= 1.
double p_norm(std::span<const double> v, double p);

double dot(std::span<const double> a, std::span<const double> b);

/// Worst relative residual over n = 2..N of the running-mean identity
/// (n-1)(y_{n-1} - y_n) = y_n - x_n with y = C x. Each term is scaled by
/// max(1, |x_n|, (n-1)(|y_{n-1}| + |y_n|)), the natural rounding scale of the
/// left-hand side. Returns 0 for N < 2.
double mean_identity_residual(std::span<const double> x);

/// Worst relative residual over n = 1..N of x_n = n (y_n - y_{n+1}) with
/// y = C^T x and the convention y_{N+1} = 0.
double transpose_identity_residual(std::span<const double> x);

/// Relative defect of sum_{n=1..N} (n y_{n+1}^p - (n-1) y_n^p) = N y_{N+1}^p
/// for y of length N + 1, powers in the even extension. The defect is scaled
/// by 1 plus the absolute-value sum of the telescoping terms.
double telescoping_residual(std::span<const double> y, double p);

/// Plain text vector io: one value per line; commas also accepted on input.
RealVector read_vector(const std::string& path);
void write_vector(const std::string& path, std::span<const double> v);

}  // namespace cesaro
