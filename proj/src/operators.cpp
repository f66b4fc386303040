#include "cesaro/operators.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "cesaro/compensated.hpp"

namespace cesaro {

const char* to_string(OperatorKind kind) noexcept {
    return kind == OperatorKind::cesaro ? "cesaro" : "cesaro_transpose";
}

RealVector apply_cesaro(std::span<const double> x) {
    RealVector y(x.size());
    CompensatedSum prefix;
    for (std::size_t n = 0; n < x.size(); ++n) {
        prefix.add(x[n]);
        y[n] = prefix.value() / static_cast<double>(n + 1);
    }
    return y;
}

RealVector apply_cesaro_transpose(std::span<const double> x) {
    RealVector y(x.size());
    CompensatedSum suffix;
    for (std::size_t i = x.size(); i-- > 0;) {
        suffix.add(x[i] / static_cast<double>(i + 1));
        y[i] = suffix.value();
    }
    return y;
}

RealVector apply(OperatorKind kind, std::span<const double> x) {
    return kind == OperatorKind::cesaro ? apply_cesaro(x)
                                        : apply_cesaro_transpose(x);
}

RealVector apply_minus_identity(OperatorKind kind, std::span<const double> x) {
    RealVector y = apply(kind, x);
    for (std::size_t i = 0; i < y.size(); ++i) {
        y[i] -= x[i];
    }
    return y;
}

double p_norm(std::span<const double> v, double p) {
    if (std::isnan(p) || !(p >= 1.0)) {
        throw std::domain_error("p_norm: requires p >= 1");
    }
    double peak = 0.0;
    for (double vi : v) {
        peak = std::max(peak, std::fabs(vi));
    }
    if (peak == 0.0 || std::isinf(p)) {
        return peak;
    }
    CompensatedSum sum;
    for (double vi : v) {
        sum.add(std::pow(std::fabs(vi) / peak, p));
    }
    return peak * std::pow(sum.value(), 1.0 / p);
}

double dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw std::domain_error("dot: length mismatch");
    }
    CompensatedSum sum;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sum.add(a[i] * b[i]);
    }
    return sum.value();
}

double mean_identity_residual(std::span<const double> x) {
    const RealVector y = apply_cesaro(x);
    double worst = 0.0;
    for (std::size_t n = 2; n <= x.size(); ++n) {
        const double lhs = static_cast<double>(n - 1) * (y[n - 2] - y[n - 1]);
        const double rhs = y[n - 1] - x[n - 1];
        const double scale =
            std::max({1.0, std::fabs(x[n - 1]),
                      static_cast<double>(n - 1) *
                          (std::fabs(y[n - 2]) + std::fabs(y[n - 1]))});
        worst = std::max(worst, std::fabs(lhs - rhs) / scale);
    }
    return worst;
}

double transpose_identity_residual(std::span<const double> x) {
    const RealVector y = apply_cesaro_transpose(x);
    double worst = 0.0;
    for (std::size_t n = 1; n <= x.size(); ++n) {
        const double ynext = n < x.size() ? y[n] : 0.0;
        const double lhs = x[n - 1];
        const double rhs = static_cast<double>(n) * (y[n - 1] - ynext);
        const double scale =
            std::max({1.0, std::fabs(x[n - 1]),
                      static_cast<double>(n) *
                          (std::fabs(y[n - 1]) + std::fabs(ynext))});
        worst = std::max(worst, std::fabs(lhs - rhs) / scale);
    }
    return worst;
}

double telescoping_residual(std::span<const double> y, double p) {
    if (y.size() < 2) {
        throw std::domain_error("telescoping_residual: need length >= 2");
    }
    const std::size_t N = y.size() - 1;
    CompensatedSum sum;
    CompensatedSum magnitude;
    for (std::size_t n = 1; n <= N; ++n) {
        const double a = static_cast<double>(n) * even_pow(y[n], p);
        const double b = static_cast<double>(n - 1) * even_pow(y[n - 1], p);
        sum.add(a);
        sum.add(-b);
        magnitude.add(std::fabs(a) + std::fabs(b));
    }
    const double target = static_cast<double>(N) * even_pow(y[N], p);
    return std::fabs(sum.value() - target) / (1.0 + magnitude.value());
}

RealVector read_vector(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("read_vector: cannot open " + path);
    }
    RealVector v;
    std::string token;
    while (in >> token) {
        // allow comma separated content as well
        std::stringstream ss(token);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            if (cell.empty()) {
                continue;
            }
            std::size_t used = 0;
            const double value = std::stod(cell, &used);
            if (used != cell.size() || !std::isfinite(value)) {
                throw std::runtime_error("read_vector: bad number '" + cell + "'");
            }
            v.push_back(value);
        }
    }
    if (v.empty()) {
        throw std::runtime_error("read_vector: no values in " + path);
    }
    return v;
}

void write_vector(const std::string& path, std::span<const double> v) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("write_vector: cannot open " + path);
    }
    char buf[64];
    for (double vi : v) {
        std::snprintf(buf, sizeof(buf), "%.17g\n", vi);
        out << buf;
    }
}

}  // namespace cesaro
