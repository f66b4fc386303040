#include "cesaro/exponents.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cesaro {

double dual_exponent(double p) {
    if (std::isinf(p) && p > 0) {
        return 1.0;
    }
    if (!(p > 1.0)) {
        throw std::domain_error("dual_exponent: requires p > 1");
    }
    return p / (p - 1.0);
}

Exponent::Exponent(double p) : p_(p) {
    if (std::isnan(p) || !(p > 1.0)) {
        throw std::domain_error("Exponent: requires p > 1 (or infinity)");
    }
}

Exponent Exponent::infinite() {
    return Exponent(std::numeric_limits<double>::infinity());
}

bool Exponent::is_infinite() const noexcept {
    return std::isinf(p_);
}

double Exponent::dual() const noexcept {
    return is_infinite() ? 1.0 : p_ / (p_ - 1.0);
}

namespace {

bool parse_int64(std::string_view s, std::int64_t& out) {
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

}  // namespace

std::optional<Exponent> Exponent::parse(std::string_view text) {
    if (text == "inf" || text == "Inf" || text == "INF" || text == "infinity") {
        return Exponent::infinite();
    }
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        std::int64_t num = 0;
        std::int64_t den = 0;
        if (!parse_int64(text.substr(0, slash), num) ||
            !parse_int64(text.substr(slash + 1), den) || den == 0) {
            return std::nullopt;
        }
        return Exponent(static_cast<double>(num) / static_cast<double>(den));
    }
    std::string buf(text);
    char* end = nullptr;
    double v = std::strtod(buf.c_str(), &end);
    if (end != buf.c_str() + buf.size() || buf.empty()) {
        return std::nullopt;
    }
    return Exponent(v);
}

bool EvenRational::qualifies(std::int64_t num, std::int64_t den) {
    if (den == 0) {
        throw std::domain_error("EvenRational: zero denominator");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    if (num <= 0) {
        return false;
    }
    const std::int64_t g = std::gcd(num, den);
    num /= g;
    den /= g;
    // value > 2, strictly: num/den > 2 with num even means num/2 > den exactly.
    return num % 2 == 0 && den % 2 == 1 && num / 2 > den;
}

EvenRational EvenRational::make(std::int64_t num, std::int64_t den) {
    if (!qualifies(num, den)) {
        throw std::domain_error(
            "EvenRational: exponent must reduce to an even/odd rational > 2");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    return EvenRational{num / g, den / g};
}

std::optional<EvenRational> EvenRational::parse(std::string_view text) {
    std::int64_t num = 0;
    std::int64_t den = 1;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        if (!parse_int64(text.substr(0, slash), num) ||
            !parse_int64(text.substr(slash + 1), den)) {
            return std::nullopt;
        }
    } else if (!parse_int64(text, num)) {
        return std::nullopt;
    }
    return make(num, den);
}

double even_pow(double t, double q) noexcept {
    return std::pow(std::fabs(t), q);
}

double odd_pow(double t, double q) noexcept {
    const double v = std::pow(std::fabs(t), q);
    return t < 0.0 ? -v : v;
}

double even_pow_derivative(double t, double q) noexcept {
    return q * odd_pow(t, q - 1.0);
}

}  // namespace cesaro
