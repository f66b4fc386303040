#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace cesaro {

/// Dual exponent p' with 1/p + 1/p' = 1. Requires p > 1; p = infinity gives 1.
/// Throws std::domain_error otherwise.
double dual_exponent(double p);

/// A validated Lebesgue exponent in (1, inf]. Infinity is carried as the IEEE
/// sentinel and handled as a separate branch everywhere; it is never replaced
/// by a large finite value.
class Exponent {
public:
    explicit Exponent(double p);
    static Exponent infinite();

    /// Accepts "inf", a fraction "a/b", or a decimal literal. Returns nullopt
    /// on syntax errors; values <= 1 throw std::domain_error.
    static std::optional<Exponent> parse(std::string_view text);

    double value() const noexcept { return p_; }
    bool is_infinite() const noexcept;
    double dual() const noexcept;

private:
    double p_;
};

/// Rational exponent q = num/den in lowest terms with an even numerator, an odd
/// denominator, and q > 2. Exactly for these q the power function t -> t^q has a
/// natural extension to all of R that is even, non-negative, twice continuously
/// differentiable, and has a strictly increasing odd derivative. All signed-power
/// evaluation in this library is gated on this class of exponents.
struct EvenRational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    /// True iff num/den reduces to an even/odd rational greater than 2.
    /// Throws std::domain_error when den == 0.
    static bool qualifies(std::int64_t num, std::int64_t den);

    /// Reduce to lowest terms and validate; throws std::domain_error if the
    /// value does not qualify.
    static EvenRational make(std::int64_t num, std::int64_t den);

    /// Accepts "a/b" or a bare integer "a". Syntax errors give nullopt;
    /// non-qualifying values throw, as in make().
    static std::optional<EvenRational> parse(std::string_view text);

    double value() const noexcept {
        return static_cast<double>(num) / static_cast<double>(den);
    }
};

/// t^q extended as an even function of t: |t|^q. Total on R for q > 0.
double even_pow(double t, double q) noexcept;

/// t^q extended as an odd function of t: sign(t) |t|^q.
double odd_pow(double t, double q) noexcept;

/// d/dt of even_pow: q sign(t) |t|^{q-1}. Odd and strictly increasing for
/// qualifying q.
double even_pow_derivative(double t, double q) noexcept;

}  // namespace cesaro
