#pragma once

#include <cmath>

namespace cesaro {

/// Neumaier compensated accumulator. Keeps long prefix sums and p-th power
/// sums accurate to a few ulp of the true total independently of length.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x)) {
            carry_ += (sum_ - t) + x;
        } else {
            carry_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    double value() const noexcept { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

}  // namespace cesaro
