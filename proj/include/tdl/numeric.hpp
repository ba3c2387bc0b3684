#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>

namespace tdl {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Neumaier-compensated running sum. Order of add() calls fixes the result.
class KahanSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    void add(const KahanSum& other) noexcept {
        add(other.sum_);
        add(other.comp_);
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// y(t) = exp(t e^{-gamma}), the natural scale of log B(t).
inline double tail_scale(double t) { return std::exp(t * std::exp(-kEulerGamma)); }

/// log y(t) = t e^{-gamma}.
inline double log_tail_scale(double t) { return t * std::exp(-kEulerGamma); }

/// Worker count from TDL_THREADS, else hardware concurrency (at least 1).
unsigned thread_count();

}  // namespace tdl
