#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <utility>

namespace bocpd {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// log(exp(a) + exp(b)) without overflow.
inline double log_add_exp(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    if (a < b) std::swap(a, b);
    return a + std::log1p(std::exp(b - a));
}

// log(sum_i exp(v[i])); -inf for an empty or all--inf input.
// The sum is accumulated in long double so normalizing a posterior over
// thousands of hypotheses stays accurate to a few ulps.
inline double log_sum_exp(std::span<const double> v) {
    double max_val = kNegInf;
    for (double x : v) {
        if (x > max_val) max_val = x;
    }
    if (max_val == kNegInf || std::isnan(max_val)) return max_val;
    long double sum = 0.0L;
    for (double x : v) {
        sum += std::exp(static_cast<long double>(x) - max_val);
    }
    return max_val + static_cast<double>(std::log(sum));
}

inline double log_normal_density(double x, double mean, double variance) {
    const double d = x - mean;
    return -0.5 * (d * d / variance + std::log(2.0 * M_PI * variance));
}

}  // namespace bocpd
