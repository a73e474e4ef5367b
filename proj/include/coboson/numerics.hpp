#ifndef COBOSON_NUMERICS_HPP
#define COBOSON_NUMERICS_HPP

#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace coboson {

/// Neumaier compensated accumulator. All additions are error-free up to the
/// final rounding of value+compensation.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double compensated_total(std::span<const double> xs) {
    CompensatedSum acc;
    for (double x : xs) acc.add(x);
    return acc.value();
}

/// log(exp(a) + exp(b)) without overflow; -inf entries behave as zero terms.
inline double log_add_exp(double a, double b) {
    if (a == -std::numeric_limits<double>::infinity()) return b;
    if (b == -std::numeric_limits<double>::infinity()) return a;
    const double hi = std::max(a, b);
    const double lo = std::min(a, b);
    return hi + std::log1p(std::exp(lo - hi));
}

inline double log_sum_exp(std::span<const double> xs) {
    double hi = -std::numeric_limits<double>::infinity();
    for (double x : xs) hi = std::max(hi, x);
    if (hi == -std::numeric_limits<double>::infinity()) return hi;
    CompensatedSum acc;
    for (double x : xs) acc.add(std::exp(x - hi));
    return hi + std::log(acc.value());
}

/// Golden-section search for the maximum of f on [a, b]. The caller supplies a
/// bracket known to contain the maximum; the search shrinks it below tol and
/// returns the midpoint.
inline double golden_section_maximize(const std::function<double(double)>& f, double a, double b,
                                      double tol) {
    static const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

/// 0*log(0) = 0 convention used by every entropy-like sum.
inline double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

/// Fixed 12-significant-digit formatting; keeps CLI artifacts byte-stable.
inline std::string format_sig12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return std::string(buf);
}

/// |a-b| <= tol * max(|a|, |b|, floor); the floor makes 0-vs-0 comparisons pass.
inline bool rel_close(double a, double b, double tol, double floor = 1e-300) {
    const double scale = std::max({std::abs(a), std::abs(b), floor});
    return std::abs(a - b) <= tol * scale;
}

} // namespace coboson

#endif
