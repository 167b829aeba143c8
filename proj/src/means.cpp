#include "smf/means.hpp"

#include "smf/errors.hpp"

#include <algorithm>
#include <cmath>

namespace smf::means {

namespace {

void check(std::span<const int> digits) {
    if (digits.empty()) throw EmptySequence("power mean of an empty digit sequence");
    if (*std::min_element(digits.begin(), digits.end()) < 1)
        throw DomainError("digits must be >= 1");
}

double mean_log(std::span<const int> digits) {
    double s = 0.0;
    for (int a : digits) s += std::log(static_cast<double>(a));
    return s / static_cast<double>(digits.size());
}

// log((1/n) sum a^q), overflow-safe for large q.
double log_mean_power(std::span<const int> digits, double q) {
    const double n = static_cast<double>(digits.size());
    const int amax = *std::max_element(digits.begin(), digits.end());
    if (std::abs(q) * std::log(static_cast<double>(amax)) <= 1.0) {
        // near q = 0 the mean of a^q is 1 + O(q); keep the O(q) part exact
        double s = 0.0;
        for (int a : digits) s += std::expm1(q * std::log(static_cast<double>(a)));
        return std::log1p(s / n);
    }
    if (q * std::log(static_cast<double>(amax)) <= kLogSpaceThreshold) {
        double s = 0.0;
        for (int a : digits) s += std::pow(static_cast<double>(a), q);
        return std::log(s / n);
    }
    const double top = q * std::log(static_cast<double>(amax));
    double s = 0.0;
    for (int a : digits) s += std::exp(q * std::log(static_cast<double>(a)) - top);
    return top + std::log(s / n);
}

}  // namespace

double power_mean(std::span<const int> digits, double q) {
    check(digits);
    if (std::abs(q) < kGeometricThreshold) return std::exp(mean_log(digits));
    return std::exp(log_mean_power(digits, q) / q);
}

double birkhoff_potential_mean(std::span<const int> digits, double q, std::uint32_t p) {
    check(digits);
    const double logp = std::log(static_cast<double>(p));
    double s = 0.0;
    if (std::abs(q) < kGeometricThreshold) {
        for (int a : digits) s += std::log(a * logp);
    } else {
        for (int a : digits) s += std::pow(a * logp, q);
    }
    return s / static_cast<double>(digits.size());
}

double power_sum_mean(std::span<const int> digits, double q) {
    check(digits);
    if (std::abs(q) < kGeometricThreshold) return mean_log(digits);
    return std::exp(log_mean_power(digits, q));
}

}  // namespace smf::means
