#pragma once

#include <cstdint>
#include <span>

namespace smf::means {

/// Below this |q| the geometric branch is used.
inline constexpr double kGeometricThreshold = 1e-10;

/// Above this value of q*log(max a) the power sum is accumulated in log space.
inline constexpr double kLogSpaceThreshold = 600.0;

/// ((1/n) sum a_i^q)^(1/q); the geometric mean for q = 0.
/// Throws EmptySequence on an empty span, DomainError if some a_i < 1.
double power_mean(std::span<const int> digits, double q);

/// The same quantity phrased through the potential log psi = a log p:
/// (1/n) sum (a_i log p)^q for q != 0 and (1/n) sum log(a_i log p) for q = 0.
double birkhoff_potential_mean(std::span<const int> digits, double q, std::uint32_t p);

/// (1/n) sum a_i^q, or (1/n) sum log a_i for q = 0. The additive statistic
/// that Monte Carlo estimates pool across samples.
double power_sum_mean(std::span<const int> digits, double q);

}  // namespace smf::means
