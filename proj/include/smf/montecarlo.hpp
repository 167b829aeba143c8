#pragma once

#include "smf/padic.hpp"
#include "smf/parallel.hpp"
#include "smf/schneider_map.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace smf::mc {

enum class Mode { Orbit, DigitModel };

const char* to_string(Mode m);

/// Unit digits carried by Haar samples in orbit mode unless told otherwise.
inline constexpr int kDefaultOrbitPrecision = 512;
/// Fixed seed used whenever the caller does not pick one.
inline constexpr std::uint64_t kDefaultSeed = 20240607;

/**
 * Monte Carlo estimate of the almost-sure q-power mean of digits.
 *
 * `mean` is the pooled estimate (pooled sum of a^q over all samples)^(1/q)
 * (exp of the pooled mean of log a for q = 0) and `std_error` its
 * delta-method standard error across samples. `mean_of_sample_means` is the
 * plain average of the per-sample power means; it carries an O(1/n) bias for
 * q != 1 and is reported for comparison only.
 */
struct MonteCarloEstimate {
    double q = 0.0;
    std::uint32_t p = 2;
    Mode mode = Mode::DigitModel;
    std::size_t samples = 0;
    std::size_t orbit_length = 0;
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t seed = kDefaultSeed;
    /// Digits actually used; below samples * orbit_length when orbit mode
    /// ran out of trusted digits on some samples.
    std::size_t digits_used = 0;
    double mean_of_sample_means = 0.0;
    int precision = kDefaultOrbitPrecision;

    friend bool operator==(const MonteCarloEstimate&, const MonteCarloEstimate&) = default;
};

/// Independent stream for sample `index`; depends only on (seed, index).
std::mt19937_64 sample_rng(std::uint64_t seed, std::uint64_t index);

/// Haar-random element of pZ_p: base-p digits c_1..c_precision i.i.d.
/// uniform (c_0 = 0), redrawn if all are zero. Known modulo p^(precision+1).
padic::PAdicInt sample_haar_point(std::uint32_t p, int precision, std::mt19937_64& rng);

/// n i.i.d. pairs with P(a = k) = (p-1)/p^k and b uniform on 1..p-1.
std::vector<cf::DigitPair> sample_digit_model(std::uint32_t p, std::size_t n, std::mt19937_64& rng);

/// Throws InsufficientTrustedDigits if orbit mode leaves more than 10% of
/// samples with fewer than orbit_length/2 trusted pairs.
MonteCarloEstimate estimate_mean(double q, std::uint32_t p, Mode mode, std::size_t samples,
                                 std::size_t orbit_length, std::uint64_t seed = kDefaultSeed,
                                 int precision = kDefaultOrbitPrecision, Exec exec = Exec::Parallel);

}  // namespace smf::mc
