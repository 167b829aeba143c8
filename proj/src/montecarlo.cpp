#include "smf/montecarlo.hpp"

#include "smf/errors.hpp"
#include "smf/means.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>

namespace smf::mc {

const char* to_string(Mode m) {
    switch (m) {
        case Mode::Orbit: return "orbit";
        case Mode::DigitModel: return "digit_model";
    }
    return "?";
}

std::mt19937_64 sample_rng(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

padic::PAdicInt sample_haar_point(std::uint32_t p, int precision, std::mt19937_64& rng) {
    padic::require_prime(p);
    if (precision < 8) throw DomainError("Haar samples need precision >= 8");
    std::uniform_int_distribution<std::uint32_t> digit(0, p - 1);
    std::vector<std::uint32_t> c(static_cast<std::size_t>(precision) + 1, 0);
    int v = 0;
    while (v == 0) {
        for (int i = 1; i <= precision; ++i) c[i] = digit(rng);
        for (int i = 1; i <= precision; ++i)
            if (c[i] != 0) {
                v = i;
                break;
            }
    }
    // unit = sum_{i >= v} c_i p^(i - v), Horner from the top digit.
    mpz_class unit = 0;
    for (int i = precision; i >= v; --i) {
        unit *= p;
        unit += c[i];
    }
    return padic::PAdicInt::from_parts(p, v, unit, precision + 1 - v);
}

std::vector<cf::DigitPair> sample_digit_model(std::uint32_t p, std::size_t n, std::mt19937_64& rng) {
    padic::require_prime(p);
    const double logp = std::log(static_cast<double>(p));
    std::uniform_int_distribution<int> residue(1, static_cast<int>(p) - 1);
    std::vector<cf::DigitPair> out(n);
    for (auto& pair : out) {
        // Inverse CDF: a = k exactly when p^-k <= U < p^-(k-1).
        const double u = 1.0 - std::generate_canonical<double, 64>(rng);  // (0, 1]
        const double a = std::ceil(-std::log(u) / logp);
        pair.a = a < 1.0 ? 1 : static_cast<int>(a);
        pair.b = residue(rng);
    }
    return out;
}

namespace {

struct SampleStat {
    double sum = 0.0;         // sum of a^q (or log a) over the sample
    std::size_t count = 0;    // digits used
    double power_mean = 0.0;  // M_q of the sample alone
    bool short_orbit = false;
    std::exception_ptr error;
};

std::vector<int> valuations(const std::vector<cf::DigitPair>& pairs, std::size_t limit) {
    std::vector<int> a;
    a.reserve(std::min(limit, pairs.size()));
    for (std::size_t i = 0; i < pairs.size() && i < limit; ++i) a.push_back(pairs[i].a);
    return a;
}

SampleStat run_sample(double q, std::uint32_t p, Mode mode, std::size_t orbit_length,
                      std::uint64_t seed, std::uint64_t index, int precision) {
    SampleStat st;
    auto rng = sample_rng(seed, index);
    std::vector<int> a;
    if (mode == Mode::DigitModel) {
        a = valuations(sample_digit_model(p, orbit_length, rng), orbit_length);
    } else {
        const auto x = sample_haar_point(p, precision, rng);
        const auto seq = cf::digits(x, orbit_length);
        a = valuations(seq.pairs, seq.trusted_count);
        st.short_orbit = 2 * a.size() < orbit_length;
    }
    st.count = a.size();
    if (st.count == 0) return st;
    st.sum = means::power_sum_mean(a, q) * static_cast<double>(st.count);
    st.power_mean = means::power_mean(a, q);
    return st;
}

}  // namespace

MonteCarloEstimate estimate_mean(double q, std::uint32_t p, Mode mode, std::size_t samples,
                                 std::size_t orbit_length, std::uint64_t seed, int precision,
                                 Exec exec) {
    padic::require_prime(p);
    if (std::isnan(q)) throw DomainError("q is NaN");
    if (samples < 1) throw DomainError("samples must be >= 1");
    if (orbit_length < 1) throw DomainError("orbit_length must be >= 1");
    if (mode == Mode::Orbit && precision < 8) throw DomainError("precision must be >= 8");

    std::vector<SampleStat> stats(samples);
    const auto n = static_cast<std::ptrdiff_t>(samples);
    auto body = [&](std::ptrdiff_t i) {
        try {
            stats[i] = run_sample(q, p, mode, orbit_length, seed, static_cast<std::uint64_t>(i),
                                  precision);
        } catch (...) {
            stats[i].error = std::current_exception();
        }
    };
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
    } else {
        for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
    }

    // Serial reduction in sample order: the result does not depend on threads.
    std::size_t short_orbits = 0, total = 0, used = 0;
    double sum = 0.0, sum_means = 0.0;
    for (const auto& st : stats) {
        if (st.error) std::rethrow_exception(st.error);
        short_orbits += st.short_orbit;
        if (st.count == 0) continue;
        total += st.count;
        sum += st.sum;
        sum_means += st.power_mean;
        ++used;
    }
    if (mode == Mode::Orbit && 10 * short_orbits > samples)
        throw InsufficientTrustedDigits(std::to_string(short_orbits) + " of " +
                                        std::to_string(samples) + " samples have fewer than " +
                                        std::to_string((orbit_length + 1) / 2) +
                                        " trusted digits at precision " + std::to_string(precision));
    if (total == 0) throw InsufficientTrustedDigits("no trusted digits at all");

    // Ratio estimator R = sum T_i / sum n_i with its linearised variance.
    const double ratio = sum / static_cast<double>(total);
    const double n_bar = static_cast<double>(total) / static_cast<double>(used);
    double var_ratio = 0.0;
    if (used > 1) {
        double ss = 0.0;
        for (const auto& st : stats) {
            if (st.count == 0) continue;
            const double r = st.sum - ratio * static_cast<double>(st.count);
            ss += r * r;
        }
        var_ratio = ss / (static_cast<double>(used) * static_cast<double>(used - 1) * n_bar * n_bar);
    }
    const double se_ratio = std::sqrt(var_ratio);

    MonteCarloEstimate est;
    est.q = q;
    est.p = p;
    est.mode = mode;
    est.samples = samples;
    est.orbit_length = orbit_length;
    est.seed = seed;
    est.digits_used = total;
    est.precision = precision;
    est.mean_of_sample_means = sum_means / static_cast<double>(used);
    if (std::abs(q) < means::kGeometricThreshold) {
        est.mean = std::exp(ratio);
        est.std_error = est.mean * se_ratio;
    } else {
        est.mean = std::pow(ratio, 1.0 / q);
        est.std_error = std::abs(est.mean / (q * ratio)) * se_ratio;
    }
    return est;
}

}  // namespace smf::mc
