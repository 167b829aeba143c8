#include "smf/errors.hpp"
#include "smf/means.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace smf;
using means::birkhoff_potential_mean;
using means::power_mean;

namespace {

std::vector<int> random_digits(std::mt19937_64& rng, int n, int max_digit) {
    std::uniform_int_distribution<int> d(1, max_digit);
    std::vector<int> a(n);
    for (auto& x : a) x = d(rng);
    return a;
}

}  // namespace

TEST_CASE("power_mean examples") {
    CHECK(power_mean(std::vector{1, 2, 3}, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(power_mean(std::vector{1, 3}, -1.0) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(power_mean(std::vector{1, 7}, 2.0) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(power_mean(std::vector{1, 4}, 0.0) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("power_mean errors") {
    CHECK_THROWS_AS(power_mean(std::vector<int>{}, 1.0), EmptySequence);
    CHECK_THROWS_AS(power_mean(std::vector{1, 0}, 1.0), DomainError);
    CHECK_THROWS_AS(birkhoff_potential_mean(std::vector<int>{}, 1.0, 2), EmptySequence);
}

TEST_CASE("birkhoff_potential_mean examples") {
    CHECK(birkhoff_potential_mean(std::vector{2, 2}, 1.0, 2) ==
          doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-15));
    CHECK(birkhoff_potential_mean(std::vector{1, 1, 1}, 3.0, 3) ==
          doctest::Approx(std::pow(std::log(3.0), 3)).epsilon(1e-15));
}

TEST_CASE("property: Birkhoff identities") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 100; ++i) {
        const auto a = random_digits(rng, 1 + i, 12);
        const std::uint32_t p = i % 3 == 0 ? 2 : (i % 3 == 1 ? 3 : 7);
        const double logp = std::log(static_cast<double>(p));
        for (double q : {-2.0, -0.5, 0.5, 1.0, 3.0}) {
            const double want = std::pow(logp, q) * std::pow(power_mean(a, q), q);
            CHECK(std::abs(birkhoff_potential_mean(a, q, p) / want - 1.0) < 1e-12);
        }
        const double g = std::log(logp) + std::log(power_mean(a, 0.0));
        CHECK(std::abs(birkhoff_potential_mean(a, 0.0, p) - g) <= 1e-12 * std::abs(g));
    }
}

TEST_CASE("property: power-mean inequality") {
    std::mt19937_64 rng(22);
    const double qs[] = {-3.0, -1.0, -0.25, 0.0, 0.25, 1.0, 2.0, 5.0};
    for (int i = 0; i < 100; ++i) {
        const auto a = random_digits(rng, 2 + i % 50, 9);
        const bool constant = std::adjacent_find(a.begin(), a.end(), std::not_equal_to<>()) == a.end();
        for (std::size_t k = 1; k < std::size(qs); ++k) {
            const double lo = power_mean(a, qs[k - 1]), hi = power_mean(a, qs[k]);
            if (constant)
                CHECK(hi == doctest::Approx(lo).epsilon(1e-14));
            else
                CHECK(lo < hi);
        }
        CHECK(power_mean(a, -3.0) >= 1.0);
    }
}

TEST_CASE("property: continuity at q = 0") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 20; ++i) {
        const auto a = random_digits(rng, 100, 20);
        const double g = power_mean(a, 0.0);
        for (double sign : {-1.0, 1.0}) {
            double prev = INFINITY;
            for (int k = 1; k <= 8; ++k) {
                const double q = sign * std::pow(10.0, -k);
                const double gap = std::abs(power_mean(a, q) - g);
                CHECK(gap <= prev * 1.0001 + 1e-15);
                prev = gap;
            }
            CHECK(prev < 1e-6);
        }
        // below the threshold the geometric branch is used exactly
        CHECK(power_mean(a, 1e-12) == g);
    }
}

TEST_CASE("large exponents stay finite") {
    const std::vector a{1000, 2};
    const double m = power_mean(a, 200.0);
    CHECK(std::isfinite(m));
    CHECK(m == doctest::Approx(1000.0 * std::pow(0.5, 1.0 / 200.0)).epsilon(1e-12));
    const double h = power_mean(a, -200.0);
    CHECK(h == doctest::Approx(2.0 * std::pow(0.5, -1.0 / 200.0)).epsilon(1e-12));
    CHECK(means::power_sum_mean(std::vector{1, 1, 4}, 0.0) ==
          doctest::Approx(std::log(4.0) / 3.0).epsilon(1e-15));
}
