#include "smf/errors.hpp"
#include "smf/montecarlo.hpp"
#include "smf/schneider_map.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <doctest.h>

#include <random>

using namespace smf;
using padic::from_rational;
using padic::PAdicInt;
namespace bmp = boost::multiprecision;

namespace {

// Exact Schneider iteration over Boost rationals; shares no code with the
// library (different bignum backend, no modular inversion at high precision).
std::vector<cf::DigitPair> boost_digits(long num, long den, unsigned p, std::size_t max, bool& finite) {
    std::vector<cf::DigitPair> out;
    bmp::cpp_rational x{bmp::cpp_int(num), bmp::cpp_int(den)};
    finite = false;
    while (out.size() < max) {
        if (x == 0) {
            finite = true;
            break;
        }
        bmp::cpp_int n = bmp::numerator(x);
        int a = 0;
        while (n % p == 0) {
            n /= p;
            ++a;
        }
        REQUIRE(a >= 1);
        // y = p^a / x, formed by division so that a negative x normalises cleanly
        const bmp::cpp_rational y = bmp::cpp_rational(bmp::pow(bmp::cpp_int(p), a)) / x;
        // b = numerator * denominator^{-1} mod p, by brute force
        const long yn = static_cast<long>(((bmp::numerator(y) % p) + p) % p);
        const long yd = static_cast<long>(((bmp::denominator(y) % p) + p) % p);
        int b = 0;
        for (int c = 1; c < static_cast<int>(p); ++c)
            if ((c * yd) % p == yn) b = c;
        REQUIRE(b != 0);
        out.push_back({a, b});
        x = y - b;
    }
    return out;
}

}  // namespace

TEST_CASE("schneider_step examples") {
    SUBCASE("p=2, x=2") {
        const auto r = cf::schneider_step(from_rational(2, 1, 2, 32));
        CHECK(r.a == 1);
        CHECK(r.b == 1);
        CHECK(r.next.is_zero());
    }
    SUBCASE("p=2, x=2/3") {
        const auto r = cf::schneider_step(from_rational(2, 3, 2, 32));
        CHECK(r.a == 1);
        CHECK(r.b == 1);
        REQUIRE(r.next.is_exact());
        CHECK(*r.next.exact() == 2);
        CHECK(r.next.valuation() == 1);
        CHECK(r.next.unit() == 1);
        CHECK(r.digits_consumed == 1);
    }
    SUBCASE("p=3, x=3") {
        const auto r = cf::schneider_step(from_rational(3, 1, 3, 32));
        CHECK(r.a == 1);
        CHECK(r.b == 1);
        CHECK(r.next.is_zero());
    }
}

TEST_CASE("schneider_step errors") {
    CHECK_THROWS_AS(cf::schneider_step(PAdicInt::zero(2)), FiniteOrbit);
    CHECK_THROWS_AS(cf::schneider_step(from_rational(1, 3, 2, 16)), NotInDomain);
    // 2 mod 4 without an exact value: 2/x = 1 mod 2 and 1 - 1 cancels every digit.
    CHECK_THROWS_AS(cf::schneider_step(PAdicInt::from_parts(2, 1, 1, 1)), PrecisionExhausted);
}

TEST_CASE("precision accounting of a step") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
        const std::uint32_t p = i % 2 ? 5 : 2;
        const auto x = mc::sample_haar_point(p, 64, rng);
        const auto r = cf::schneider_step(x);
        CHECK(r.digits_consumed == r.a);
        CHECK(r.next.absolute_precision() == x.absolute_precision() - r.a);
        CHECK(r.next.trusted() <= x.trusted());
        CHECK(r.next.trusted() == x.trusted() - r.next.valuation());
    }
}

TEST_CASE("digits examples") {
    SUBCASE("2/3") {
        const auto s = cf::digits(from_rational(2, 3, 2, 64), 10);
        CHECK(s.pairs == std::vector<cf::DigitPair>{{1, 1}, {1, 1}});
        CHECK(s.terminated == cf::Termination::FiniteExpansion);
        CHECK(s.trusted_count == 2);
    }
    SUBCASE("2") {
        const auto s = cf::digits(from_rational(2, 1, 2, 64), 10);
        CHECK(s.pairs == std::vector<cf::DigitPair>{{1, 1}});
        CHECK(s.terminated == cf::Termination::FiniteExpansion);
    }
    SUBCASE("5 in Z_5") {
        const auto s = cf::digits(from_rational(5, 1, 5, 64), 3);
        CHECK(s.pairs == std::vector<cf::DigitPair>{{1, 1}});
        CHECK(s.terminated == cf::Termination::FiniteExpansion);
    }
    SUBCASE("unit input") {
        CHECK_THROWS_AS(cf::digits(from_rational(1, 1, 3, 64), 3), NotInDomain);
    }
    SUBCASE("open and exhausted") {
        std::mt19937_64 rng(5);
        const auto x = mc::sample_haar_point(2, 16, rng);
        const auto open = cf::digits(x, 2);
        CHECK(open.terminated == cf::Termination::Open);
        CHECK(open.pairs.size() == 2);
        const auto all = cf::digits(x, 1000);
        CHECK(all.terminated == cf::Termination::PrecisionExhausted);
        CHECK(all.trusted_count == all.pairs.size());
        CHECK(all.pairs.size() < 17);
    }
}

TEST_CASE("reconstruct examples") {
    cf::DigitSequence seq;
    seq.prime = 2;
    seq.pairs = {{1, 1}, {1, 1}};
    seq.trusted_count = 2;
    const auto y = cf::reconstruct(seq, PAdicInt::zero(2), 40);
    CHECK(y.valuation() == 1);
    CHECK(y.congruent(from_rational(2, 3, 2, 40)));
    REQUIRE(y.is_exact());
    CHECK(*y.exact() == mpq_class(2, 3));

    seq.pairs = {{1, 1}};
    seq.trusted_count = 1;
    const auto two = cf::reconstruct(seq, PAdicInt::zero(2), 40);
    CHECK(two.valuation() == 1);
    CHECK(two.unit() == 1);
}

TEST_CASE("property: round trip on Haar points") {
    const std::uint32_t primes[] = {2, 3, 5, 7};
    for (int i = 0; i < 200; ++i) {
        const std::uint32_t p = primes[i % 4];
        auto rng = mc::sample_rng(99, static_cast<std::uint64_t>(i));
        const auto x = mc::sample_haar_point(p, 96, rng);
        const auto seq = cf::digits(x, 24);
        REQUIRE(seq.tail.has_value());
        const auto y = cf::reconstruct(seq, *seq.tail, 96);
        const int m = std::min(x.absolute_precision(), y.absolute_precision());
        CHECK(m >= 8);
        CHECK(x.residue(m) == y.residue(m));
        for (const auto& d : seq.pairs) {
            CHECK(d.a >= 1);
            CHECK(d.b >= 1);
            CHECK(d.b <= static_cast<int>(p) - 1);
        }
    }
}

TEST_CASE("property: exact rational oracle reproduces the digit stream") {
    std::mt19937_64 rng(8);
    const unsigned primes[] = {2, 3, 5, 7, 11};
    std::uniform_int_distribution<long> num(1, 200000), den(1, 200000);
    int finite = 0;
    for (int i = 0; i < 200; ++i) {
        const unsigned p = primes[i % 5];
        long n = num(rng) * static_cast<long>(p), d = den(rng);
        while (d % p == 0) d /= p;
        if (i % 3 == 0) n = -n;
        bool oracle_finite = false;
        const auto want = boost_digits(n, d, p, 40, oracle_finite);
        const auto got = cf::digits(from_rational(n, d, p, 512), 40);
        mpq_class q{mpz_class(n), mpz_class(d)};
        q.canonicalize();
        const auto ref = cf::exact_digits(q, p, 40);
        REQUIRE(got.trusted_count <= want.size());
        for (std::size_t k = 0; k < got.trusted_count; ++k) CHECK(got.pairs[k] == want[k]);
        CHECK(ref.pairs == want);
        if (oracle_finite) {
            ++finite;
            CHECK(got.terminated == cf::Termination::FiniteExpansion);
            CHECK(got.pairs.size() == want.size());
        }
    }
    MESSAGE("finite expansions among the samples: " << finite);
}
