#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>

namespace smf::padic {

/// Base-p digits carried by default when building values from rationals.
inline constexpr int kDefaultPrecision = 256;

bool is_prime(std::uint64_t n);

/// Throws InvalidPrime unless p is prime.
void require_prime(std::uint64_t p);

/// p^k as a big integer.
mpz_class power(std::uint32_t p, int k);

/// Exponent of p in n (n != 0).
int valuation_of(const mpz_class& n, std::uint32_t p);

/**
 * Finite-precision element of Z_p stored as p^valuation * unit.
 *
 * The unit is a canonical residue modulo p^trusted (least nonnegative,
 * coprime to p), so the value is known modulo p^(valuation + trusted).
 * Values built from an exact rational also keep that rational; it rides
 * along through the Schneider map and is what allows an orbit to be
 * declared finite. Zero is only ever an exact state: a residue that is
 * zero at the available precision is PrecisionExhausted, not zero.
 */
class PAdicInt {
public:
    static PAdicInt zero(std::uint32_t p);

    /// Builds p^valuation * unit; the unit is reduced modulo p^trusted.
    /// Throws NotAUnit if p divides the unit, DomainError if trusted < 1.
    static PAdicInt from_parts(std::uint32_t p, int valuation, mpz_class unit, int trusted,
                               std::optional<mpq_class> exact = std::nullopt);

    std::uint32_t prime() const noexcept { return prime_; }
    bool is_zero() const noexcept { return zero_; }
    /// Meaningless for zero; use smf::padic::valuation() for the tri-state view.
    int valuation() const noexcept { return valuation_; }
    const mpz_class& unit() const noexcept { return unit_; }
    /// Relative precision: base-p digits of the unit that are meaningful.
    int trusted() const noexcept { return trusted_; }
    /// valuation + trusted; the value is known modulo p^absolute_precision().
    int absolute_precision() const noexcept { return valuation_ + trusted_; }
    bool is_exact() const noexcept { return exact_.has_value(); }
    const std::optional<mpq_class>& exact() const noexcept { return exact_; }

    /// p^v * u reduced modulo p^k (k may exceed the absolute precision; the
    /// untrusted high digits are then whatever the canonical unit holds).
    mpz_class residue(int k) const;

    /// Equality of canonical forms at the smaller precision of the two.
    bool congruent(const PAdicInt& other) const;

private:
    PAdicInt() = default;

    std::uint32_t prime_ = 2;
    bool zero_ = true;
    int valuation_ = 0;
    mpz_class unit_{0};
    int trusted_ = 0;
    std::optional<mpq_class> exact_;
};

/// num/den as an element of Z_p, with `precision` trusted unit digits.
/// Throws InvalidPrime, NotPAdicInteger (negative valuation) or DomainError (den == 0).
PAdicInt from_rational(const mpz_class& num, const mpz_class& den, std::uint32_t p,
                       int precision = kDefaultPrecision);

/// nullopt stands for an infinite valuation (exact zero).
std::optional<int> valuation(const PAdicInt& x);

/// w with u*w = 1 mod p^k, least nonnegative. Throws NotAUnit if p | u.
mpz_class invert_unit(const mpz_class& u, std::uint32_t p, int k);

mpz_class sub_mod(const mpz_class& x, const mpz_class& y, std::uint32_t p, int k);
mpz_class mul_mod(const mpz_class& x, const mpz_class& y, std::uint32_t p, int k);

/// Splits a residue mod p^k into p^v * unit with trusted = k - v. Throws
/// PrecisionExhausted when every one of the k digits is zero.
PAdicInt canonicalize(const mpz_class& residue, std::uint32_t p, int k);

/// Same as canonicalize, but reports exhaustion as nullopt.
std::optional<PAdicInt> try_canonicalize(const mpz_class& residue, std::uint32_t p, int k);

}  // namespace smf::padic
