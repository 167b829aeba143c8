#include "smf/padic.hpp"

#include "smf/errors.hpp"

#include <algorithm>
#include <string>

namespace smf::padic {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

void require_prime(std::uint64_t p) {
    if (!is_prime(p) || p > 0xffffffffULL)
        throw InvalidPrime(std::to_string(p) + " is not a supported prime");
}

mpz_class power(std::uint32_t p, int k) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), p, static_cast<unsigned long>(std::max(k, 0)));
    return r;
}

int valuation_of(const mpz_class& n, std::uint32_t p) {
    mpz_class m = n;
    int v = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
        ++v;
    }
    return v;
}

namespace {

mpz_class reduce(const mpz_class& x, const mpz_class& modulus) {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), x.get_mpz_t(), modulus.get_mpz_t());
    return r;
}

}  // namespace

PAdicInt PAdicInt::zero(std::uint32_t p) {
    PAdicInt z;
    z.prime_ = p;
    z.zero_ = true;
    z.exact_ = mpq_class(0);
    return z;
}

PAdicInt PAdicInt::from_parts(std::uint32_t p, int valuation, mpz_class unit, int trusted,
                              std::optional<mpq_class> exact) {
    if (trusted < 1) throw DomainError("a nonzero p-adic value needs at least one trusted digit");
    if (valuation < 0) throw NotPAdicInteger("negative valuation");
    mpz_class u = reduce(unit, power(p, trusted));
    if (mpz_divisible_ui_p(u.get_mpz_t(), p)) throw NotAUnit("unit residue is divisible by p");
    PAdicInt x;
    x.prime_ = p;
    x.zero_ = false;
    x.valuation_ = valuation;
    x.unit_ = std::move(u);
    x.trusted_ = trusted;
    x.exact_ = std::move(exact);
    return x;
}

mpz_class PAdicInt::residue(int k) const {
    if (zero_ || valuation_ >= k) return 0;
    return reduce(unit_ * power(prime_, valuation_), power(prime_, k));
}

bool PAdicInt::congruent(const PAdicInt& other) const {
    if (prime_ != other.prime_) return false;
    if (zero_ || other.zero_) return zero_ == other.zero_;
    if (valuation_ != other.valuation_) return false;
    const int k = std::min(trusted_, other.trusted_);
    const mpz_class m = power(prime_, k);
    return reduce(unit_, m) == reduce(other.unit_, m);
}

PAdicInt from_rational(const mpz_class& num, const mpz_class& den, std::uint32_t p, int precision) {
    require_prime(p);
    if (den == 0) throw DomainError("zero denominator");
    if (precision < 1) throw DomainError("precision must be positive");
    if (num == 0) return PAdicInt::zero(p);

    const int vn = valuation_of(num, p);
    const int vd = valuation_of(den, p);
    if (vn < vd)
        throw NotPAdicInteger(num.get_str() + "/" + den.get_str() + " has negative " +
                              std::to_string(p) + "-adic valuation");

    mpq_class exact(num, den);
    exact.canonicalize();

    // After cancelling, the denominator is coprime to p.
    const mpz_class pv = power(p, vn - vd);
    const mpz_class n = exact.get_num() / pv;
    const mpz_class unit = mul_mod(n, invert_unit(exact.get_den(), p, precision), p, precision);
    return PAdicInt::from_parts(p, vn - vd, unit, precision, std::move(exact));
}

std::optional<int> valuation(const PAdicInt& x) {
    if (x.is_zero()) return std::nullopt;
    return x.valuation();
}

mpz_class invert_unit(const mpz_class& u, std::uint32_t p, int k) {
    if (k < 1) throw DomainError("modulus exponent must be positive");
    if (mpz_divisible_ui_p(u.get_mpz_t(), p))
        throw NotAUnit(u.get_str() + " is divisible by " + std::to_string(p));
    const mpz_class m = power(p, k);
    mpz_class w;
    mpz_invert(w.get_mpz_t(), mpz_class(reduce(u, m)).get_mpz_t(), m.get_mpz_t());
    return w;
}

mpz_class sub_mod(const mpz_class& x, const mpz_class& y, std::uint32_t p, int k) {
    return reduce(x - y, power(p, k));
}

mpz_class mul_mod(const mpz_class& x, const mpz_class& y, std::uint32_t p, int k) {
    return reduce(x * y, power(p, k));
}

std::optional<PAdicInt> try_canonicalize(const mpz_class& residue, std::uint32_t p, int k) {
    if (k < 1) return std::nullopt;
    const mpz_class r = reduce(residue, power(p, k));
    if (r == 0) return std::nullopt;
    const int v = valuation_of(r, p);
    return PAdicInt::from_parts(p, v, r / power(p, v), k - v);
}

PAdicInt canonicalize(const mpz_class& residue, std::uint32_t p, int k) {
    auto x = try_canonicalize(residue, p, k);
    if (!x)
        throw PrecisionExhausted("all " + std::to_string(k) + " available digits are zero");
    return *std::move(x);
}

}  // namespace smf::padic
