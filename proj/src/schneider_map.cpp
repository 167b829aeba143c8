#include "smf/schneider_map.hpp"

#include "smf/errors.hpp"

#include <algorithm>
#include <string>

namespace smf::cf {

using padic::PAdicInt;

const char* to_string(Termination t) {
    switch (t) {
        case Termination::Open: return "open";
        case Termination::FiniteExpansion: return "finite";
        case Termination::PrecisionExhausted: return "precision_exhausted";
    }
    return "?";
}

namespace {

struct RawStep {
    int a;
    int b;
    std::optional<PAdicInt> next;  // nullopt: precision exhausted
};

RawStep raw_step(const PAdicInt& x) {
    if (x.is_zero()) throw FiniteOrbit("the orbit has reached 0");
    if (x.valuation() == 0) throw NotInDomain("x is a unit, not an element of pZ_p");

    const std::uint32_t p = x.prime();
    const int a = x.valuation();
    const int t = x.trusted();

    // p^a / x = 1 / unit, known to the same relative precision t.
    const mpz_class w = padic::invert_unit(x.unit(), p, t);
    const int b = static_cast<int>(mpz_fdiv_ui(w.get_mpz_t(), p));

    std::optional<mpq_class> exact_next;
    if (x.exact()) {
        mpq_class q = mpq_class(padic::power(p, a)) / *x.exact() - b;
        q.canonicalize();
        if (q == 0) return {a, b, PAdicInt::zero(p)};
        exact_next = std::move(q);
    }

    auto next = padic::try_canonicalize(w - b, p, t);
    if (!next) return {a, b, std::nullopt};
    if (exact_next)
        next = PAdicInt::from_parts(p, next->valuation(), next->unit(), next->trusted(),
                                    std::move(exact_next));
    return {a, b, std::move(next)};
}

}  // namespace

StepResult schneider_step(const PAdicInt& x) {
    RawStep s = raw_step(x);
    if (!s.next)
        throw PrecisionExhausted("T_p(x) cancels to zero within " + std::to_string(x.trusted()) +
                                 " trusted digits");
    return {s.a, s.b, *std::move(s.next), s.a};
}

DigitSequence digits(const PAdicInt& x, std::size_t max_pairs) {
    DigitSequence seq;
    seq.prime = x.prime();
    if (x.is_zero()) {
        seq.terminated = Termination::FiniteExpansion;
        seq.tail = x;
        return seq;
    }
    if (x.valuation() == 0) throw NotInDomain("x is a unit, not an element of pZ_p");

    PAdicInt cur = x;
    while (seq.pairs.size() < max_pairs) {
        RawStep s = raw_step(cur);
        seq.pairs.push_back({s.a, s.b});
        if (!s.next) {
            seq.terminated = Termination::PrecisionExhausted;
            seq.tail.reset();
            break;
        }
        cur = *std::move(s.next);
        seq.tail = cur;
        if (cur.is_zero()) {
            seq.terminated = Termination::FiniteExpansion;
            break;
        }
    }
    if (seq.pairs.empty()) seq.tail = x;
    seq.trusted_count = seq.pairs.size();
    return seq;
}

PAdicInt reconstruct(const DigitSequence& seq, const PAdicInt& tail, int precision) {
    const std::uint32_t p = seq.prime;
    if (tail.prime() != p) throw DomainError("tail and digit sequence use different primes");
    if (precision < 1) throw DomainError("precision must be positive");
    if (!tail.is_zero() && tail.valuation() == 0) throw NotInDomain("tail must lie in pZ_p");

    PAdicInt y = tail;
    for (auto it = seq.pairs.rbegin(); it != seq.pairs.rend(); ++it) {
        if (it->a < 1 || it->b < 1 || it->b >= static_cast<int>(p))
            throw NotInDomain("invalid digit pair (" + std::to_string(it->a) + "," +
                              std::to_string(it->b) + ")");
        // b + y is a unit known modulo p^m.
        const int m = y.is_zero() ? precision : std::min(precision, y.absolute_precision());
        if (m < 1) throw PrecisionExhausted("no trusted digits left in the tail");
        const mpz_class denom = y.residue(m) + it->b;
        std::optional<mpq_class> exact;
        if (y.exact()) {
            mpq_class q = mpq_class(padic::power(p, it->a)) / (*y.exact() + it->b);
            q.canonicalize();
            exact = std::move(q);
        }
        y = PAdicInt::from_parts(p, it->a, padic::invert_unit(denom, p, m), m, std::move(exact));
    }
    return y;
}

DigitSequence exact_digits(const mpq_class& x0, std::uint32_t p, std::size_t max_pairs) {
    padic::require_prime(p);
    DigitSequence seq;
    seq.prime = p;
    mpq_class x = x0;
    x.canonicalize();
    if (x == 0) {
        seq.terminated = Termination::FiniteExpansion;
        return seq;
    }
    if (padic::valuation_of(x.get_den(), p) > 0 || padic::valuation_of(x.get_num(), p) == 0)
        throw NotInDomain("x is not in pZ_p");

    while (seq.pairs.size() < max_pairs) {
        const int a = padic::valuation_of(x.get_num(), p);
        const mpz_class pa = padic::power(p, a);
        // p^a / x = (p^a * den) / num, with p^a cancelling against num.
        const mpz_class n = x.get_den();
        const mpz_class d = x.get_num() / pa;
        mpz_class dinv;
        const mpz_class pz(p);
        mpz_invert(dinv.get_mpz_t(), mpz_class(((d % pz) + pz) % pz).get_mpz_t(), pz.get_mpz_t());
        mpz_class bz = ((n % pz) + pz) % pz * dinv % pz;
        const int b = static_cast<int>(bz.get_si());
        seq.pairs.push_back({a, b});
        mpq_class next = mpq_class(n, d) - b;
        next.canonicalize();
        x = next;
        if (x == 0) {
            seq.terminated = Termination::FiniteExpansion;
            break;
        }
    }
    seq.trusted_count = seq.pairs.size();
    return seq;
}

}  // namespace smf::cf
