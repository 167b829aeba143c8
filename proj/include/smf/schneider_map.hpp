#pragma once

#include "smf/padic.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace smf::cf {

struct DigitPair {
    int a;  ///< valuation digit, >= 1
    int b;  ///< residue digit in 1..p-1

    friend bool operator==(const DigitPair&, const DigitPair&) = default;
};

enum class Termination { Open, FiniteExpansion, PrecisionExhausted };

const char* to_string(Termination t);

/// Pairs (a_i, b_i) read off the orbit of x under the Schneider map.
struct DigitSequence {
    std::uint32_t prime = 2;
    std::vector<DigitPair> pairs;
    Termination terminated = Termination::Open;
    /// Pairs guaranteed exact. Untrusted pairs are never emitted, so this
    /// always equals pairs.size().
    std::size_t trusted_count = 0;
    /// T^n(x) after the last emitted pair, when it is known.
    std::optional<padic::PAdicInt> tail;
};

struct StepResult {
    int a;
    int b;
    padic::PAdicInt next;
    /// Drop in absolute precision caused by the step (equals a).
    int digits_consumed;
};

/// One application of T_p(x) = p^a / x - b with a = v_p(x).
/// Throws FiniteOrbit for zero, NotInDomain for v_p(x) = 0, and
/// PrecisionExhausted when the image cancels to zero at the carried precision.
StepResult schneider_step(const padic::PAdicInt& x);

/// Iterates the map up to max_pairs times. A zero image ends the expansion
/// as FiniteExpansion (exact inputs only); running out of trusted digits
/// ends it as PrecisionExhausted after emitting the last exact pair.
DigitSequence digits(const padic::PAdicInt& x, std::size_t max_pairs);

/// Evaluates p^a1/(b1 + p^a2/(b2 + ... + p^an/(bn + tail))) innermost-out,
/// carrying at most `precision` unit digits.
padic::PAdicInt reconstruct(const DigitSequence& seq, const padic::PAdicInt& tail, int precision);

/// Schneider expansion of an exact rational x in pZ_p computed purely over
/// the integers. Used as the reference stream for digits().
DigitSequence exact_digits(const mpq_class& x, std::uint32_t p, std::size_t max_pairs);

}  // namespace smf::cf
