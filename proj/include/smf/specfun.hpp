#pragma once

#include <gmpxx.h>

namespace smf::specfun {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Above this z the polylog switches from the power series to the
/// Gamma/zeta expansion around z = 1.
inline constexpr double kSeriesSwitch = 0.5;
/// Hard cap on the number of terms in the Gamma/zeta expansion.
inline constexpr int kMaxExpansionTerms = 60;
/// Step of the central difference used for zeta'.
inline constexpr double kZetaPrimeStep = 1e-5;

enum class PolylogMethod {
    DirectSeries,
    EulerianClosedForm,
    GammaZetaExpansion,
    Logarithm,  ///< Li_1(z) = -log(1 - z)
    ZetaValue,  ///< Li_s(1) = zeta(s), s > 1
};

const char* to_string(PolylogMethod m);

struct PolylogResult {
    double value;
    PolylogMethod method;
    /// Bound on the absolute truncation error of the method used.
    double error_estimate;
};

/// Eulerian number A(m, k): permutations of {1..m} with exactly k ascents.
/// Zero outside 0 <= k <= max(m - 1, 0).
mpz_class eulerian(int m, int k);

/// Li_s(z) for real s and 0 <= z < 1 (z = 1 allowed for s > 1).
///
/// Dispatch:
///  - integer s <= 0: Eulerian closed form
///  - s = 1: -log(1 - z)
///  - other s, z <= kSeriesSwitch: direct series
///  - non-integer s < 1, z > kSeriesSwitch: Gamma/zeta expansion
///  - remaining cases (s > 1): direct series, which raises PoleError if z is
///    too close to 1 for the series to finish.
PolylogResult polylog(double s, double z);

/// Li_s(e^log_z) for log_z < 0. Same dispatch as polylog(), but keeps full
/// precision when z is within rounding distance of 1.
PolylogResult polylog_at_log(double s, double log_z);

/// d/ds Li_s(z) at s = 0, i.e. -sum_{n>=2} z^n log n.
PolylogResult polylog_ds0(double z);
PolylogResult polylog_ds0_at_log(double log_z);

// Single-method evaluators. polylog() dispatches to these; they are public so
// the routes can be checked against each other.

/// sum z^n / n^s until the tail bound drops below double resolution.
PolylogResult polylog_series(double s, double z);
/// Li_{-m}(z) = z / (1-z)^(m+1) * sum_k A(m,k) z^k.
PolylogResult polylog_eulerian(int m, double z);
/// Gamma(1-s)(-log z)^(s-1) + sum_k zeta(s-k) (log z)^k / k!; s not an
/// integer, 0 < z < 1. Throws DivergentTail if the terms stop shrinking.
PolylogResult polylog_expansion(double s, double z, int max_terms = kMaxExpansionTerms);
PolylogResult polylog_ds0_series(double z);
/// (gamma + log(-log z))/(-log z) + sum_k zeta'(-k) (log z)^k / k!.
PolylogResult polylog_ds0_expansion(double z, int max_terms = kMaxExpansionTerms);

/// Riemann zeta for real s != 1 (eta-series acceleration for s > 0,
/// functional equation for s < 0).
double zeta(double s);
/// Central difference of zeta() with step kZetaPrimeStep; exact at s = 0.
double zeta_prime(double s);

/// Gamma(x) for x > 0.
double gamma(double x);

enum class WBranch { Principal, MinusOne };

/// Real Lambert W: solves w e^w = x. Principal needs x >= -1/e and returns
/// w >= -1; MinusOne needs -1/e <= x < 0 and returns w <= -1.
double lambert_w(WBranch branch, double x);

}  // namespace smf::specfun
