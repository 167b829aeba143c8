#pragma once

#include "smf/parallel.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace smf::spectrum {

/// One solved point of the power-mean spectrum.
///
/// lambda is the Lyapunov exponent of the equilibrium state (natural-log
/// units, lambda >= log p); mean_digit = lambda / log p is the same quantity
/// in digit units. s_alpha is the pressure minimiser, +inf at the degenerate
/// endpoint beta = 1.
struct SpectrumPoint {
    double q;
    double beta;
    double lambda;
    double mean_digit;
    double s_alpha;
    double dimension;
    std::uint32_t p;
};

/// Solver tolerance on beta, relative.
inline constexpr double kBetaTolerance = 1e-13;
inline constexpr int kMaxSolverIterations = 200;
/// Bracket doubling stops at lambda = 2^kMaxBracketDoublings * log p.
inline constexpr int kMaxBracketDoublings = 60;

/// P(-s log psi) = log((p-1)/(p^s - 1)), s > 0.
double pressure(double s, std::uint32_t p);

/// Closed-form Lyapunov spectrum L_p(lambda), lambda >= log p.
double lyapunov_dimension(double lambda, std::uint32_t p);

/// (a log a - (a-1) log(a-1) + log(p-1)) / (a log p) for the mean digit a >= 1.
double dimension_from_mean_digit(double a, std::uint32_t p);

/// The pressure minimiser log_p(lambda / (lambda - log p)).
double s_alpha(double lambda, std::uint32_t p);

struct LegendreMinimum {
    double s;      ///< numerical minimiser
    double value;  ///< min over s of pressure(s) + s lambda
};

/// Minimises s -> pressure(s, p) + s lambda by bracket expansion and golden
/// section. Throws BracketFailure if the minimum is not interior to (1e-9, 1e3).
LegendreMinimum legendre_minimum(double lambda, std::uint32_t p);

/// legendre_minimum(lambda, p).value / lambda: the Legendre-transform route to
/// the Lyapunov spectrum, independent of the closed form.
double legendre_oracle(double lambda, std::uint32_t p);

/// The beta whose equilibrium state has Lyapunov exponent lambda:
///   beta^q = log p / (lambda - log p) * Li_{-q}((lambda - log p)/lambda), q != 0
///   log beta = -log p / (lambda - log p) * dLi_s/ds|_{s=0}(...), q = 0
/// Returns 1 at lambda = log p.
double mean_at_lambda(double q, double lambda, std::uint32_t p);

/// Inverts mean_at_lambda in lambda. Throws NoBracket when beta is beyond
/// every lambda up to 2^60 log p, ConvergenceFailure after 200 iterations.
double solve_lambda(double q, double beta, std::uint32_t p);

/// q = -1 in closed form: lambda = -beta log p W_{-1}(-e^{-1/beta} / beta).
/// The principal branch gives W = -1/beta, the degenerate root lambda = log p.
double lambda_harmonic_closed_form(double beta, std::uint32_t p);

/// q = 2 in closed form: log p (1 + sqrt(1 + 8 beta^2)) / 4.
double lambda_quadratic_closed_form(double beta, std::uint32_t p);

/// Hausdorff dimension of the level set of points whose q-power mean of
/// digits is beta.
SpectrumPoint dimension(double q, double beta, std::uint32_t p);

/// The q-power mean of Haar-almost every point:
/// ((p-1) Li_{-q}(1/p))^(1/q), or exp(-(p-1) dLi_s(1/p)/ds|_{s=0}) for q = 0.
double haar_mean(double q, std::uint32_t p);

/// Lyapunov exponent of Haar measure, p/(p-1) log p.
double haar_lambda(std::uint32_t p);

/// log beta at q = 0 from the expansion of the order-derivative around z = 1,
/// truncated after K terms of the zeta' series. Cross-check for
/// mean_at_lambda(0, ...); throws DivergentTail when the terms grow.
double geometric_example_series(double lambda, std::uint32_t p, int K);

/// dimension() over a grid of betas. Output order follows the input order.
std::vector<SpectrumPoint> sweep(double q, std::span<const double> betas, std::uint32_t p,
                                 Exec exec = Exec::Parallel);

}  // namespace smf::spectrum
