#include "smf/spectrum.hpp"

#include "smf/errors.hpp"
#include "smf/means.hpp"
#include "smf/padic.hpp"
#include "smf/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <string>

namespace smf::spectrum {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double log_p(std::uint32_t p) {
    padic::require_prime(p);
    return std::log(static_cast<double>(p));
}

void require_lambda(double lambda, double logp) {
    if (!(lambda >= logp))
        throw DomainError("lambda = " + std::to_string(lambda) + " is below log p = " +
                          std::to_string(logp));
}

// log beta(lambda); the shared core of mean_at_lambda and the solver.
double log_beta_at(double q, double lambda, double logp) {
    require_lambda(lambda, logp);
    if (std::isinf(lambda)) throw DomainError("lambda must be finite");
    if (lambda == logp) return 0.0;
    const double a = lambda / logp;
    // z = (lambda - log p)/lambda, carried as log z; z * a = a - 1.
    const double log_z = std::log1p(-logp / lambda);
    const double log_za = log_z + std::log(a);
    if (std::abs(q) < means::kGeometricThreshold) {
        const double d = specfun::polylog_ds0_at_log(log_z).value;
        return -d / std::exp(log_za);
    }
    const double li = specfun::polylog_at_log(-q, log_z).value;
    return (std::log(li) - log_za) / q;
}

// Brent-Dekker root finder on [lo, hi] with f(lo) < 0 <= f(hi).
template <class F>
double brent_root(F f, double lo, double hi, double flo, double fhi, double ftol) {
    double a = lo, b = hi, fa = flo, fb = fhi;
    double c = a, fc = fa, d = b - a, e = d;
    for (int it = 0; it < kMaxSolverIterations; ++it) {
        if ((fb > 0) == (fc > 0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol = 2.0 * kEps * std::abs(b);
        const double m = 0.5 * (c - b);
        if (std::abs(fb) <= ftol || std::abs(m) <= tol) return b;
        if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
            double s = fb / fa, pn, qn;
            if (a == c) {
                pn = 2.0 * m * s;
                qn = 1.0 - s;
            } else {
                const double r = fb / fc, t = fa / fc;
                pn = s * (2.0 * m * t * (t - r) - (b - a) * (r - 1.0));
                qn = (t - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (pn > 0) qn = -qn;
            pn = std::abs(pn);
            if (2.0 * pn < std::min(3.0 * m * qn - std::abs(tol * qn), std::abs(e * qn))) {
                e = d;
                d = pn / qn;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += std::abs(d) > tol ? d : std::copysign(tol, m);
        fb = f(b);
    }
    throw ConvergenceFailure("root solver exceeded " + std::to_string(kMaxSolverIterations) +
                             " iterations");
}

}  // namespace

double pressure(double s, std::uint32_t p) {
    const double logp = log_p(p);
    if (!(s > 0.0)) throw DomainError("pressure diverges for s <= 0");
    return std::log(static_cast<double>(p - 1)) - std::log(std::expm1(s * logp));
}

double lyapunov_dimension(double lambda, std::uint32_t p) {
    const double logp = log_p(p);
    require_lambda(lambda, logp);
    const double log_pm1 = std::log(static_cast<double>(p - 1));
    if (lambda == logp) return log_pm1 / logp;
    // lambda log_p(lambda) - lambda log_p(lambda - log p), without the cancellation.
    const double entropy_gap = -lambda * std::log1p(-logp / lambda) / logp;
    return (log_pm1 + std::log(lambda - logp) - std::log(logp) + entropy_gap) / lambda;
}

double dimension_from_mean_digit(double a, std::uint32_t p) {
    const double logp = log_p(p);
    if (!(a >= 1.0)) throw DomainError("mean digit must be >= 1");
    const double log_pm1 = std::log(static_cast<double>(p - 1));
    if (a == 1.0) return log_pm1 / logp;  // 0 log 0 = 0
    // a log a - (a-1) log(a-1) = log a + (a-1) log(1 + 1/(a-1))
    const double am1 = a - 1.0;
    const double entropy = std::log(a) + am1 * std::log1p(1.0 / am1);
    return (entropy + log_pm1) / (a * logp);
}

double s_alpha(double lambda, std::uint32_t p) {
    const double logp = log_p(p);
    require_lambda(lambda, logp);
    if (lambda == logp) return std::numeric_limits<double>::infinity();
    return -std::log1p(-logp / lambda) / logp;
}

LegendreMinimum legendre_minimum(double lambda, std::uint32_t p) {
    const double logp = log_p(p);
    if (!(lambda > logp)) throw DomainError("the Legendre oracle needs lambda > log p");
    constexpr double s_min = 1e-9, s_max = 1e3;
    auto g = [&](double s) { return pressure(s, p) + s * lambda; };

    // Expand geometrically from s = 1 in the downhill direction.
    double s = 1.0, gs = g(s);
    double lo, hi;
    if (g(2.0 * s) < gs) {
        while (true) {
            const double up = 2.0 * s;
            if (up > s_max) throw BracketFailure("no interior minimum below s = 1e3");
            const double gu = g(up);
            if (gu >= gs) break;
            s = up;
            gs = gu;
        }
        lo = s / 2.0;
        hi = 2.0 * s;
    } else {
        while (true) {
            const double down = s / 2.0;
            if (down < s_min) throw BracketFailure("no interior minimum above s = 1e-9");
            const double gd = g(down);
            if (gd >= gs) break;
            s = down;
            gs = gd;
        }
        lo = s / 2.0;
        hi = 2.0 * s;
    }

    // Golden section; g is convex in s.
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - ratio * (hi - lo), x2 = lo + ratio * (hi - lo);
    double g1 = g(x1), g2 = g(x2);
    for (int it = 0; it < 200 && hi - lo > 4.0 * kEps * hi; ++it) {
        if (g1 < g2) {
            hi = x2;
            x2 = x1;
            g2 = g1;
            x1 = hi - ratio * (hi - lo);
            g1 = g(x1);
        } else {
            lo = x1;
            x1 = x2;
            g1 = g2;
            x2 = lo + ratio * (hi - lo);
            g2 = g(x2);
        }
    }
    return g1 < g2 ? LegendreMinimum{x1, g1} : LegendreMinimum{x2, g2};
}

double legendre_oracle(double lambda, std::uint32_t p) {
    return legendre_minimum(lambda, p).value / lambda;
}

double mean_at_lambda(double q, double lambda, std::uint32_t p) {
    if (std::isnan(q)) throw DomainError("q is NaN");
    return std::exp(log_beta_at(q, lambda, log_p(p)));
}

double solve_lambda(double q, double beta, std::uint32_t p) {
    const double logp = log_p(p);
    if (std::isnan(q)) throw DomainError("q is NaN");
    if (!(beta >= 1.0) || std::isinf(beta)) throw DomainError("beta must be a finite value >= 1");
    if (beta == 1.0) return logp;

    const double target = std::log(beta);
    auto f = [&](double lambda) { return log_beta_at(q, lambda, logp) - target; };

    double lo = logp, flo = -target;
    double hi = 0.0, fhi = 0.0;
    bool straddled = false;
    for (int k = 1; k <= kMaxBracketDoublings; ++k) {
        hi = std::ldexp(logp, k);
        try {
            fhi = f(hi);
        } catch (const PoleError& e) {
            throw NoBracket("beta = " + std::to_string(beta) +
                            " needs lambda beyond the reach of the polylog series (" + e.what() + ")");
        }
        if (fhi >= 0.0) {
            straddled = true;
            break;
        }
        lo = hi;
        flo = fhi;
    }
    if (!straddled)
        throw NoBracket("beta = " + std::to_string(beta) + " is not attained for lambda <= 2^60 log p");
    return brent_root(f, lo, hi, flo, fhi, kBetaTolerance);
}

double lambda_harmonic_closed_form(double beta, std::uint32_t p) {
    const double logp = log_p(p);
    if (!(beta >= 1.0) || std::isinf(beta)) throw DomainError("beta must be a finite value >= 1");
    if (beta == 1.0) return logp;
    // 1/beta = log a / (a - 1) with a = lambda / log p, i.e. a - beta log a = 1,
    // whose nontrivial root is a = -beta W_{-1}(-e^{-1/beta} / beta).
    const double x = -std::exp(-1.0 / beta) / beta;
    const double w = specfun::lambert_w(specfun::WBranch::MinusOne, x);
    return std::max(-beta * w * logp, logp);
}

double lambda_quadratic_closed_form(double beta, std::uint32_t p) {
    const double logp = log_p(p);
    if (!(beta >= 1.0) || std::isinf(beta)) throw DomainError("beta must be a finite value >= 1");
    return logp * (1.0 + std::sqrt(1.0 + 8.0 * beta * beta)) / 4.0;
}

SpectrumPoint dimension(double q, double beta, std::uint32_t p) {
    const double logp = log_p(p);
    if (std::isnan(q)) throw DomainError("q is NaN");
    if (!(beta >= 1.0) || std::isinf(beta)) throw DomainError("beta must be a finite value >= 1");
    const double lambda = beta == 1.0 ? logp : solve_lambda(q, beta, p);
    const double a = lambda / logp;
    const double d_digit = dimension_from_mean_digit(a, p);
    const double d_lyap = lyapunov_dimension(lambda, p);
    if (std::abs(d_digit - d_lyap) > 1e-10)
        throw ConvergenceFailure("dimension self-check failed: " + std::to_string(d_digit) +
                                 " vs " + std::to_string(d_lyap));
    return {q, beta, lambda, a, s_alpha(lambda, p), std::clamp(d_digit, 0.0, 1.0), p};
}

double haar_mean(double q, std::uint32_t p) {
    padic::require_prime(p);
    if (std::isnan(q)) throw DomainError("q is NaN");
    const double z = 1.0 / static_cast<double>(p);
    const double pm1 = static_cast<double>(p - 1);
    if (std::abs(q) < means::kGeometricThreshold)
        return std::exp(-pm1 * specfun::polylog_ds0(z).value);
    return std::pow(pm1 * specfun::polylog(-q, z).value, 1.0 / q);
}

double haar_lambda(std::uint32_t p) {
    const double logp = log_p(p);
    return static_cast<double>(p) / static_cast<double>(p - 1) * logp;
}

double geometric_example_series(double lambda, std::uint32_t p, int K) {
    const double logp = log_p(p);
    if (!(lambda > logp)) throw DomainError("the expansion needs lambda > log p");
    if (K < 1) throw DomainError("K must be positive");
    const double log_z = std::log1p(-logp / lambda);  // log(1 - log p / lambda)
    const double mlog = -log_z;

    double sum = (specfun::kEulerGamma + std::log(mlog)) / mlog;
    double power = 1.0;
    double t1 = 0.0, t2 = 0.0, t3 = 0.0;
    for (int k = 0; k < K; ++k) {
        if (k > 0) power *= log_z / k;
        const double term = specfun::zeta_prime(-static_cast<double>(k)) * power;
        sum += term;
        const double pair = std::abs(term) + std::abs(t1);
        if (k >= 6 && pair > std::abs(t2) + std::abs(t3))
            throw DivergentTail("zeta' series terms grow at k = " + std::to_string(k) +
                                "; log(1 - log p/lambda) lies outside the disc of convergence");
        if (k >= 2 && pair <= 1e-17 * std::abs(sum)) break;
        t3 = t2;
        t2 = t1;
        t1 = term;
    }
    const double za = std::exp(log_z) * (lambda / logp);  // = lambda/log p - 1
    return -sum / za;
}

std::vector<SpectrumPoint> sweep(double q, std::span<const double> betas, std::uint32_t p, Exec exec) {
    padic::require_prime(p);
    const auto n = static_cast<std::ptrdiff_t>(betas.size());
    std::vector<SpectrumPoint> out(betas.size());
    std::vector<std::exception_ptr> errors(betas.size());
    auto body = [&](std::ptrdiff_t i) {
        try {
            out[i] = dimension(q, betas[i], p);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
    } else {
        for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

}  // namespace smf::spectrum
