#include "smf/validation.hpp"

#include "smf/errors.hpp"
#include "smf/montecarlo.hpp"
#include "smf/padic.hpp"
#include "smf/schneider_map.hpp"
#include "smf/specfun.hpp"
#include "smf/spectrum.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <initializer_list>
#include <limits>
#include <sstream>

namespace smf::validation {

namespace {

constexpr std::uint32_t kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41,
                                     43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
constexpr double kQGrid[] = {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 3.0};
constexpr double kBetaGrid[] = {1.1, 2.0, 5.0, 20.0};

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

// Runs body(result) under a stopwatch and decides pass/fail from the
// recorded worst error and the time limit. Any library error fails the check.
CheckResult timed(int id, std::string name, double tolerance, double limit,
                  const std::function<void(CheckResult&)>& body) {
    CheckResult r;
    r.id = id;
    r.name = std::move(name);
    r.tolerance = tolerance;
    r.time_limit = limit;
    const auto t0 = std::chrono::steady_clock::now();
    bool threw = false;
    try {
        body(r);
    } catch (const std::exception& e) {
        threw = true;
        r.detail += (r.detail.empty() ? "" : "; ") + std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.passed = !threw && std::isfinite(r.worst) && r.worst <= r.tolerance && r.seconds <= r.time_limit;
    return r;
}

void track(CheckResult& r, double err, const std::string& where) {
    if (!(err <= r.worst)) {  // also catches NaN
        r.worst = std::isnan(err) ? std::numeric_limits<double>::infinity() : err;
        r.detail = "worst at " + where;
    }
}

}  // namespace

CheckResult check_haar_consistency() {
    return timed(1, "haar_consistency", kHaarDimensionTol, 5.0, [](CheckResult& r) {
        for (std::uint32_t p : {2u, 3u, 5u, 7u})
            for (double q : {-1.0, 0.0, 1.0, 2.0}) {
                const double beta = spectrum::haar_mean(q, p);
                const double d = spectrum::dimension(q, beta, p).dimension;
                track(r, std::abs(d - 1.0), "q=" + fmt(q) + " p=" + std::to_string(p));
            }
    });
}

CheckResult check_legendre_oracle() {
    return timed(2, "legendre_oracle", kLegendreTol, 10.0, [](CheckResult& r) {
        constexpr int n = 200;
        for (std::uint32_t p : {2u, 3u, 5u, 101u}) {
            const double lo = 1.001 * std::log(static_cast<double>(p)), hi = 1e3;
            for (int i = 0; i < n; ++i) {
                const double lambda = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
                const double err = std::abs(spectrum::lyapunov_dimension(lambda, p) -
                                            spectrum::legendre_oracle(lambda, p));
                track(r, err, "lambda=" + fmt(lambda) + " p=" + std::to_string(p));
            }
        }
    });
}

CheckResult check_closed_forms() {
    return timed(3, "closed_forms", kClosedFormTol, 5.0, [](CheckResult& r) {
        for (std::uint32_t p : {2u, 3u, 5u})
            for (double beta : kBetaGrid) {
                const std::string at = "beta=" + fmt(beta) + " p=" + std::to_string(p);
                track(r,
                      rel_err(spectrum::solve_lambda(-1.0, beta, p),
                              spectrum::lambda_harmonic_closed_form(beta, p)),
                      "q=-1 " + at);
                track(r,
                      rel_err(spectrum::solve_lambda(2.0, beta, p),
                              spectrum::lambda_quadratic_closed_form(beta, p)),
                      "q=2 " + at);
            }
    });
}

CheckResult check_haar_remark_values() {
    return timed(4, "haar_remark_values", kHaarRemarkTol, 2.0, [](CheckResult& r) {
        for (std::uint32_t p : kPrimes) {
            const double pd = p, lambda = spectrum::haar_lambda(p);
            const double b2 = spectrum::mean_at_lambda(2.0, lambda, p);
            const double bm1 = spectrum::mean_at_lambda(-1.0, lambda, p);
            track(r, rel_err(b2 * b2, pd * (pd + 1.0) / ((pd - 1.0) * (pd - 1.0))),
                  "beta_2 p=" + std::to_string(p));
            track(r, rel_err(1.0 / bm1, (pd - 1.0) * std::log(pd / (pd - 1.0))),
                  "beta_-1 p=" + std::to_string(p));
        }
    });
}

// Four sub-checks with different tolerances; worst is reported as the largest
// error/tolerance ratio, so the pass threshold is 1.
CheckResult check_polylog_stack() {
    return timed(5, "polylog_stack", 1.0, 10.0, [](CheckResult& r) {
        std::ostringstream sub;
        double eul = 0.0;
        for (int m : {1, 2, 3})
            for (int i = 1; i <= 9; ++i) {
                const double z = 0.1 * i;
                const double e = rel_err(specfun::polylog_eulerian(m, z).value,
                                         specfun::polylog_series(-m, z).value);
                eul = std::max(eul, e);
                track(r, e / kEulerianTol, "eulerian s=" + std::to_string(-m) + " z=" + fmt(z));
            }

        double expn = 0.0;
        for (double s : {-1.5, -0.5, 0.5})
            for (double z : {0.95, 0.96, 0.97, 0.98, 0.99, 0.995, 0.998, 0.999}) {
                const double e = rel_err(specfun::polylog_expansion(s, z).value,
                                         specfun::polylog_series(s, z).value);
                expn = std::max(expn, e);
                track(r, e / kExpansionTol, "expansion s=" + fmt(s) + " z=" + fmt(z));
            }

        // Limits of (1/lambda) Li_s(z~) with z~ = (lambda - log p)/lambda.
        bool trends = true;
        for (std::uint32_t p : {2u, 3u, 5u}) {
            const double logp = std::log(static_cast<double>(p));
            auto scaled = [&](double s, double lambda) {
                return specfun::polylog_at_log(s, std::log1p(-logp / lambda)).value / lambda;
            };
            const double lams[] = {1e1, 1e2, 1e3, 1e4};
            double prev2 = INFINITY, prev0 = -INFINITY;
            for (double lam : lams) {
                const double v2 = scaled(2.0, lam), v0 = scaled(0.0, lam);
                trends = trends && v2 > 0.0 && v2 < prev2 && v0 > prev0 && v0 < 1.0 / logp;
                prev2 = v2;
                prev0 = v0;
            }
            trends = trends && rel_err(prev0, 1.0 / logp) < 0.01;
            trends = trends && scaled(-1.0, 1e4) > scaled(-1.0, 1e3);
        }
        if (!trends) track(r, INFINITY, "limit trends");

        // Envelope: |(1/lambda) dLi(z~) - (gamma + log log p - log lambda)/log p|
        // = C(lambda) log(lambda)/lambda with C bounded and slowly varying.
        double c_min = INFINITY, c_max = 0.0, drift = 1.0;
        for (std::uint32_t p : {2u, 3u, 5u}) {
            const double logp = std::log(static_cast<double>(p));
            double prev = NAN;
            for (int k = 2; k <= 6; ++k) {
                const double lam = std::pow(10.0, k);
                const double d = specfun::polylog_ds0_at_log(std::log1p(-logp / lam)).value / lam;
                const double lead = (specfun::kEulerGamma + std::log(logp) - std::log(lam)) / logp;
                const double c = std::abs(d - lead) * lam / std::log(lam);
                c_min = std::min(c_min, c);
                c_max = std::max(c_max, c);
                if (!std::isnan(prev)) drift = std::max({drift, c / prev, prev / c});
                prev = c;
            }
        }
        track(r, std::max(drift / kEnvelopeRatio, c_max / kEnvelopeMaxC), "envelope");

        sub << "eulerian=" << fmt(eul) << " expansion=" << fmt(expn)
            << " trends=" << (trends ? "ok" : "FAIL") << " C in [" << fmt(c_min) << ", "
            << fmt(c_max) << "] decade drift=" << fmt(drift);
        r.detail += "; " + sub.str();
    });
}

// Normalised like the polylog check: worst is max(z/3, z_modes/4).
CheckResult check_monte_carlo() {
    return timed(6, "monte_carlo", 1.0, 120.0, [](CheckResult& r) {
        double z_haar = 0.0, z_modes = 0.0;
        for (std::uint32_t p : {2u, 3u, 5u})
            for (double q : {-1.0, 0.0, 1.0, 2.0}) {
                const std::string at = "q=" + fmt(q) + " p=" + std::to_string(p);
                const auto dm = mc::estimate_mean(q, p, mc::Mode::DigitModel, 10000, 1000);
                const auto orb = mc::estimate_mean(q, p, mc::Mode::Orbit, 1000, 200, mc::kDefaultSeed, 512);
                const double z1 = std::abs(dm.mean - spectrum::haar_mean(q, p)) / dm.std_error;
                const double z2 = std::abs(orb.mean - dm.mean) /
                                  std::hypot(orb.std_error, dm.std_error);
                z_haar = std::max(z_haar, z1);
                z_modes = std::max(z_modes, z2);
                track(r, z1 / kMonteCarloSigma, "digit model " + at);
                track(r, z2 / kModeAgreementSigma, "orbit vs digit model " + at);
            }
        r.detail += "; max z vs haar=" + fmt(z_haar) + " max z orbit/model=" + fmt(z_modes);
    });
}

CheckResult check_round_trips() {
    return timed(7, "round_trips", 1.0, 30.0, [](CheckResult& r) {
        // Part 1: digits then reconstruct, compared modulo p^m.
        constexpr std::uint32_t primes[] = {2, 3, 5, 7};
        int bad = 0, min_m = 1 << 30;
        for (int i = 0; i < 200; ++i) {
            const std::uint32_t p = primes[i % 4];
            auto rng = mc::sample_rng(7, static_cast<std::uint64_t>(i));
            const auto x = mc::sample_haar_point(p, 64, rng);
            const auto seq = cf::digits(x, 16);
            if (!seq.tail) {
                ++bad;
                continue;
            }
            const auto y = cf::reconstruct(seq, *seq.tail, 64);
            const int m = std::min(x.absolute_precision(), y.absolute_precision());
            min_m = std::min(min_m, m);
            if (m < 8 || x.residue(m) != y.residue(m)) ++bad;
        }
        if (bad) track(r, INFINITY, std::to_string(bad) + " of 200 digit round trips");

        // Part 2: solver inversion; normalised by kInversionTol.
        double worst = 0.0;
        for (std::uint32_t p : {2u, 3u, 5u})
            for (double q : kQGrid)
                for (double beta : kBetaGrid) {
                    const double lambda = spectrum::solve_lambda(q, beta, p);
                    const double e = rel_err(spectrum::mean_at_lambda(q, lambda, p), beta);
                    worst = std::max(worst, e);
                    track(r, e / kInversionTol,
                          "inversion q=" + fmt(q) + " beta=" + fmt(beta) + " p=" + std::to_string(p));
                }
        r.detail += "; digit round trips ok=" + std::to_string(200 - bad) +
                    " min m=" + std::to_string(min_m) + " inversion worst=" + fmt(worst);
    });
}

CheckResult check_boundary() {
    return timed(8, "boundary", kBoundaryTol, 1.0, [](CheckResult& r) {
        for (std::uint32_t p : {2u, 3u, 5u}) {
            const double want = std::log(p - 1.0) / std::log(static_cast<double>(p));
            for (double q : kQGrid)
                track(r, std::abs(spectrum::dimension(q, 1.0, p).dimension - want),
                      "q=" + fmt(q) + " p=" + std::to_string(p));
        }
    });
}

CheckResult check_monotonicity() {
    return timed(0, "beta_monotonicity", 0.0, 30.0, [](CheckResult& r) {
        constexpr int n = 60;
        int violations = 0;
        for (std::uint32_t p : {2u, 3u, 5u}) {
            const double logp = std::log(static_cast<double>(p));
            for (double q : kQGrid) {
                double prev = 1.0;
                for (int i = 0; i < n; ++i) {
                    const double lambda = 1.001 * logp * std::pow(1e3 / 1.001, i / (n - 1.0));
                    const double beta = spectrum::mean_at_lambda(q, lambda, p);
                    if (!(beta > prev)) {
                        ++violations;
                        r.detail = "non-increasing at q=" + fmt(q) + " lambda=" + fmt(lambda) +
                                   " p=" + std::to_string(p);
                    }
                    prev = beta;
                }
            }
        }
        r.worst = violations;
        if (!violations) r.detail = "beta(lambda) strictly increasing on the audit grid";
    });
}

std::vector<CheckResult> run_acceptance() {
    return {check_haar_consistency(), check_legendre_oracle(), check_closed_forms(),
            check_haar_remark_values(), check_polylog_stack(),  check_monte_carlo(),
            check_round_trips(),        check_boundary()};
}

std::vector<CheckResult> run_all() {
    auto all = run_acceptance();
    all.push_back(check_monotonicity());
    return all;
}

std::string format_line(const CheckResult& r) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s  [%d] %-18s worst=%-10.3g tol=%-8.3g time=%.2fs/%gs",
                  r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.worst, r.tolerance, r.seconds,
                  r.time_limit);
    std::string line = buf;
    if (!r.detail.empty()) line += "  " + r.detail;
    return line;
}

}  // namespace smf::validation
