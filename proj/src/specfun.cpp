#include "smf/specfun.hpp"

#include "smf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <vector>

namespace smf::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
// Series and expansions stop once the remaining tail is below this fraction
// of the running sum.
constexpr double kTailFraction = 1e-17;
// Direct series give up (PoleError) past this many terms.
constexpr double kMaxSeriesTerms = 2e8;

bool is_integer(double s) { return std::isfinite(s) && s == std::floor(s); }

// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Eulerian rows, computed once and shared by all readers. Rows live in a
// deque so references stay valid while later rows are appended.
class EulerianTable {
public:
    const std::vector<mpz_class>& row(int m) {
        {
            std::shared_lock lock(mutex_);
            if (m < static_cast<int>(rows_.size())) return rows_[m];
        }
        std::unique_lock lock(mutex_);
        if (rows_.empty()) rows_.push_back({mpz_class(1)});
        while (static_cast<int>(rows_.size()) <= m) {
            const int n = static_cast<int>(rows_.size());
            const auto& prev = rows_.back();
            // A(n,k) = (k+1) A(n-1,k) + (n-k) A(n-1,k-1), k = 0..n-1
            std::vector<mpz_class> next(static_cast<std::size_t>(n));
            for (int k = 0; k < n; ++k) {
                mpz_class v = 0;
                if (k < static_cast<int>(prev.size())) v += (k + 1) * prev[k];
                if (k >= 1 && k - 1 < static_cast<int>(prev.size())) v += (n - k) * prev[k - 1];
                next[k] = v;
            }
            rows_.push_back(std::move(next));
        }
        return rows_[m];
    }

private:
    std::shared_mutex mutex_;
    std::deque<std::vector<mpz_class>> rows_;
};

EulerianTable& eulerian_table() {
    static EulerianTable table;
    return table;
}

// sin(pi s / 2) with exact argument reduction, so that zeros at even
// integers come out as exact zeros.
double sin_half_pi(double s) {
    const double r = std::remainder(s, 4.0);  // exact, in [-2, 2]
    if (r > 1.0) return std::sin(kPi * (2.0 - r) / 2);
    if (r < -1.0) return -std::sin(kPi * (2.0 + r) / 2);
    return std::sin(kPi * r / 2);
}

// Dirichlet eta by Cohen-Rodriguez Villegas-Zagier acceleration of the
// alternating series sum (-1)^k (k+1)^-s; valid for s > 0.
double eta(double s) {
    constexpr int n = 30;
    double d = std::pow(3.0 + std::sqrt(8.0), n);
    d = (d + 1.0 / d) / 2.0;
    double b = -1.0;
    double c = -d;
    double sum = 0.0;
    for (int k = 0; k < n; ++k) {
        c = b - c;
        sum += c * std::pow(static_cast<double>(k + 1), -s);
        b = static_cast<double>(k + n) * static_cast<double>(k - n) * b /
            ((k + 0.5) * (k + 1.0));
    }
    return sum / d;
}

// zeta(s) for s > 0, given 1 - s separately so that it stays exact near the pole.
double zeta_positive(double s, double one_minus_s) {
    return eta(s) / (-std::expm1(one_minus_s * std::log(2.0)));
}

// zeta(s) for s < 0 through the functional equation
// zeta(s) = 2^s pi^(s-1) sin(pi s/2) Gamma(1-s) zeta(1-s).
double zeta_negative(double s) {
    const double r = sin_half_pi(s);
    if (r == 0.0) return 0.0;
    const double t = 1.0 - s;
    const double zt = zeta_positive(t, s);
    if (t <= 100.0)
        return std::pow(2.0, s) * std::pow(kPi, s - 1.0) * r * std::tgamma(t) * zt;
    const double log_abs = s * std::log(2.0) + (s - 1.0) * std::log(kPi) + std::lgamma(t) +
                           std::log(std::abs(r)) + std::log(zt);
    return std::copysign(std::exp(log_abs), r);
}

// zeta'(-k), k = 0..kMaxExpansionTerms, built once.
const std::vector<double>& zeta_prime_at_negative_integers() {
    static const std::vector<double> table = [] {
        std::vector<double> t(kMaxExpansionTerms + 1);
        for (int k = 0; k <= kMaxExpansionTerms; ++k) t[k] = zeta_prime(-static_cast<double>(k));
        return t;
    }();
    return table;
}

void check_unit_interval(double z, const char* what) {
    if (!(z >= 0.0 && z < 1.0))
        throw DomainError(std::string(what) + " needs 0 <= z < 1, got " + std::to_string(z));
}

}  // namespace

const char* to_string(PolylogMethod m) {
    switch (m) {
        case PolylogMethod::DirectSeries: return "direct_series";
        case PolylogMethod::EulerianClosedForm: return "eulerian_closed_form";
        case PolylogMethod::GammaZetaExpansion: return "gamma_zeta_expansion";
        case PolylogMethod::Logarithm: return "logarithm";
        case PolylogMethod::ZetaValue: return "zeta_value";
    }
    return "?";
}

mpz_class eulerian(int m, int k) {
    if (m < 0 || k < 0) return 0;
    if (m == 0) return k == 0 ? 1 : 0;
    if (k > m - 1) return 0;
    return eulerian_table().row(m)[k];
}

namespace {

// A polylog argument carried three ways so that z close to 1 keeps full
// relative precision in log z and 1 - z.
struct Arg {
    double z;
    double log_z;
    double one_minus_z;
};

Arg arg_from_z(double z) { return {z, std::log(z), 1.0 - z}; }

Arg arg_from_log(double log_z) { return {std::exp(log_z), log_z, -std::expm1(log_z)}; }

void check_series_reach(const Arg& x) {
    if (-std::log(kTailFraction) / -x.log_z > kMaxSeriesTerms)
        throw PoleError("z = 1 - " + std::to_string(x.one_minus_z) +
                        " is too close to 1 for the direct series");
}

PolylogResult series(double s, const Arg& x) {
    check_series_reach(x);
    CompensatedSum sum;
    double term = x.z;  // n = 1
    for (double n = 1.0;; n += 1.0) {
        sum.add(term);
        const double next = std::exp((n + 1.0) * x.log_z - s * std::log(n + 1.0));
        // From n+1 on the term ratio is at most z (1 + 1/(n+1))^(-s) when s < 0, z otherwise.
        const double ratio = s >= 0.0 ? x.z : x.z * std::pow(1.0 + 1.0 / (n + 1.0), -s);
        if (ratio < 1.0) {
            const double tail = s >= 0.0 ? next / x.one_minus_z : next / (1.0 - ratio);
            if (tail <= kTailFraction * std::abs(sum.value()) || tail == 0.0)
                return {sum.value(), PolylogMethod::DirectSeries,
                        tail + 4.0 * kEps * std::abs(sum.value())};
        }
        if (n > kMaxSeriesTerms) throw ConvergenceFailure("polylog series did not converge");
        term = next;
    }
}

PolylogResult eulerian_form(int m, const Arg& x) {
    if (m < 0) throw DomainError("Eulerian closed form needs m >= 0");
    if (m > 150) throw DomainError("Eulerian closed form limited to m <= 150");
    double poly = 1.0;
    if (m > 0) {
        poly = 0.0;
        const auto& row = eulerian_table().row(m);
        for (auto it = row.rbegin(); it != row.rend(); ++it) poly = poly * x.z + it->get_d();
    }
    const double value = x.z * poly / std::pow(x.one_minus_z, m + 1);
    return {value, PolylogMethod::EulerianClosedForm, 4.0 * (m + 2) * kEps * std::abs(value)};
}

// Sums lead + sum_k coeff(k) (log z)^k / k! until two consecutive terms are
// negligible; throws DivergentTail once pairs of terms start growing.
template <class Coeff>
PolylogResult log_expansion(double lead, double log_z, int max_terms, Coeff coeff,
                            double coeff_rel_error) {
    CompensatedSum sum;
    sum.add(lead);
    double power = 1.0;  // (log z)^k / k!
    double t1 = 0.0, t2 = 0.0, t3 = 0.0;
    for (int k = 0; k < max_terms; ++k) {
        if (k > 0) power *= log_z / k;
        const double term = coeff(k) * power;
        sum.add(term);
        const double pair = std::abs(term) + std::abs(t1);
        if (k >= 2 && pair <= kTailFraction * std::abs(sum.value()))
            return {sum.value(), PolylogMethod::GammaZetaExpansion,
                    pair + 8.0 * kEps * std::abs(sum.value()) + coeff_rel_error * std::abs(t2)};
        if (k >= 6 && pair > std::abs(t2) + std::abs(t3))
            throw DivergentTail("expansion terms stopped decreasing at k = " + std::to_string(k));
        t3 = t2;
        t2 = t1;
        t1 = term;
    }
    throw DivergentTail("expansion not converged within " + std::to_string(max_terms) + " terms");
}

PolylogResult expansion(double s, const Arg& x, int max_terms) {
    if (is_integer(s)) throw PoleError("Gamma(1-s) is singular at integer s");
    const double lead = std::tgamma(1.0 - s) * std::pow(-x.log_z, s - 1.0);
    return log_expansion(lead, x.log_z, max_terms, [s](int k) { return zeta(s - k); }, 1e-14);
}

PolylogResult dispatch(double s, const Arg& x) {
    if (x.z == 0.0) return {0.0, PolylogMethod::DirectSeries, 0.0};
    if (is_integer(s)) {
        if (s <= 0.0) return eulerian_form(static_cast<int>(-s), x);
        if (s == 1.0) {
            const double v = -std::log(x.one_minus_z);
            return {v, PolylogMethod::Logarithm, 2.0 * kEps * std::abs(v)};
        }
        return series(s, x);
    }
    if (x.z <= kSeriesSwitch || s > 1.0) return series(s, x);
    return expansion(s, x, kMaxExpansionTerms);
}

PolylogResult ds0_series(const Arg& x) {
    check_series_reach(x);
    const double denom = x.one_minus_z * x.one_minus_z;
    CompensatedSum sum;
    for (double n = 2.0;; n += 1.0) {
        sum.add(-std::exp(n * x.log_z) * std::log(n));
        const double tail = std::exp((n + 1.0) * x.log_z) * std::log(n + 1.0) / denom;
        if (tail <= kTailFraction * std::abs(sum.value()) || tail == 0.0)
            return {sum.value(), PolylogMethod::DirectSeries, tail + 4.0 * kEps * std::abs(sum.value())};
        if (n > kMaxSeriesTerms) throw ConvergenceFailure("derivative series did not converge");
    }
}

PolylogResult ds0_expansion(const Arg& x, int max_terms) {
    const auto& dz = zeta_prime_at_negative_integers();
    max_terms = std::min(max_terms, static_cast<int>(dz.size()));
    const double mlog = -x.log_z;
    const double lead = (kEulerGamma + std::log(mlog)) / mlog;
    // zeta' comes from a central difference, good to about 1e-10 relative.
    return log_expansion(lead, x.log_z, max_terms, [&dz](int k) { return dz[k]; }, 1e-10);
}

PolylogResult ds0_dispatch(const Arg& x) {
    if (x.z == 0.0) return {0.0, PolylogMethod::DirectSeries, 0.0};
    if (x.z <= kSeriesSwitch) return ds0_series(x);
    return ds0_expansion(x, kMaxExpansionTerms);
}

void check_log_arg(double log_z) {
    if (!(log_z < 0.0)) throw DomainError("log z must be negative (0 < z < 1)");
}

}  // namespace

PolylogResult polylog_series(double s, double z) {
    check_unit_interval(z, "polylog series");
    if (z == 0.0) return {0.0, PolylogMethod::DirectSeries, 0.0};
    return series(s, arg_from_z(z));
}

PolylogResult polylog_eulerian(int m, double z) {
    check_unit_interval(z, "Eulerian closed form");
    if (z == 0.0) return {0.0, PolylogMethod::EulerianClosedForm, 0.0};
    return eulerian_form(m, arg_from_z(z));
}

PolylogResult polylog_expansion(double s, double z, int max_terms) {
    if (!(z > 0.0 && z < 1.0)) throw DomainError("Gamma/zeta expansion needs 0 < z < 1");
    return expansion(s, arg_from_z(z), max_terms);
}

PolylogResult polylog(double s, double z) {
    if (std::isnan(s) || std::isnan(z)) throw DomainError("NaN argument");
    if (z == 1.0) {
        if (s > 1.0) return {zeta(s), PolylogMethod::ZetaValue, 8.0 * kEps * zeta(s)};
        throw DomainError("Li_s(1) diverges for s <= 1");
    }
    check_unit_interval(z, "polylog");
    if (z == 0.0) return {0.0, PolylogMethod::DirectSeries, 0.0};
    return dispatch(s, arg_from_z(z));
}

PolylogResult polylog_at_log(double s, double log_z) {
    if (std::isnan(s)) throw DomainError("NaN argument");
    check_log_arg(log_z);
    return dispatch(s, arg_from_log(log_z));
}

PolylogResult polylog_ds0_series(double z) {
    check_unit_interval(z, "polylog derivative series");
    if (z == 0.0) return {0.0, PolylogMethod::DirectSeries, 0.0};
    return ds0_series(arg_from_z(z));
}

PolylogResult polylog_ds0_expansion(double z, int max_terms) {
    if (!(z > 0.0 && z < 1.0)) throw DomainError("Gamma/zeta expansion needs 0 < z < 1");
    return ds0_expansion(arg_from_z(z), max_terms);
}

PolylogResult polylog_ds0(double z) {
    if (std::isnan(z)) throw DomainError("NaN argument");
    check_unit_interval(z, "polylog derivative");
    if (z == 0.0) return {0.0, PolylogMethod::DirectSeries, 0.0};
    return ds0_dispatch(arg_from_z(z));
}

PolylogResult polylog_ds0_at_log(double log_z) {
    check_log_arg(log_z);
    return ds0_dispatch(arg_from_log(log_z));
}

double zeta(double s) {
    if (std::isnan(s)) throw DomainError("NaN argument");
    if (s == 1.0) throw PoleError("zeta has a pole at s = 1");
    if (s == 0.0) return -0.5;
    if (s > 0.0) return zeta_positive(s, 1.0 - s);
    return zeta_negative(s);
}

double zeta_prime(double s) {
    if (s == 0.0) return -0.5 * std::log(2.0 * kPi);
    if (std::abs(s - 1.0) <= 2.0 * kZetaPrimeStep) throw PoleError("zeta' too close to s = 1");
    const double h = kZetaPrimeStep;
    return (zeta(s + h) - zeta(s - h)) / (2.0 * h);
}

double gamma(double x) {
    if (!(x > 0.0)) throw DomainError("gamma() is defined here for x > 0 only");
    return std::tgamma(x);
}

double lambert_w(WBranch branch, double x) {
    constexpr double inv_e = 0.36787944117144232159552377016146087;
    constexpr double e = 2.71828182845904523536028747135266250;
    if (std::isnan(x)) throw DomainError("NaN argument");
    // Allow a few ulps of rounding below the branch point.
    if (x < -inv_e) {
        if (x < -inv_e * (1.0 + 4.0 * kEps)) throw DomainError("Lambert W needs x >= -1/e");
        return -1.0;
    }
    if (x == -inv_e) return -1.0;
    if (branch == WBranch::MinusOne && x >= 0.0) throw DomainError("W_-1 needs -1/e <= x < 0");
    if (branch == WBranch::Principal && x == 0.0) return 0.0;
    if (std::isinf(x)) return x;

    double w;
    const double q2 = 2.0 * std::fma(e, x, 1.0);
    if (branch == WBranch::Principal) {
        if (x < -0.32) {
            const double q = std::sqrt(std::max(q2, 0.0));
            w = -1.0 + q - q * q / 3.0 + 11.0 * q * q * q / 72.0;
        } else if (x < 3.0) {
            w = std::log1p(x) * (1.0 - std::log1p(std::log1p(x)) / (2.0 + std::log1p(x)));
        } else {
            const double l1 = std::log(x), l2 = std::log(l1);
            w = l1 - l2 + l2 / l1;
        }
    } else {
        if (x < -0.25) {
            const double q = -std::sqrt(std::max(q2, 0.0));
            w = -1.0 + q - q * q / 3.0 + 11.0 * q * q * q / 72.0;
        } else {
            const double l1 = std::log(-x), l2 = std::log(-l1);
            w = l1 - l2 + l2 / l1;
        }
    }

    for (int it = 0; it < 100; ++it) {
        const double ew = std::exp(w);
        const double f = w * ew - x;
        if (f == 0.0) break;
        const double wp1 = w + 1.0;
        if (wp1 == 0.0) break;
        const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        w -= step;
        if (std::abs(step) <= 4.0 * kEps * (1.0 + std::abs(w))) break;
    }
    return branch == WBranch::Principal ? std::max(w, -1.0) : std::min(w, -1.0);
}

}  // namespace smf::specfun
