#pragma once

#include <string>
#include <vector>

namespace smf::validation {

/// Outcome of one end-to-end check. `worst` is the largest observed error in
/// the units of `tolerance` (absolute, relative or z-score, per check).
struct CheckResult {
    int id = 0;  ///< 1..8 for the acceptance criteria, 0 for extra audits
    std::string name;
    bool passed = false;
    double worst = 0.0;
    double tolerance = 0.0;
    double seconds = 0.0;
    double time_limit = 0.0;
    std::string detail;
};

// Pinned tolerances.
inline constexpr double kHaarDimensionTol = 1e-8;
inline constexpr double kLegendreTol = 1e-8;
inline constexpr double kClosedFormTol = 1e-9;
inline constexpr double kHaarRemarkTol = 1e-10;
inline constexpr double kEulerianTol = 1e-10;
inline constexpr double kExpansionTol = 1e-8;
inline constexpr double kEnvelopeRatio = 1.5;  ///< adjacent-decade drift of the fitted constant
inline constexpr double kEnvelopeMaxC = 1.0;
inline constexpr double kMonteCarloSigma = 3.0;
inline constexpr double kModeAgreementSigma = 4.0;
inline constexpr double kInversionTol = 1e-9;
inline constexpr double kBoundaryTol = 1e-12;

CheckResult check_haar_consistency();
CheckResult check_legendre_oracle();
CheckResult check_closed_forms();
CheckResult check_haar_remark_values();
CheckResult check_polylog_stack();
CheckResult check_monte_carlo();
CheckResult check_round_trips();
CheckResult check_boundary();

/// Grid audit that beta(lambda) increases strictly, which the root solver assumes.
CheckResult check_monotonicity();

/// The eight acceptance criteria, in order.
std::vector<CheckResult> run_acceptance();

/// Acceptance criteria plus the extra audits.
std::vector<CheckResult> run_all();

/// "PASS  1 haar_consistency  worst=... tol=... time=...s (limit ...s)"
std::string format_line(const CheckResult& r);

}  // namespace smf::validation
