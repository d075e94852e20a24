#pragma once

namespace qpcert {

// Tolerances shared across the analysis pipeline. Values are part of the
// reporting contract; do not tune per call site.
inline constexpr double kPsdTol = 1e-9;         // eigmin >= -kPsdTol * max(1, ||B||_F)
inline constexpr double kNullspaceTol = 1e-9;   // |eig| <= kNullspaceTol * max(1, ||B||_F)
inline constexpr double kZeroBlockTol = 1e-12;  // ||B||_F below this and tail == 0 => zero operator
inline constexpr double kSymmetryRelTol = 1e-9;
inline constexpr double kEigResidualTol = 1e-10;
inline constexpr double kFeasTol = 1e-6;        // witness feasibility
inline constexpr double kConditionATol = 1e-8;
inline constexpr double kMembershipTol = 1e-8;
inline constexpr double kBoundaryTol = 1e-8;    // |g(x)| below this counts as active
inline constexpr double kDefaultReportTol = 1e-8;
inline constexpr int kPadCap = 4096;

inline constexpr unsigned long long kSearchSeed = 0x5EED;
inline constexpr int kMultiStartCount = 32;

}  // namespace qpcert
