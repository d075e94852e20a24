#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qpcert/form_class.hpp"
#include "qpcert/gtrs.hpp"
#include "qpcert/problem.hpp"
#include "qpcert/recession.hpp"

namespace qpcert {

struct BoundednessVerdict {
  enum class Status { BOUNDED, UNBOUNDED, UNKNOWN };
  Status status = Status::UNKNOWN;
  double lower_bound = 0.0;           // BOUNDED
  std::optional<double> multiplier;   // BOUNDED via the single-constraint dual
  Vector witness_ray;                 // UNBOUNDED: re-verifiable descent ray
  Vector base_point;
  double best_probe = 0.0;            // UNKNOWN: best objective value probed
  std::vector<std::string> notes;
};

const char* to_string(BoundednessVerdict::Status s);

/// Strictly feasible point of constraint i, from the exact minimization of
/// the convex g_i. Throws NoSlaterPoint when min g_i >= -1e-8.
Vector slater_point(const Problem& p, std::size_t i);

struct AnalyzeOptions {
  std::uint64_t seed = kSearchSeed;
  double report_tol = kDefaultReportTol;
  double oracle_radius = 8.0;
  double oracle_step = 0.8;
};

BoundednessVerdict check_bounded_below(const Problem& p,
                                       const AnalyzeOptions& opts = {});

struct Certificate {
  enum class Exists { YES, NO_UNBOUNDED, UNKNOWN };
  enum class Rule {
    FW1,
    SingleConstraint,
    Eaves,
    FW2,
    Corollary1,  // linear constraints only
    Corollary2,  // zero linear parts on the quadratic constraints
    Corollary3,  // trivial zero-form recession set
    Corollary4,  // unconstrained
    None,
  };
  Exists exists = Exists::UNKNOWN;
  Rule fired_rule = Rule::None;
  std::vector<std::pair<std::string, Verdict>> hypotheses;  // ordered for rendering
  std::optional<Vector> witness_point;
  std::optional<double> witness_value;
  std::vector<std::string> notes;
};

const char* to_string(Certificate::Exists e);
const char* to_string(Certificate::Rule r);
/// Display name of the rule ("Frank-Wolfe type 1", ...).
const char* rule_display_name(Certificate::Rule r);

/// Everything the reporting layer needs from one pass over a problem.
struct Analysis {
  Problem normalized;
  FormClass objective_class;
  std::vector<FormClass> constraint_classes;
  std::optional<Vector> feasible_point;
  ConeAnalysis cone;
  CondAResult cond_a;
  EavesResult eaves;
  BoundednessVerdict bounded;
  Certificate certificate;
};

/// Validates, normalizes, runs every hypothesis check, fires the rule table.
/// Throws ValidationFailure on structural defects and InfeasibleProblem when
/// no feasible point can be produced.
Analysis analyze_problem(const Problem& p, const AnalyzeOptions& opts = {});

Certificate certify_existence(const Problem& p, const AnalyzeOptions& opts = {});

}  // namespace qpcert
