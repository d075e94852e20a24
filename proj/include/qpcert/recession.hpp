#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qpcert/constants.hpp"
#include "qpcert/matrix.hpp"
#include "qpcert/problem.hpp"

namespace qpcert {

/// Recession cone of the feasible set: directions v with T_i v = 0 and
/// <c_i, v> <= 0 for every constraint. The head part lives in the span of
/// the columns of `basis`; coordinates beyond head_dim are free exactly
/// when every constraint operator has zero tail.
struct RecessionCone {
  std::size_t head_dim = 0;  // K
  Matrix basis;              // K x d, orthonormal columns spanning the common kernel
  Matrix ineq;               // m x d, row i = <c_i, basis * .>
  bool tail_free = true;

  std::size_t span_dim() const { return basis.cols(); }
};

/// Requires a normalized problem (common head dimension). The feasible set
/// is assumed nonempty; the formula does not check that.
RecessionCone recession_cone(const Problem& p);

bool membership(const RecessionCone& cone, const Vector& v,
                double tol = kMembershipTol);

/// Recession directions on which the objective form vanishes, reduced to
/// cone coordinates. When the cone has free tail coordinates the objective
/// tail joins the classification: a head-only verdict would miss sign
/// cancellation between head and tail directions.
struct ZeroFormSet {
  enum class Classification { PsdOnSpan, NsdOnSpan, Indefinite };
  Matrix reduced_form;              // Q_N = V^T B V, d x d
  Classification classification = Classification::PsdOnSpan;
  Matrix zero_subspace_basis;       // d x z, ker(Q_N); meaningful for Psd/Nsd
  bool tail_in_zero_set = false;    // tail_free and objective tail == 0
};

ZeroFormSet zero_form_set(const RecessionCone& cone, const Operator& t);

struct Verdict {
  enum class Status { HOLDS, VIOLATED, UNKNOWN };
  Status status = Status::UNKNOWN;
  std::optional<Vector> witness;       // VIOLATED: re-checkable by evaluation
  std::optional<Vector> witness_point; // second witness component when a pair is needed
  std::vector<std::string> notes;
};

const char* to_string(Verdict::Status s);

struct ConeAnalysis {
  RecessionCone cone;
  ZeroFormSet zero_set;
};

ConeAnalysis analyze_cone(const Problem& p_normalized);

/// Rays (ambient head vectors) conically generating the head part of the
/// zero-form set; `complete` marks whether the listed rays provably
/// generate all of it.
struct GeneratorSet {
  std::vector<Vector> rays;
  bool complete = false;
};

GeneratorSet zero_set_generators(const ConeAnalysis& ca);

/// Deterministic rays of the cone for sampling-style checks (LP vertices
/// for seeded objectives plus filtered basis directions).
std::vector<Vector> sample_cone_rays(const RecessionCone& cone, std::size_t count,
                                     std::uint64_t seed);

/// Which shortcut settled Condition A, when one did.
enum class CondAShortcut { None, NoQuadraticConstraints, ZeroLinearOnI1, TrivialZeroSet };

struct CondAResult {
  Verdict verdict;
  CondAShortcut shortcut = CondAShortcut::None;
  int violated_constraint = -1;  // 0-based, when VIOLATED
};

/// Every zero-form recession direction must be orthogonal to the linear
/// parts of the genuinely quadratic constraints. Exact via two small linear
/// programs per constraint when the reduced form is semidefinite on the
/// span; seeded refutation search with UNKNOWN fallback otherwise.
CondAResult check_condition_A(const Problem& p, const ConeAnalysis& ca,
                              std::uint64_t seed = kSearchSeed);
CondAResult check_condition_A(const Problem& p);

struct EavesResult {
  Verdict cond_ii;   // v in cone => <v, T v> >= 0
  Verdict cond_iii;  // zero-form v, x feasible => <T x + c, v> >= 0
};

/// The feasible point is needed for condition (iii); throws
/// InfeasibleProblem when absent and required.
EavesResult check_eaves(const Problem& p, const ConeAnalysis& ca,
                        const std::optional<Vector>& feasible_point,
                        std::uint64_t seed = kSearchSeed);
EavesResult check_eaves(const Problem& p);

}  // namespace qpcert
