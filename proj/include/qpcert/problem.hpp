#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qpcert/quadratic.hpp"
#include "qpcert/space.hpp"

namespace qpcert {

/// min objective(x) over { x : constraints[i](x) <= 0 }; every constraint
/// operator is required to be positive semidefinite, so the feasible set is
/// convex and weakly closed.
struct Problem {
  SpaceDesc space = SpaceDesc::sequence();
  QuadraticFunction objective;
  std::vector<QuadraticFunction> constraints;

  std::size_t m() const { return constraints.size(); }
};

/// Partition of constraint indices (0-based) by whether the quadratic part
/// vanishes.
struct IndexSets {
  std::vector<std::size_t> zero_op;     // T_i = 0
  std::vector<std::size_t> nonzero_op;  // complement
};

IndexSets index_sets(const Problem& p);

struct ValidationIssue {
  enum class Kind {
    Asymmetric,
    NotPsdConstraint,
    DimensionMismatch,
    NonFiniteEntry,
    BadSpace,
    ObjectiveConstant,
  };
  Kind kind;
  int constraint = -1;  // -1 = objective / problem level
  std::string message;
  double value = 0.0;   // offending eigenvalue etc., when meaningful
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
};

/// Structural checks: symmetry, psd constraints (with the offending
/// eigenvalue), dimension bounds in finite spaces, finite entries.
ValidationReport validate_problem(const Problem& p);

/// Pad every operator block (with its own tail on the new diagonal) and
/// every vector to one common head dimension. Values of all functions are
/// unchanged at every point. Throws InvalidDimension when data exceeds a
/// finite space bound, PadOverflow past the cap.
Problem normalize_problem(const Problem& p, std::size_t cap = 4096);

/// Common head dimension of a normalized problem.
std::size_t head_dim(const Problem& p);

/// max_i g_i(x); -inf when there are no constraints.
double max_constraint_value(const Problem& p, const Vector& x);
bool is_feasible(const Problem& p, const Vector& x, double tol);

/// Constraint is identically satisfiable noise: zero operator, zero linear
/// part, nonpositive constant. Dropping it never changes the feasible set.
bool is_vacuous_constraint(const QuadraticFunction& g);

/// Copy of p without vacuous constraints.
Problem drop_vacuous_constraints(const Problem& p);

}  // namespace qpcert
