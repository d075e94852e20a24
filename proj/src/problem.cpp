#include "qpcert/problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qpcert/constants.hpp"
#include "qpcert/eig.hpp"
#include "qpcert/errors.hpp"

namespace qpcert {

IndexSets index_sets(const Problem& p) {
  IndexSets s;
  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    if (is_zero_operator(p.constraints[i].op))
      s.zero_op.push_back(i);
    else
      s.nonzero_op.push_back(i);
  }
  return s;
}

namespace {

void check_quadratic(const QuadraticFunction& q, int idx, bool finite_space,
                     std::size_t space_dim, bool constraint, ValidationReport& rep) {
  const std::string who = idx < 0 ? "objective" : "constraint " + std::to_string(idx + 1);

  if (q.op.block.rows() != q.op.block.cols()) {
    rep.issues.push_back({ValidationIssue::Kind::DimensionMismatch, idx,
                          who + ": operator block is not square", 0.0});
    return;
  }
  if (!is_symmetric(q.op.block, kSymmetryRelTol)) {
    rep.issues.push_back({ValidationIssue::Kind::Asymmetric, idx,
                          who + ": operator block is not symmetric", 0.0});
    return;  // eigen checks assume symmetry
  }
  for (double v : q.op.block.data())
    if (!std::isfinite(v)) {
      rep.issues.push_back({ValidationIssue::Kind::NonFiniteEntry, idx,
                            who + ": operator block has a non-finite entry", v});
      return;
    }
  if (!std::isfinite(q.op.tail) || !std::isfinite(q.constant) || !all_finite(q.lin)) {
    rep.issues.push_back({ValidationIssue::Kind::NonFiniteEntry, idx,
                          who + ": non-finite scalar or vector entry", 0.0});
    return;
  }

  if (finite_space) {
    if (q.op.head_dim() > space_dim)
      rep.issues.push_back({ValidationIssue::Kind::DimensionMismatch, idx,
                            who + ": operator block exceeds the space dimension",
                            static_cast<double>(q.op.head_dim())});
    if (support_dim(q.lin) > space_dim)
      rep.issues.push_back({ValidationIssue::Kind::DimensionMismatch, idx,
                            who + ": linear part exceeds the space dimension",
                            static_cast<double>(support_dim(q.lin))});
    if (q.op.tail != 0.0)
      rep.issues.push_back({ValidationIssue::Kind::DimensionMismatch, idx,
                            who + ": tail must be 0 in a finite-dimensional space",
                            q.op.tail});
  }

  if (constraint) {
    // Convexity of the feasible set rests on psd constraint operators.
    if (q.op.head_dim() > 0) {
      const double lo = eig_min(q.op.block);
      if (lo < -kPsdTol * std::max(1.0, fro_norm(q.op.block)))
        rep.issues.push_back({ValidationIssue::Kind::NotPsdConstraint, idx,
                              who + ": operator is not positive semidefinite", lo});
    }
    if (q.op.tail < 0.0)
      rep.issues.push_back({ValidationIssue::Kind::NotPsdConstraint, idx,
                            who + ": negative tail", q.op.tail});
  }
}

}  // namespace

ValidationReport validate_problem(const Problem& p) {
  ValidationReport rep;
  if (p.space.is_finite() && p.space.dim < 1)
    rep.issues.push_back({ValidationIssue::Kind::BadSpace, -1,
                          "finite-dimensional space needs dimension >= 1", 0.0});
  if (p.objective.constant != 0.0)
    rep.issues.push_back({ValidationIssue::Kind::ObjectiveConstant, -1,
                          "objective constant must be 0", p.objective.constant});
  check_quadratic(p.objective, -1, p.space.is_finite(), p.space.dim, false, rep);
  for (std::size_t i = 0; i < p.constraints.size(); ++i)
    check_quadratic(p.constraints[i], static_cast<int>(i), p.space.is_finite(),
                    p.space.dim, true, rep);
  return rep;
}

Problem normalize_problem(const Problem& p, std::size_t cap) {
  std::size_t k = 0;
  auto absorb = [&k](const QuadraticFunction& q) {
    k = std::max(k, q.op.head_dim());
    k = std::max(k, support_dim(q.lin));
  };
  absorb(p.objective);
  for (const auto& g : p.constraints) absorb(g);

  if (p.space.is_finite()) {
    if (k > p.space.dim)
      throw InvalidDimension("normalize_problem: data of dimension " + std::to_string(k) +
                             " in a " + std::to_string(p.space.dim) + "-dimensional space");
    k = p.space.dim;
  }
  if (k > cap)
    throw PadOverflow("normalize_problem: common head dimension " + std::to_string(k) +
                      " exceeds cap " + std::to_string(cap));

  Problem out = p;
  auto pad_fn = [k](QuadraticFunction& q) {
    q.op = padded(q.op, k);
    q.lin = padded(q.lin, k);
  };
  pad_fn(out.objective);
  for (auto& g : out.constraints) pad_fn(g);
  return out;
}

std::size_t head_dim(const Problem& p) {
  std::size_t k = p.objective.op.head_dim();
  for (const auto& g : p.constraints) k = std::max(k, g.op.head_dim());
  return k;
}

double max_constraint_value(const Problem& p, const Vector& x) {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& g : p.constraints) m = std::max(m, eval_quadratic(g, x));
  return m;
}

bool is_feasible(const Problem& p, const Vector& x, double tol) {
  for (const auto& g : p.constraints)
    if (eval_quadratic(g, x) > tol) return false;
  return true;
}

bool is_vacuous_constraint(const QuadraticFunction& g) {
  return is_zero_operator(g.op) && support_dim(g.lin, 0.0) == 0 && g.constant <= 0.0;
}

Problem drop_vacuous_constraints(const Problem& p) {
  Problem out = p;
  out.constraints.clear();
  for (const auto& g : p.constraints)
    if (!is_vacuous_constraint(g)) out.constraints.push_back(g);
  return out;
}

}  // namespace qpcert
