#include "qpcert/recession.hpp"

#include <algorithm>
#include <cmath>

#include "qpcert/eig.hpp"
#include "qpcert/errors.hpp"
#include "qpcert/feasibility.hpp"
#include "qpcert/search.hpp"
#include "qpcert/simplex.hpp"

namespace qpcert {

const char* to_string(Verdict::Status s) {
  switch (s) {
    case Verdict::Status::HOLDS: return "HOLDS";
    case Verdict::Status::VIOLATED: return "VIOLATED";
    case Verdict::Status::UNKNOWN: return "UNKNOWN";
  }
  return "?";
}

RecessionCone recession_cone(const Problem& p) {
  const std::size_t k = head_dim(p);
  RecessionCone cone;
  cone.head_dim = k;

  // Common kernel of the constraint blocks via the Gram sum: for symmetric
  // B_i, ker(sum B_i^2) is exactly the intersection of the kernels.
  Matrix gram(k, k);
  bool any_block = false;
  for (const auto& g : p.constraints) {
    const Operator gi = padded(g.op, k);
    if (fro_norm(gi.block) <= kZeroBlockTol) continue;
    any_block = true;
    const Matrix sq = matmul(gi.block, gi.block);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) gram(i, j) += sq(i, j);
  }
  cone.basis = any_block ? nullspace_basis(gram) : Matrix::identity(k);

  // Finite spaces have no coordinates beyond the head at all; otherwise any
  // positive constraint tail kills the tail coordinates.
  cone.tail_free = !p.space.is_finite();
  for (const auto& g : p.constraints)
    if (g.op.tail > 0.0) cone.tail_free = false;

  const std::size_t d = cone.basis.cols();
  cone.ineq = Matrix(p.constraints.size(), d);
  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    const Vector row = matvec_t(cone.basis, padded(p.constraints[i].lin, k));
    for (std::size_t j = 0; j < d; ++j) cone.ineq(i, j) = row[j];
  }
  return cone;
}

bool membership(const RecessionCone& cone, const Vector& v, double tol) {
  const double scale = std::max(1.0, norm(v));
  if (!cone.tail_free)
    for (std::size_t i = cone.head_dim; i < v.size(); ++i)
      if (std::fabs(v[i]) > tol * scale) return false;

  Vector head = Vector::zeros(cone.head_dim);
  for (std::size_t i = 0; i < cone.head_dim; ++i) head.ref(i) = v[i];
  const Vector u = matvec_t(cone.basis, head);
  const Vector proj = matvec(cone.basis, u);
  if (max_abs_diff(head, proj) > tol * scale) return false;
  for (std::size_t i = 0; i < cone.ineq.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < cone.ineq.cols(); ++j) s += cone.ineq(i, j) * u[j];
    if (s > tol * scale) return false;
  }
  return true;
}

ZeroFormSet zero_form_set(const RecessionCone& cone, const Operator& t) {
  ZeroFormSet z;
  const Operator tp = padded(t, cone.head_dim);
  z.reduced_form = congruence(tp.block, cone.basis);
  z.tail_in_zero_set = cone.tail_free && t.tail == 0.0;

  std::vector<double> eigs;
  if (z.reduced_form.rows() > 0) eigs = eig_sym(z.reduced_form).values;
  if (cone.tail_free) eigs.push_back(t.tail);

  const double scale =
      kPsdTol * std::max({1.0, fro_norm(z.reduced_form), std::fabs(t.tail)});
  bool psd = true, nsd = true;
  for (double lam : eigs) {
    if (lam < -scale) psd = false;
    if (lam > scale) nsd = false;
  }
  z.classification = psd   ? ZeroFormSet::Classification::PsdOnSpan
                     : nsd ? ZeroFormSet::Classification::NsdOnSpan
                           : ZeroFormSet::Classification::Indefinite;
  z.zero_subspace_basis = nullspace_basis(z.reduced_form);
  return z;
}

ConeAnalysis analyze_cone(const Problem& p) {
  ConeAnalysis ca;
  ca.cone = recession_cone(p);
  ca.zero_set = zero_form_set(ca.cone, p.objective.op);
  return ca;
}

namespace {

Vector ambient_ray(const RecessionCone& cone, const Vector& u) {
  return matvec(cone.basis, u);
}

// LP over { w : C Z w <= 0, |(Z w)_j| <= 1 } maximizing obj'w; returns the
// ambient head ray V Z w, or nullopt when the optimum is ~0.
struct ZeroConeLp {
  Matrix rows;  // constraint matrix in w
  Vector rhs;
};

ZeroConeLp build_zero_cone_lp(const ConeAnalysis& ca) {
  const Matrix& z = ca.zero_set.zero_subspace_basis;
  const Matrix cz = matmul(ca.cone.ineq, z);
  const std::size_t d = z.rows();
  ZeroConeLp lp;
  lp.rows = Matrix(cz.rows() + 2 * d, z.cols());
  lp.rhs = Vector::zeros(cz.rows() + 2 * d);
  for (std::size_t i = 0; i < cz.rows(); ++i)
    for (std::size_t j = 0; j < z.cols(); ++j) lp.rows(i, j) = cz(i, j);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < z.cols(); ++j) {
      lp.rows(cz.rows() + 2 * i, j) = z(i, j);
      lp.rows(cz.rows() + 2 * i + 1, j) = -z(i, j);
    }
    lp.rhs.ref(cz.rows() + 2 * i) = 1.0;
    lp.rhs.ref(cz.rows() + 2 * i + 1) = 1.0;
  }
  return lp;
}

bool condition_a_witness_ok(const Problem& p, const ConeAnalysis& ca,
                            const Vector& v, std::size_t i) {
  if (norm(v) < 1e-12) return false;
  if (!membership(ca.cone, v)) return false;
  if (std::fabs(quad_value(p.objective.op, v)) > kConditionATol * norm_sq(v)) return false;
  return std::fabs(dot(p.constraints[i].lin, v)) > kConditionATol;
}

}  // namespace

GeneratorSet zero_set_generators(const ConeAnalysis& ca) {
  GeneratorSet out;
  if (ca.zero_set.classification == ZeroFormSet::Classification::Indefinite) {
    out.complete = false;  // zero set is not a subspace section; no enumeration
    return out;
  }
  const Matrix& z = ca.zero_set.zero_subspace_basis;
  const std::size_t zc = z.cols();
  if (zc == 0) {
    out.complete = true;
    return out;
  }
  const Matrix cz = matmul(ca.cone.ineq, z);

  auto in_cone = [&](const Vector& w) {
    for (std::size_t i = 0; i < cz.rows(); ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < zc; ++j) s += cz(i, j) * w[j];
      if (s > kMembershipTol) return false;
    }
    return true;
  };

  if (fro_norm(cz) <= 1e-12) {
    // No inequality touches the kernel: +-basis generate the whole section.
    for (std::size_t j = 0; j < zc; ++j) {
      out.rays.push_back(ambient_ray(ca.cone, z.col(j)));
      out.rays.push_back(ambient_ray(ca.cone, -1.0 * z.col(j)));
    }
    out.complete = true;
    return out;
  }
  if (zc == 1) {
    for (double s : {+1.0, -1.0}) {
      const Vector w{s};
      const Vector u = s * z.col(0);
      if (in_cone(w)) out.rays.push_back(ambient_ray(ca.cone, u));
    }
    out.complete = true;  // a halfline (or point) is generated by what survives
    return out;
  }

  // Higher-dimensional kernel cut by inequalities: collect candidates but do
  // not claim completeness.
  for (std::size_t j = 0; j < zc; ++j) {
    for (double s : {+1.0, -1.0}) {
      Vector w = Vector::zeros(zc);
      w.ref(j) = s;
      if (in_cone(w)) out.rays.push_back(ambient_ray(ca.cone, matvec(z, w)));
    }
  }
  const ZeroConeLp lp = build_zero_cone_lp(ca);
  for (std::size_t i = 0; i < ca.zero_set.zero_subspace_basis.rows(); ++i) {
    for (double s : {+1.0, -1.0}) {
      Vector obj = Vector::zeros(zc);
      for (std::size_t j = 0; j < zc; ++j) obj.ref(j) = s * z(i, j);
      const LpResult r = lp_max_free(obj, lp.rows, lp.rhs);
      if (r.status == LpResult::Status::Optimal && r.value > 1e-9)
        out.rays.push_back(ambient_ray(ca.cone, matvec(z, r.x)));
    }
  }
  out.complete = false;
  return out;
}

std::vector<Vector> sample_cone_rays(const RecessionCone& cone, std::size_t count,
                                     std::uint64_t seed) {
  std::vector<Vector> rays;
  const std::size_t d = cone.span_dim();
  if (d == 0) return rays;

  // Candidate basis directions that already satisfy the inequalities.
  for (std::size_t j = 0; j < d && rays.size() < count; ++j) {
    for (double s : {+1.0, -1.0}) {
      Vector u = Vector::zeros(d);
      u.ref(j) = s;
      bool ok = true;
      for (std::size_t i = 0; i < cone.ineq.rows(); ++i)
        if (s * cone.ineq(i, j) > kMembershipTol) ok = false;
      if (ok) rays.push_back(matvec(cone.basis, u));
    }
  }

  // LP vertices of the inf-norm truncation for seeded random objectives.
  Matrix rows(cone.ineq.rows() + 2 * d, d);
  Vector rhs = Vector::zeros(rows.rows());
  for (std::size_t i = 0; i < cone.ineq.rows(); ++i)
    for (std::size_t j = 0; j < d; ++j) rows(i, j) = cone.ineq(i, j);
  for (std::size_t j = 0; j < d; ++j) {
    rows(cone.ineq.rows() + 2 * j, j) = 1.0;
    rows(cone.ineq.rows() + 2 * j + 1, j) = -1.0;
    rhs.ref(cone.ineq.rows() + 2 * j) = 1.0;
    rhs.ref(cone.ineq.rows() + 2 * j + 1) = 1.0;
  }
  Rng rng(seed);
  int tries = 0;
  while (rays.size() < count && tries < 8 * static_cast<int>(count) + 16) {
    ++tries;
    Vector obj = Vector::zeros(d);
    for (std::size_t j = 0; j < d; ++j) obj.ref(j) = rng.uniform(-1.0, 1.0);
    const LpResult r = lp_max_free(obj, rows, rhs);
    if (r.status != LpResult::Status::Optimal || inf_norm(r.x) < 1e-9) continue;
    rays.push_back(matvec(cone.basis, r.x));
  }
  return rays;
}

CondAResult check_condition_A(const Problem& p, const ConeAnalysis& ca,
                              std::uint64_t seed) {
  CondAResult out;
  const IndexSets is = index_sets(p);

  if (is.nonzero_op.empty()) {
    out.verdict.status = Verdict::Status::HOLDS;
    out.shortcut = CondAShortcut::NoQuadraticConstraints;
    out.verdict.notes.push_back("no genuinely quadratic constraints");
    return out;
  }
  bool all_zero_lin = true;
  for (std::size_t i : is.nonzero_op)
    if (support_dim(p.constraints[i].lin, 0.0) != 0) all_zero_lin = false;
  if (all_zero_lin) {
    out.verdict.status = Verdict::Status::HOLDS;
    out.shortcut = CondAShortcut::ZeroLinearOnI1;
    out.verdict.notes.push_back("zero linear parts on all quadratic constraints");
    return out;
  }
  const bool semidefinite =
      ca.zero_set.classification != ZeroFormSet::Classification::Indefinite;
  if (semidefinite && ca.zero_set.zero_subspace_basis.cols() == 0 &&
      !ca.zero_set.tail_in_zero_set) {
    out.verdict.status = Verdict::Status::HOLDS;
    out.shortcut = CondAShortcut::TrivialZeroSet;
    out.verdict.notes.push_back("zero-form recession directions: only 0");
    return out;
  }

  if (semidefinite) {
    const Matrix& z = ca.zero_set.zero_subspace_basis;
    if (z.cols() == 0) {
      // Only free tail directions remain; constraint linear parts have head
      // support, so they cannot be violated there.
      out.verdict.status = Verdict::Status::HOLDS;
      out.verdict.notes.push_back("zero-form set reduces to tail directions");
      return out;
    }
    const ZeroConeLp lp = build_zero_cone_lp(ca);
    for (std::size_t i : is.nonzero_op) {
      Vector obj = Vector::zeros(z.cols());
      {
        const Vector ci_reduced =
            matvec_t(ca.cone.basis, padded(p.constraints[i].lin, ca.cone.head_dim));
        obj = matvec_t(z, ci_reduced);
      }
      for (double s : {+1.0, -1.0}) {
        const LpResult r = lp_max_free(s * obj, lp.rows, lp.rhs);
        if (r.status != LpResult::Status::Optimal || r.value <= kConditionATol) continue;
        Vector v = ambient_ray(ca.cone, matvec(z, r.x));
        const double scale = inf_norm(v);
        if (scale > 1e-12) v = (1.0 / scale) * v;
        if (condition_a_witness_ok(p, ca, v, i)) {
          out.verdict.status = Verdict::Status::VIOLATED;
          out.verdict.witness = v;
          out.violated_constraint = static_cast<int>(i);
          out.verdict.notes.push_back(
              "constraint " + std::to_string(i + 1) + ": <c_i, v> = " +
              std::to_string(dot(p.constraints[i].lin, v)) + " on a zero-form ray");
          return out;
        }
      }
    }
    out.verdict.status = Verdict::Status::HOLDS;
    out.verdict.notes.push_back(
        "linear programs over the zero-form cone maximize to 0");
    return out;
  }

  // Indefinite reduced form: seeded refutation search, sound fallback UNKNOWN.
  const std::size_t d = ca.cone.span_dim();
  const double rho = 1e4 * std::max(1.0, fro_norm(ca.zero_set.reduced_form));
  for (std::size_t i : is.nonzero_op) {
    const Vector ci_reduced =
        matvec_t(ca.cone.basis, padded(p.constraints[i].lin, ca.cone.head_dim));
    auto score = [&](const Vector& u) {
      double lin = 0.0;
      for (std::size_t j = 0; j < d; ++j) lin += ci_reduced[j] * u[j];
      double quad = 0.0;
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
          quad += u[a] * ca.zero_set.reduced_form(a, b) * u[b];
      double pen = 0.0;
      for (std::size_t r = 0; r < ca.cone.ineq.rows(); ++r) {
        double s = 0.0;
        for (std::size_t j = 0; j < d; ++j) s += ca.cone.ineq(r, j) * u[j];
        if (s > 0.0) pen += s;
      }
      return std::fabs(lin) - rho * std::fabs(quad) - rho * pen;
    };
    const Vector u = compass_maximize(score, d, kMultiStartCount, seed);
    Vector v = ambient_ray(ca.cone, u);
    const double scale = inf_norm(v);
    if (scale > 1e-12) v = (1.0 / scale) * v;
    if (condition_a_witness_ok(p, ca, v, i)) {
      out.verdict.status = Verdict::Status::VIOLATED;
      out.verdict.witness = v;
      out.violated_constraint = static_cast<int>(i);
      out.verdict.notes.push_back("refutation search witness, constraint " +
                                  std::to_string(i + 1));
      return out;
    }
  }
  out.verdict.status = Verdict::Status::UNKNOWN;
  out.verdict.notes.push_back(
      "indefinite reduced form: refutation search found no witness");
  return out;
}

CondAResult check_condition_A(const Problem& p) {
  const Problem q = normalize_problem(p);
  return check_condition_A(q, analyze_cone(q));
}

EavesResult check_eaves(const Problem& p, const ConeAnalysis& ca,
                        const std::optional<Vector>& feasible_point,
                        std::uint64_t seed) {
  EavesResult out;
  const double obj_scale = operator_scale(p.objective.op);

  // (ii): the reduced form must be nonnegative over the cone. Semidefinite
  // on the span (tail included when free) is sufficient.
  {
    std::vector<double> eigs;
    if (ca.zero_set.reduced_form.rows() > 0)
      eigs = eig_sym(ca.zero_set.reduced_form).values;
    if (ca.cone.tail_free) eigs.push_back(p.objective.op.tail);
    const double tol = kPsdTol * std::max(1.0, fro_norm(ca.zero_set.reduced_form));
    const double lo = eigs.empty() ? 0.0 : *std::min_element(eigs.begin(), eigs.end());
    if (lo >= -tol) {
      out.cond_ii.status = Verdict::Status::HOLDS;
      out.cond_ii.notes.push_back("reduced form semidefinite on the cone span");
    } else if (ca.cone.tail_free && p.objective.op.tail < -kConditionATol) {
      out.cond_ii.status = Verdict::Status::VIOLATED;
      Vector v = Vector::zeros(ca.cone.head_dim + 1);
      v.ref(ca.cone.head_dim) = 1.0;
      out.cond_ii.witness = v;
      out.cond_ii.notes.push_back("negative objective tail on a free tail direction");
    } else {
      // Search the cone for a strictly negative form value.
      const std::size_t d = ca.cone.span_dim();
      auto score = [&](const Vector& u) {
        double quad = 0.0;
        for (std::size_t a = 0; a < d; ++a)
          for (std::size_t b = 0; b < d; ++b)
            quad += u[a] * ca.zero_set.reduced_form(a, b) * u[b];
        double pen = 0.0;
        for (std::size_t r = 0; r < ca.cone.ineq.rows(); ++r) {
          double s = 0.0;
          for (std::size_t j = 0; j < d; ++j) s += ca.cone.ineq(r, j) * u[j];
          if (s > 0.0) pen += s;
        }
        return -quad - 1e6 * pen;
      };
      const Vector u = compass_maximize(score, d, kMultiStartCount, seed);
      const Vector v = ambient_ray(ca.cone, u);
      if (membership(ca.cone, v) &&
          quad_value(p.objective.op, v) < -kConditionATol * std::max(1.0, norm_sq(v))) {
        out.cond_ii.status = Verdict::Status::VIOLATED;
        out.cond_ii.witness = v;
        out.cond_ii.notes.push_back("cone ray with negative objective form value");
      } else {
        out.cond_ii.status = Verdict::Status::UNKNOWN;
        out.cond_ii.notes.push_back("indefinite on the span; no cone witness found");
      }
    }
  }

  // (iii): check the zero-form generators. Fast path when T v = 0; otherwise
  // minimize the linear functional <T v, x> over F.
  const GeneratorSet gens = zero_set_generators(ca);
  bool any_unresolved = !gens.complete;
  if (!gens.complete)
    out.cond_iii.notes.push_back("zero-form generator list not provably complete");
  for (const Vector& v : gens.rays) {
    const Vector tv = apply_operator(p.objective.op, v);
    const double slope_const = dot(p.objective.lin, v);
    if (norm(tv) <= 1e-10 * obj_scale * std::max(1.0, norm(v))) {
      if (slope_const >= -kConditionATol * std::max(1.0, norm(v)))
        continue;  // passes for every x
      out.cond_iii.status = Verdict::Status::VIOLATED;
      out.cond_iii.witness = v;
      if (feasible_point) out.cond_iii.witness_point = *feasible_point;
      out.cond_iii.notes.push_back("T v = 0 and <c, v> < 0");
      return out;
    }
    if (!feasible_point)
      throw InfeasibleProblem("eaves condition (iii): no feasible point available");
    const LinearMinResult lm =
        minimize_linear_over_feasible(p, tv, *feasible_point);
    const double total = lm.value + slope_const;
    if (total < -kConditionATol * std::max(1.0, norm(v)) &&
        is_feasible(p, lm.point, kFeasTol)) {
      out.cond_iii.status = Verdict::Status::VIOLATED;
      out.cond_iii.witness = v;
      out.cond_iii.witness_point = lm.point;
      out.cond_iii.notes.push_back("feasible x with <T x + c, v> < 0");
      return out;
    }
    // A numeric minimum near zero does not certify the bound for all x.
    any_unresolved = true;
    out.cond_iii.notes.push_back("generator settled numerically only");
  }
  out.cond_iii.status =
      any_unresolved ? Verdict::Status::UNKNOWN : Verdict::Status::HOLDS;
  if (out.cond_iii.status == Verdict::Status::HOLDS)
    out.cond_iii.notes.push_back("all zero-form generators pass structurally");
  return out;
}

EavesResult check_eaves(const Problem& p) {
  const Problem q = normalize_problem(p);
  const ConeAnalysis ca = analyze_cone(q);
  return check_eaves(q, ca, find_feasible_point(q), kSearchSeed);
}

}  // namespace qpcert
