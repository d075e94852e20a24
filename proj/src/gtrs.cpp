#include "qpcert/gtrs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qpcert/constants.hpp"
#include "qpcert/eig.hpp"
#include "qpcert/errors.hpp"
#include "qpcert/feasibility.hpp"
#include "qpcert/simplex.hpp"

namespace qpcert {

const char* to_string(Solution::Case c) {
  switch (c) {
    case Solution::Case::OnBoundary: return "OnBoundary";
    case Solution::Case::RetractedFromInterior: return "RetractedFromInterior";
    case Solution::Case::RetractedFromExterior: return "RetractedFromExterior";
    case Solution::Case::Interior: return "Interior";
  }
  return "?";
}

namespace {

bool combined_psd(const Operator& t, const Operator& t1, double lambda) {
  const Operator s = combine(1.0, t, lambda, t1);
  if (s.tail < 0.0) return false;
  if (s.head_dim() == 0) return true;
  return eig_min(s.block) >= -kPsdTol * std::max(1.0, fro_norm(s.block));
}

}  // namespace

double lambda_bar(const Operator& t, const Operator& t1) {
  const std::size_t k = std::max(t.head_dim(), t1.head_dim());
  const Operator tp = padded(t, k);
  const Operator t1p = padded(t1, k);

  // Tail: need t.tail + lambda * t1.tail >= 0 for some lambda >= 0.
  double lambda_lo = 0.0;
  if (tp.tail < 0.0) {
    if (t1p.tail <= 0.0)
      throw NoPsdShift("lambda_bar: negative tail cannot be shifted");
    lambda_lo = -tp.tail / t1p.tail;
  }

  // Emptiness of the shift set is decidable on ker(T1): the psd region in
  // lambda is an interval [lambda_bar, inf) because T1 is psd, and it is
  // nonempty iff the restriction of T to ker(T1) is psd and T maps the
  // kernel of that restriction to zero.
  if (k > 0) {
    const Matrix z = nullspace_basis(t1p.block);
    if (z.cols() > 0) {
      const Matrix r = congruence(tp.block, z);
      const double rtol = kPsdTol * std::max(1.0, fro_norm(r));
      const EigResult re = eig_sym(r);
      if (!re.values.empty() && re.values.front() < -rtol)
        throw NoPsdShift("lambda_bar: T negative on ker(T1)");
      for (std::size_t j = 0; j < re.values.size(); ++j) {
        if (std::fabs(re.values[j]) > rtol) continue;
        const Vector u = matvec(z, re.vectors.col(j));
        const Vector bu = apply_operator(Operator{tp.block, 0.0}, u);
        if (norm(bu) > 1e-7 * std::max(1.0, fro_norm(tp.block)))
          throw NoPsdShift("lambda_bar: T leaks out of ker(T1) on a flat direction");
      }
    }
  }

  if (combined_psd(tp, t1p, lambda_lo)) return lambda_lo;
  double hi = std::max(1.0, 2.0 * lambda_lo);
  while (!combined_psd(tp, t1p, hi)) {
    hi *= 2.0;
    if (hi > 1e12) throw NoPsdShift("lambda_bar: no psd shift below 1e12");
  }
  double lo = lambda_lo;
  for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (combined_psd(tp, t1p, mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

UnconstrainedMin unconstrained_argmin(const QuadraticFunction& q) {
  UnconstrainedMin r;
  const std::size_t k = std::max(q.op.head_dim(), support_dim(q.lin));
  const Operator op = padded(q.op, k);
  const Vector lin = padded(q.lin, k);

  if (op.tail < 0.0) {
    r.bounded = false;
    r.ray = Vector::unit(k + 1, k);  // first tail coordinate
    return r;
  }
  if (k == 0) {
    r.bounded = true;
    r.value = q.constant;
    r.point = Vector();
    return r;
  }

  const EigResult e = eig_sym(op.block);
  const double tol = kNullspaceTol * std::max(1.0, fro_norm(op.block));
  const double lin_tol = kNullspaceTol * std::max(1.0, norm(lin));
  const Vector lin_r = matvec_t(e.vectors, lin);

  for (std::size_t j = 0; j < k; ++j) {
    if (e.values[j] < -tol) {
      Vector v = e.vectors.col(j);
      if (dot(lin, v) > 0.0) v = -1.0 * v;
      r.bounded = false;
      r.ray = v;
      return r;
    }
    if (std::fabs(e.values[j]) <= tol && std::fabs(lin_r[j]) > lin_tol) {
      const double s = lin_r[j] > 0.0 ? -1.0 : 1.0;
      r.bounded = false;
      r.ray = s * e.vectors.col(j);
      return r;
    }
  }

  Vector h = Vector::zeros(k);
  for (std::size_t j = 0; j < k; ++j)
    if (e.values[j] > tol) h.ref(j) = -lin_r[j] / e.values[j];
  r.bounded = true;
  r.point = matvec(e.vectors, h);
  r.value = eval_quadratic(QuadraticFunction{op, lin, q.constant}, r.point);
  return r;
}

namespace {

// Dual function phi(lambda) = inf_x f(x) + lambda*g1(x); concave on the psd
// multiplier range.
struct DualEval {
  bool finite = false;
  double value = -std::numeric_limits<double>::infinity();
  Vector point;
  double g1_at = 0.0;
};

DualEval eval_dual(const QuadraticFunction& f, const QuadraticFunction& g1,
                   double lambda) {
  QuadraticFunction q;
  q.op = combine(1.0, f.op, lambda, g1.op);
  q.lin = axpy(lambda, g1.lin, f.lin);
  q.constant = f.constant + lambda * g1.constant;
  const UnconstrainedMin um = unconstrained_argmin(q);
  DualEval d;
  if (!um.bounded) return d;
  d.finite = true;
  d.value = um.value;
  d.point = um.point;
  d.g1_at = eval_quadratic(g1, um.point);
  return d;
}

struct DualOutcome {
  enum class Kind {
    Crossing,     // g1(x_lambda) ~ 0 at lambda_star
    HardAtLeft,   // dual max at lambda_star with g1 < 0 there
    ExteriorEnd,  // domain or cap ended with g1 > 0 at lambda_star
    Empty,        // phi = -inf on the whole range
  };
  Kind kind = Kind::Empty;
  double lambda_star = 0.0;
  DualEval at;
};

DualOutcome dual_search(const QuadraticFunction& f, const QuadraticFunction& g1,
                        double lb) {
  DualOutcome out;
  const double g_scale = std::max(1.0, operator_scale(g1.op) + norm(g1.lin) +
                                           std::fabs(g1.constant));

  // Left end of the domain: lambda_bar itself, or slightly right of it when
  // the stationary system is inconsistent exactly at the boundary.
  double left = lb;
  DualEval at_left = eval_dual(f, g1, left);
  if (!at_left.finite) {
    bool found = false;
    for (double delta : {1e-10, 1e-8, 1e-6, 1e-4, 1e-2, 1.0}) {
      const double cand = lb + delta * std::max(1.0, lb);
      const DualEval d = eval_dual(f, g1, cand);
      if (d.finite) {
        left = cand;
        at_left = d;
        found = true;
        break;
      }
    }
    if (!found) return out;  // Empty
  }

  if (at_left.g1_at <= kBoundaryTol * g_scale) {
    out.lambda_star = left;
    out.at = at_left;
    out.kind = std::fabs(at_left.g1_at) <= kBoundaryTol * g_scale
                   ? DualOutcome::Kind::Crossing
                   : DualOutcome::Kind::HardAtLeft;
    return out;
  }

  // g1 at the inner minimizer decreases in lambda (phi' = g1, phi concave);
  // march right until the sign flips or the domain ends.
  double lo = left;
  DualEval at_lo = at_left;
  double hi = std::max(2.0 * left, left + 1.0);
  const double cap = 1e10 * std::max(1.0, left);
  DualEval at_hi;
  for (;;) {
    at_hi = eval_dual(f, g1, hi);
    if (!at_hi.finite || at_hi.g1_at <= kBoundaryTol * g_scale) break;
    lo = hi;
    at_lo = at_hi;
    hi *= 2.0;
    if (hi > cap) {
      out.kind = DualOutcome::Kind::ExteriorEnd;
      out.lambda_star = lo;
      out.at = at_lo;
      return out;
    }
  }

  if (!at_hi.finite) {
    // Domain edge between lo and hi; pin it down and report the inside end.
    for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++it) {
      const double mid = 0.5 * (lo + hi);
      const DualEval d = eval_dual(f, g1, mid);
      if (d.finite && d.g1_at > kBoundaryTol * g_scale) {
        lo = mid;
        at_lo = d;
      } else if (d.finite) {
        out.kind = std::fabs(d.g1_at) <= kBoundaryTol * g_scale
                       ? DualOutcome::Kind::Crossing
                       : DualOutcome::Kind::HardAtLeft;
        out.lambda_star = mid;
        out.at = d;
        return out;
      } else {
        hi = mid;
      }
    }
    out.kind = DualOutcome::Kind::ExteriorEnd;
    out.lambda_star = lo;
    out.at = at_lo;
    return out;
  }

  // Sign bisection on g1(x_lambda).
  for (int it = 0; it < 300; ++it) {
    if (std::fabs(at_hi.g1_at) <= 1e-10 * g_scale) break;
    if (hi - lo <= 1e-15 * std::max(1.0, hi)) break;
    const double mid = 0.5 * (lo + hi);
    const DualEval d = eval_dual(f, g1, mid);
    if (d.finite && d.g1_at > 1e-10 * g_scale) {
      lo = mid;
      at_lo = d;
    } else if (d.finite) {
      hi = mid;
      at_hi = d;
    } else {
      hi = mid;  // inconsistent sliver; shrink toward the finite side
    }
  }
  out.lambda_star = hi;
  out.at = at_hi;
  out.kind = std::fabs(at_hi.g1_at) <= kBoundaryTol * g_scale
                 ? DualOutcome::Kind::Crossing
                 : DualOutcome::Kind::HardAtLeft;
  return out;
}

// Kernel of T + lambda*T1 with a tolerance ladder: the bisected lambda sits
// within ~1e-13 of the exact boundary, so the vanishing eigenvalue is tiny
// but not exactly zero.
Matrix multiplier_kernel(const Operator& top, double lambda, const Operator& t1) {
  const Operator s = combine(1.0, top, lambda, t1);
  if (s.head_dim() == 0) return Matrix(0, 0);
  const double scale = std::max(1.0, fro_norm(s.block));
  for (double tol : {kNullspaceTol, 1e-8, 1e-7, 1e-6}) {
    const Matrix z = nullspace_basis(s.block, tol * scale);
    if (z.cols() > 0) return z;
  }
  return Matrix(s.head_dim(), 0);
}

}  // namespace

Retraction retract_to_boundary(const Vector& x_star, const Vector& v_bar,
                               const QuadraticFunction& g1) {
  const double scale = std::max(1.0, operator_scale(g1.op) + norm(g1.lin) +
                                         std::fabs(g1.constant));
  if (norm(apply_operator(g1.op, v_bar)) > 1e-8 * scale * std::max(1.0, norm(v_bar)))
    throw PreconditionViolation("retract_to_boundary: T1 v != 0");
  const double c1v = dot(g1.lin, v_bar);
  if (c1v >= -1e-10)
    throw PreconditionViolation("retract_to_boundary: <c1, v> not negative");

  const double g = eval_quadratic(g1, x_star);
  Retraction r;
  if (std::fabs(g) <= 1e-12 * scale) {
    r.point = x_star;
    r.step = 0.0;
    return r;
  }
  if (g < 0.0) {
    r.step = g / c1v;  // > 0
    r.point = axpy(-r.step, v_bar, x_star);
  } else {
    r.step = -g / c1v;  // > 0
    r.point = axpy(r.step, v_bar, x_star);
  }
  return r;
}

namespace {

// Ray in the zero-form set of the single-constraint cone with <c1, v> < 0,
// via the LP the hard case calls for. Empty optional when none exists in
// the kernel section.
std::optional<Vector> zero_set_c1_ray(const Problem& p, const ConeAnalysis& ca) {
  const Matrix& z = ca.zero_set.zero_subspace_basis;
  if (z.cols() == 0) return std::nullopt;
  if (ca.zero_set.classification == ZeroFormSet::Classification::Indefinite)
    return std::nullopt;
  const Vector c1r =
      matvec_t(ca.cone.basis, padded(p.constraints[0].lin, ca.cone.head_dim));
  const Vector obj = matvec_t(z, c1r);  // minimize <c1, .>  == maximize -obj

  const Matrix cz = matmul(ca.cone.ineq, z);
  const std::size_t d = z.rows();
  Matrix rows(cz.rows() + 2 * d, z.cols());
  Vector rhs = Vector::zeros(rows.rows());
  for (std::size_t i = 0; i < cz.rows(); ++i)
    for (std::size_t j = 0; j < z.cols(); ++j) rows(i, j) = cz(i, j);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < z.cols(); ++j) {
      rows(cz.rows() + 2 * i, j) = z(i, j);
      rows(cz.rows() + 2 * i + 1, j) = -z(i, j);
    }
    rhs.ref(cz.rows() + 2 * i) = 1.0;
    rhs.ref(cz.rows() + 2 * i + 1) = 1.0;
  }
  const LpResult r = lp_max_free(-1.0 * obj, rows, rhs);
  if (r.status != LpResult::Status::Optimal || r.value <= 1e-10) return std::nullopt;
  return matvec(ca.cone.basis, matvec(z, r.x));
}

}  // namespace

std::optional<UnboundedCertificate> unbounded_ray_scan(const Problem& p,
                                                       const ConeAnalysis& ca,
                                                       const Vector& feasible) {
  const Operator& t = p.objective.op;

  // Negative objective tail on a free tail direction.
  if (ca.cone.tail_free && t.tail < -kPsdTol) {
    UnboundedCertificate c;
    c.base = feasible;
    c.ray = Vector::unit(ca.cone.head_dim + 1, ca.cone.head_dim);
    c.reason = "negative objective tail on a free tail direction";
    const double slope = dot(gradient(p.objective, feasible), c.ray);
    const double form = t.tail;
    const double s = std::max(1.0, 2.0 * std::fabs(slope) / -form);
    c.ray = s * c.ray;
    if (verify_unbounded(p, c.base, c.ray)) return c;
  }

  // Negative form value over the cone: eigen-directions of the reduced form
  // that satisfy the inequalities.
  if (ca.cone.span_dim() > 0 && ca.zero_set.reduced_form.rows() > 0) {
    const EigResult e = eig_sym(ca.zero_set.reduced_form);
    const double tol = kPsdTol * std::max(1.0, fro_norm(ca.zero_set.reduced_form));
    for (std::size_t j = 0; j < e.values.size() && e.values[j] < -tol; ++j) {
      for (double sgn : {+1.0, -1.0}) {
        const Vector u = sgn * e.vectors.col(j);
        bool ok = true;
        for (std::size_t i = 0; i < ca.cone.ineq.rows(); ++i) {
          double s = 0.0;
          for (std::size_t jj = 0; jj < u.size(); ++jj) s += ca.cone.ineq(i, jj) * u[jj];
          if (s > kMembershipTol) ok = false;
        }
        if (!ok) continue;
        Vector v = matvec(ca.cone.basis, u);
        const double form = quad_value(t, v);
        if (form >= -kPsdTol) continue;
        const double slope = dot(gradient(p.objective, feasible), v);
        const double s = std::max(1.0, 2.0 * std::fabs(slope) / -form);
        UnboundedCertificate c;
        c.base = feasible;
        c.ray = s * v;
        c.reason = "negative objective form value on a cone ray";
        if (verify_unbounded(p, c.base, c.ray)) return c;
      }
    }
  }

  // Zero-form rays with a certified negative linear slope.
  const GeneratorSet gens = zero_set_generators(ca);
  const double obj_scale = operator_scale(t);
  for (const Vector& v : gens.rays) {
    const Vector tv = apply_operator(t, v);
    const double cv = dot(p.objective.lin, v);
    if (norm(tv) <= 1e-10 * obj_scale * std::max(1.0, norm(v))) {
      if (cv < -kConditionATol) {
        UnboundedCertificate c;
        c.base = feasible;
        c.ray = v;
        c.reason = "zero-form cone ray with negative objective slope";
        if (verify_unbounded(p, c.base, c.ray)) return c;
      }
      continue;
    }
    const LinearMinResult lm = minimize_linear_over_feasible(p, tv, feasible);
    if (lm.value + cv < -kConditionATol && is_feasible(p, lm.point, kFeasTol)) {
      UnboundedCertificate c;
      c.base = lm.point;
      c.ray = v;
      c.reason = "zero-form cone ray, slope driven negative over F";
      if (verify_unbounded(p, c.base, c.ray)) return c;
    }
  }
  return std::nullopt;
}

bool verify_unbounded(const Problem& p, const Vector& base, const Vector& ray) {
  double prev = std::numeric_limits<double>::infinity();
  for (double tt : {1.0, 10.0, 100.0, 1000.0}) {
    const Vector x = axpy(tt, ray, base);
    if (!is_feasible(p, x, kFeasTol * std::max(1.0, norm_sq(x)))) return false;
    const double v = eval_quadratic(p.objective, x);
    if (v >= prev) return false;
    prev = v;
  }
  return true;
}

Solution solve_single_constraint(const Problem& p_in) {
  Problem p = normalize_problem(drop_vacuous_constraints(p_in));
  if (p.m() != 1)
    throw PreconditionViolation("solve_single_constraint: expected exactly one "
                                "effective constraint");
  const QuadraticFunction& f = p.objective;
  const QuadraticFunction& g1 = p.constraints[0];
  const double g_scale = std::max(1.0, operator_scale(g1.op) + norm(g1.lin) +
                                           std::fabs(g1.constant));

  const auto feasible = find_feasible_point(p);
  if (!feasible)
    throw NoSlaterPoint("solve_single_constraint: feasible set appears empty");

  // Certified descent along the recession cone does not need a multiplier
  // and must win over Slater bookkeeping.
  const ConeAnalysis ca = analyze_cone(p);
  if (const auto ub = unbounded_ray_scan(p, ca, *feasible))
    throw NotBoundedBelow("solve_single_constraint: " + ub->reason,
                          ub->ray.coords(), ub->base.coords());

  // Slater point: exact minimization of the convex g1.
  {
    const UnconstrainedMin gm = unconstrained_argmin(g1);
    if (gm.bounded && gm.value > -kConditionATol)
      throw NoSlaterPoint("solve_single_constraint: min g1 = " +
                          std::to_string(gm.value) + " >= 0");
  }

  double lb;
  try {
    lb = lambda_bar(f.op, g1.op);
  } catch (const NoPsdShift&) {
    // No multiplier can exist, so by strong duality of the single-constraint
    // problem the objective is unbounded below over F (possibly along a
    // curve rather than a ray).
    throw NotBoundedBelow(
        "solve_single_constraint: no psd shift exists; unbounded by duality");
  }

  const DualOutcome duo = dual_search(f, g1, lb);
  if (duo.kind == DualOutcome::Kind::Empty)
    throw NotBoundedBelow(
        "solve_single_constraint: dual value -inf on the whole multiplier "
        "range; unbounded by duality");

  Solution sol;
  sol.multiplier = duo.lambda_star;
  const double phi_star = duo.at.value;

  if (duo.kind == DualOutcome::Kind::Crossing) {
    sol.point = duo.at.point;
    sol.case_tag = (duo.lambda_star <= kBoundaryTol && duo.at.g1_at < -kBoundaryTol * g_scale)
                       ? Solution::Case::Interior
                       : Solution::Case::OnBoundary;
  } else if (duo.kind == DualOutcome::Kind::HardAtLeft &&
             duo.lambda_star <= kBoundaryTol) {
    // Multiplier 0 and the unconstrained minimizer is strictly feasible.
    sol.point = duo.at.point;
    sol.multiplier = 0.0;
    sol.case_tag = Solution::Case::Interior;
  } else {
    // Hard case: the inner minimizer misses the boundary; move through the
    // kernel of T + lambda*T1. A direction with positive constraint
    // curvature crosses g1 = 0 (quadratic root); a direction killed by T1
    // restores linearly, which is the classical kernel-ray retraction.
    const Vector& x_star = duo.at.point;
    const double g_at = duo.at.g1_at;
    const Matrix u = multiplier_kernel(f.op, duo.lambda_star, g1.op);
    const Vector grad_g = gradient(g1, x_star);

    struct Candidate {
      Vector point;
      double step = 0.0;
      Vector ray;
      bool linear = false;
      double abs_step = 0.0;
    };
    std::optional<Candidate> best;

    auto consider = [&](const Candidate& c) {
      if (std::fabs(eval_quadratic(g1, c.point)) > 1e-7 * g_scale) return;
      if (eval_quadratic(f, c.point) > phi_star + 1e-7 * std::max(1.0, std::fabs(phi_star)))
        return;
      if (!best || (!c.linear && best->linear) ||
          (c.linear == best->linear && c.abs_step < best->abs_step))
        best = c;
    };

    for (std::size_t j = 0; j < u.cols(); ++j) {
      const Vector dir = u.col(j);
      const double quad = quad_value(g1.op, dir);
      const double lin = dot(grad_g, dir);
      if (quad > 1e-10 * g_scale) {
        const double disc = lin * lin - 2.0 * quad * g_at;
        if (disc >= 0.0) {
          const double root = std::sqrt(disc);
          for (double s : {(-lin + root) / quad, (-lin - root) / quad}) {
            Candidate c;
            c.step = s;
            c.abs_step = std::fabs(s);
            c.ray = dir;
            c.linear = false;
            c.point = axpy(s, dir, x_star);
            consider(c);
          }
        }
      } else if (std::fabs(lin) > 1e-10 * g_scale) {
        Candidate c;
        c.step = -g_at / lin;
        c.abs_step = std::fabs(c.step);
        c.ray = dir;
        c.linear = true;
        c.point = axpy(c.step, dir, x_star);
        consider(c);
      }
    }

    if (!best) {
      // LP over the zero-form cone for a T1-kernel ray with <c1, v> < 0.
      if (const auto vbar = zero_set_c1_ray(p, ca)) {
        const Retraction rr = retract_to_boundary(x_star, *vbar, g1);
        Candidate c;
        c.point = rr.point;
        c.step = rr.step;
        c.ray = *vbar;
        c.linear = true;
        c.abs_step = std::fabs(rr.step);
        consider(c);
      }
    }
    if (!best)
      throw HardCaseNoRay(
          "solve_single_constraint: no kernel direction reaches the boundary "
          "(g1 at the multiplier point = " + std::to_string(g_at) + ")");

    sol.point = best->point;
    sol.retraction_ray = best->ray;
    sol.step = best->step;
    if (!best->linear)
      sol.case_tag = Solution::Case::OnBoundary;
    else
      sol.case_tag = g_at < 0.0 ? Solution::Case::RetractedFromInterior
                                : Solution::Case::RetractedFromExterior;
  }

  sol.value = eval_quadratic(f, sol.point);
  {
    const Operator s = combine(1.0, f.op, sol.multiplier, g1.op);
    const Vector lin = axpy(sol.multiplier, g1.lin, f.lin);
    sol.kkt_residual = norm(apply_operator(s, sol.point) + lin);
  }
  return sol;
}

// ---------------------------------------------------------------------------
// grid oracle

namespace {

struct FlatProblem {
  std::size_t k = 0;
  std::vector<std::vector<double>> blocks;  // row-major k*k, objective first
  std::vector<double> tails;
  std::vector<std::vector<double>> lins;
  std::vector<double> consts;
};

FlatProblem flatten(const Problem& p) {
  FlatProblem fp;
  fp.k = head_dim(p);
  auto push = [&fp](const QuadraticFunction& q) {
    const Operator op = padded(q.op, fp.k);
    fp.blocks.push_back(op.block.data());
    fp.tails.push_back(op.tail);
    std::vector<double> lin(fp.k, 0.0);
    for (std::size_t i = 0; i < fp.k && i < q.lin.size(); ++i) lin[i] = q.lin[i];
    fp.lins.push_back(lin);
    fp.consts.push_back(q.constant);
  };
  push(p.objective);
  for (const auto& g : p.constraints) push(g);
  return fp;
}

double flat_eval(const FlatProblem& fp, std::size_t fn, const double* x,
                 std::size_t dims) {
  const std::vector<double>& b = fp.blocks[fn];
  const std::vector<double>& lin = fp.lins[fn];
  double quad = 0.0, linear = 0.0;
  for (std::size_t i = 0; i < dims; ++i) {
    const double xi = x[i];
    if (xi == 0.0) continue;
    double row = 0.0;
    const double* bi = b.data() + i * fp.k;
    for (std::size_t j = 0; j < dims; ++j) row += bi[j] * x[j];
    quad += xi * row;
    linear += lin[i] * xi;
  }
  return 0.5 * quad + linear + fp.consts[fn];
}

struct ScanBest {
  double value = std::numeric_limits<double>::infinity();
  std::vector<double> point;
  bool found = false;
};

// Exhaustive scan over `dims` coordinates of the box [center-r, center+r]
// clamped to [-outer, outer]. Each coordinate is enumerated center-out by
// |value| so tie families are met at their smallest-norm member first.
// Tie-break: value, then squared norm.
std::size_t scan_box(const FlatProblem& fp, std::size_t dims,
                     const std::vector<double>& center, double r, double h,
                     double outer, double slack, ScanBest& best,
                     std::vector<ScanBest>* candidates, double separation) {
  std::size_t feasible_count = 0;
  std::vector<std::vector<double>> values(dims);
  std::vector<int> counts(dims);
  for (std::size_t j = 0; j < dims; ++j) {
    const double a = std::max(center[j] - r, -outer);
    const double b = std::min(center[j] + r, outer);
    const int n = std::max(1, static_cast<int>(std::floor((b - a) / h + 1.5)));
    values[j].resize(n);
    for (int i = 0; i < n; ++i) values[j][i] = a + i * h;
    std::stable_sort(values[j].begin(), values[j].end(),
                     [](double u, double v) { return std::fabs(u) < std::fabs(v); });
    counts[j] = n;
  }
  std::vector<int> idx(dims, 0);
  std::vector<double> x(fp.k, 0.0);
  const std::size_t nfun = fp.blocks.size();

  auto norm_sq_of = [&](const double* xv) {
    double s = 0.0;
    for (std::size_t j = 0; j < dims; ++j) s += xv[j] * xv[j];
    return s;
  };

  for (;;) {
    for (std::size_t j = 0; j < dims; ++j) x[j] = values[j][idx[j]];
    bool feas = true;
    for (std::size_t fn = 1; fn < nfun && feas; ++fn)
      if (flat_eval(fp, fn, x.data(), dims) > slack) feas = false;
    if (feas) {
      ++feasible_count;
      const double v = flat_eval(fp, 0, x.data(), dims);
      // Value ties are resolved toward the smaller norm; the tie window
      // absorbs slack-level dips so degenerate minimizer families report a
      // canonical representative.
      const double tie = 4e-9 * std::max(1.0, std::fabs(best.value));
      const bool better =
          v < best.value - tie ||
          (best.found && v <= best.value + tie &&
           norm_sq_of(x.data()) < norm_sq_of(best.point.data()) - 1e-12);
      if (!best.found || better) {
        best.found = true;
        best.value = v;
        best.point.assign(x.begin(), x.begin() + dims);
      }
      if (candidates) {
        bool placed = false;
        for (auto& c : *candidates) {
          if (!c.found) continue;
          double dist = 0.0;
          for (std::size_t j = 0; j < dims; ++j)
            dist = std::max(dist, std::fabs(c.point[j] - x[j]));
          if (dist < separation) {
            if (v < c.value) {
              c.value = v;
              c.point.assign(x.begin(), x.begin() + dims);
            }
            placed = true;
            break;
          }
        }
        if (!placed) {
          for (auto& c : *candidates) {
            if (c.found) continue;
            c.found = true;
            c.value = v;
            c.point.assign(x.begin(), x.begin() + dims);
            placed = true;
            break;
          }
        }
        if (!placed) {
          // replace the worst candidate if this value beats it
          auto worst = candidates->begin();
          for (auto it = candidates->begin(); it != candidates->end(); ++it)
            if (it->value > worst->value) worst = it;
          if (v < worst->value) {
            worst->value = v;
            worst->point.assign(x.begin(), x.begin() + dims);
          }
        }
      }
    }
    std::size_t j = 0;
    for (; j < dims; ++j) {
      if (++idx[j] < counts[j]) break;
      idx[j] = 0;
    }
    if (j == dims) break;
  }
  return feasible_count;
}

double curvature_bound(const Problem& p) {
  double l = 0.0;
  auto acc = [&l](const QuadraticFunction& q) {
    l = std::max(l, fro_norm(q.op.block) + std::fabs(q.op.tail));
  };
  acc(p.objective);
  for (const auto& g : p.constraints) acc(g);
  return std::max(1.0, l);
}

OracleResult assemble(const ScanBest& best, double radius,
                      double h, std::size_t dims, std::size_t k) {
  OracleResult r;
  r.radius = radius;
  r.grid_step = h;
  r.exhaustive = dims == k;
  if (!best.found) {
    r.inf_estimate = std::numeric_limits<double>::infinity();
    r.attained_in_box = false;
    return r;
  }
  r.inf_estimate = best.value;
  Vector pt = Vector::zeros(dims);
  for (std::size_t j = 0; j < dims; ++j) pt.ref(j) = best.point[j];
  r.argmin = pt;
  r.attained_in_box = true;
  for (std::size_t j = 0; j < dims; ++j)
    if (std::fabs(best.point[j]) > radius - 1.49 * h) r.attained_in_box = false;
  return r;
}

}  // namespace

OracleResult oracle_minimize(const Problem& p_in, double radius, double grid_step) {
  const Problem p = normalize_problem(p_in);
  const FlatProblem fp = flatten(p);
  const std::size_t dims = std::min<std::size_t>(fp.k, 6);
  const double slack = 1e-9 + grid_step * grid_step * curvature_bound(p);
  ScanBest best;
  scan_box(fp, dims, std::vector<double>(dims, 0.0), radius, grid_step, radius,
           slack, best, nullptr, 0.0);
  return assemble(best, radius, grid_step, dims, fp.k);
}

OracleResult oracle_refined(const Problem& p_in, double radius, double coarse_step,
                            int rounds, int keep) {
  const Problem p = normalize_problem(p_in);
  const FlatProblem fp = flatten(p);
  const std::size_t dims = std::min<std::size_t>(fp.k, 6);
  const double l = curvature_bound(p);

  double h = coarse_step;
  ScanBest best;
  std::vector<ScanBest> cands(static_cast<std::size_t>(keep));
  scan_box(fp, dims, std::vector<double>(dims, 0.0), radius, h, radius,
           1e-9 + h * h * l, best, &cands, 3.0 * h);
  if (!best.found) return assemble(best, radius, h, dims, fp.k);

  // Exactly feasible landing points: rescanned every round so slack-level
  // artifacts cannot drag their basins away.
  std::vector<ScanBest> anchors;

  // The coarse slack admits points well off the feasible set; their grid
  // values can beat every genuinely feasible cell. Descending the violation
  // penalty from each candidate lands inside F, a short constrained descent
  // then walks toward the local optimum, and refining around the landing
  // keeps the true basins in play.
  {
    std::vector<ScanBest> polished;
    for (const auto& c : cands) {
      if (!c.found) continue;
      Vector y = Vector::zeros(dims);
      for (std::size_t j = 0; j < dims; ++j) y.ref(j) = c.point[j];
      Vector xp = polish_feasible_box(p, y, radius);
      if (!is_feasible(p, xp, 1e-9)) continue;
      double val = eval_quadratic(p.objective, xp);
      // Reduced-gradient walk: project the descent direction onto the
      // tangent cone of the active constraints, step, and pull back onto F.
      // This follows curved boundary valleys that coordinate moves cannot.
      double step = coarse_step;
      for (int it = 0; it < 600 && step > 1e-7 * coarse_step; ++it) {
        // Steepest feasible direction of the linearized problem:
        // max -<grad f, d> over { <grad g_i, d> <= 0 (active i), |d|_inf <= 1 }.
        const Vector gf = gradient(p.objective, xp);
        std::vector<Vector> active;
        for (const auto& g : p.constraints) {
          // Active means reachable within the current step.
          const Vector gg = gradient(g, xp);
          const double reach =
              step * norm(gg) +
              step * step * (fro_norm(g.op.block) + std::fabs(g.op.tail));
          if (eval_quadratic(g, xp) >= -reach - 1e-9) active.push_back(gg);
        }
        Matrix rows(active.size() + 2 * dims, dims);
        Vector rhs = Vector::zeros(rows.rows());
        for (std::size_t i = 0; i < active.size(); ++i)
          for (std::size_t j = 0; j < dims; ++j) rows(i, j) = active[i][j];
        for (std::size_t j = 0; j < dims; ++j) {
          rows(active.size() + 2 * j, j) = 1.0;
          rows(active.size() + 2 * j + 1, j) = -1.0;
          rhs.ref(active.size() + 2 * j) = 1.0;
          rhs.ref(active.size() + 2 * j + 1) = 1.0;
        }
        Vector obj = Vector::zeros(dims);
        for (std::size_t j = 0; j < dims; ++j) obj.ref(j) = -gf[j];
        const LpResult lr = lp_max_free(obj, rows, rhs);
        if (lr.status != LpResult::Status::Optimal || lr.value <= 1e-12) break;
        const Vector& d = lr.x;
        const double dn = norm(d);
        if (dn < 1e-12) break;
        const Vector z = polish_feasible_box(p, axpy(step / dn, d, xp), radius);
        const double vz = eval_quadratic(p.objective, z);
        if (is_feasible(p, z, 1e-9) && vz < val - 1e-15) {
          xp = z;
          val = vz;
          step = std::min(step * 1.5, 8.0 * coarse_step);
        } else {
          step *= 0.5;
        }
      }
      ScanBest s;
      s.found = true;
      s.value = val;
      s.point.resize(dims);
      for (std::size_t j = 0; j < dims; ++j) {
        double v = xp[j];
        if (v > radius) v = radius;
        if (v < -radius) v = -radius;
        s.point[j] = v;
      }
      polished.push_back(s);

      // When the walk parked close to a box face, the true box optimum may
      // sit on it; seed a candidate with that coordinate snapped to the face.
      for (std::size_t j = 0; j < dims; ++j) {
        if (std::fabs(xp[j]) < 0.8 * radius) continue;
        Vector snapped = xp;
        snapped.ref(j) = xp[j] > 0.0 ? radius : -radius;
        const Vector sp = polish_feasible_box(p, snapped, radius);
        if (!is_feasible(p, sp, 1e-9)) continue;
        ScanBest f;
        f.found = true;
        f.value = eval_quadratic(p.objective, sp);
        f.point.resize(dims);
        for (std::size_t jj = 0; jj < dims; ++jj)
          f.point[jj] = std::min(std::max(sp[jj], -radius), radius);
        polished.push_back(f);
      }
    }
    for (const auto& s : polished) {
      bool dup = false;
      for (const auto& a : anchors) {
        double dist = 0.0;
        for (std::size_t j = 0; j < dims; ++j)
          dist = std::max(dist, std::fabs(a.point[j] - s.point[j]));
        if (dist <= 1e-6) dup = true;
      }
      if (!dup) anchors.push_back(s);
    }
    cands.insert(cands.end(), polished.begin(), polished.end());
  }

  auto feasible_at = [&fp, dims](const std::vector<double>& pt, double slack) {
    std::vector<double> x(fp.k, 0.0);
    for (std::size_t j = 0; j < dims; ++j) x[j] = pt[j];
    for (std::size_t fn = 1; fn < fp.blocks.size(); ++fn)
      if (flat_eval(fp, fn, x.data(), dims) > slack) return false;
    return true;
  };

  for (int round = 1; round < rounds; ++round) {
    const double r = 0.75 * h;
    h /= 8.0;
    const double slack = 1e-9 + h * h * l;
    // The incumbent was judged with the previous, larger slack; keep it only
    // if it survives the tighter one.
    ScanBest next;
    if (best.found && feasible_at(best.point, slack)) next = best;
    // Basin ambiguity matters in the first refinement only.
    const int live = round == 1 ? std::min<int>(static_cast<int>(cands.size()), 2 * keep)
                                : std::min(keep, 2);
    // Rank basins by their polished (exactly feasible) value: raw grid
    // values at loose slack overstate a basin and would evict better ones.
    for (auto& c : cands) {
      if (!c.found) continue;
      Vector yc = Vector::zeros(dims);
      for (std::size_t j = 0; j < dims; ++j) yc.ref(j) = c.point[j];
      const Vector xp = polish_feasible_box(p, yc, radius);
      if (is_feasible(p, xp, 1e-9))
        c.value = std::max(c.value, eval_quadratic(p.objective, xp));
    }
    std::sort(cands.begin(), cands.end(), [](const ScanBest& a, const ScanBest& b) {
      if (a.found != b.found) return a.found;
      return a.value < b.value;
    });
    std::vector<ScanBest> next_cands(static_cast<std::size_t>(live));
    int used = 0;
    std::vector<std::vector<double>> scanned;
    for (const auto& c : cands) {
      if (!c.found || used >= live) continue;
      std::vector<double> center = c.point;
      center.resize(dims, 0.0);
      bool dup = false;
      for (const auto& s : scanned) {
        double dist = 0.0;
        for (std::size_t j = 0; j < dims; ++j)
          dist = std::max(dist, std::fabs(s[j] - center[j]));
        if (dist <= 1e-12) dup = true;
      }
      if (dup) continue;
      scanned.push_back(center);
      ++used;
      const std::size_t hits =
          scan_box(fp, dims, center, r, h, radius, slack, next, &next_cands, 3.0 * h);
      if (hits == 0) {
        // The tighter slack emptied this box (the center was riding the
        // previous slack). Land back on F and rescan there.
        Vector yc = Vector::zeros(dims);
        for (std::size_t j = 0; j < dims; ++j) yc.ref(j) = center[j];
        const Vector xp = polish_feasible_box(p, yc, radius);
        if (is_feasible(p, xp, 1e-9)) {
          std::vector<double> pc(dims);
          for (std::size_t j = 0; j < dims; ++j)
            pc[j] = std::min(std::max(xp[j], -radius), radius);
          scan_box(fp, dims, pc, r, h, radius, slack, next, &next_cands, 3.0 * h);
        }
      }
    }
    for (const auto& a : anchors) {
      std::vector<double> center = a.point;
      center.resize(dims, 0.0);
      scan_box(fp, dims, center, 3.0 * h, h, radius, slack, next, &next_cands,
               3.0 * h);
    }
    if (!next.found) {
      // Nothing survives the tighter slack (degenerate feasible interior):
      // the previous round is the finest productive resolution.
      h *= 8.0;
      break;
    }
    best = next;
    for (auto& c : next_cands)
      if (!c.found) c = best;  // keep refining around the incumbent
    cands = next_cands;
  }
  return assemble(best, radius, h, dims, fp.k);
}

Vector minimal_norm_level_point(const Problem& p_in, double a, double radius,
                                double grid_step) {
  const Problem p = normalize_problem(p_in);
  const FlatProblem fp = flatten(p);
  const std::size_t dims = std::min<std::size_t>(fp.k, 6);
  // Plain feasibility here: the curvature slack of the minimizing scan would
  // admit off-set points with spuriously small norms.
  const double slack = 1e-9;

  std::vector<double> lo(dims, -radius);
  std::vector<int> counts(dims,
                          std::max(1, static_cast<int>(std::floor(2.0 * radius / grid_step + 1.5))));
  std::vector<int> idx(dims, 0);
  std::vector<double> x(fp.k, 0.0);
  bool found = false;
  double best_norm = std::numeric_limits<double>::infinity();
  std::vector<double> best_pt(dims, 0.0);

  for (;;) {
    for (std::size_t j = 0; j < dims; ++j) x[j] = lo[j] + idx[j] * grid_step;
    bool ok = flat_eval(fp, 0, x.data(), dims) <= a + 1e-9;
    for (std::size_t fn = 1; fn < fp.blocks.size() && ok; ++fn)
      if (flat_eval(fp, fn, x.data(), dims) > slack) ok = false;
    if (ok) {
      double n2 = 0.0;
      for (std::size_t j = 0; j < dims; ++j) n2 += x[j] * x[j];
      bool better = !found || n2 < best_norm - 1e-12;
      if (!better && found && n2 <= best_norm + 1e-12) {
        // lexicographic tie-break
        for (std::size_t j = 0; j < dims; ++j) {
          if (x[j] < best_pt[j] - 1e-15) {
            better = true;
            break;
          }
          if (x[j] > best_pt[j] + 1e-15) break;
        }
      }
      if (better) {
        found = true;
        best_norm = n2;
        best_pt.assign(x.begin(), x.begin() + dims);
      }
    }
    std::size_t j = 0;
    for (; j < dims; ++j) {
      if (++idx[j] < counts[j]) break;
      idx[j] = 0;
    }
    if (j == dims) break;
  }
  if (!found) throw EmptyLevelSet("minimal_norm_level_point: empty level set in the box");
  Vector out = Vector::zeros(dims);
  for (std::size_t j = 0; j < dims; ++j) out.ref(j) = best_pt[j];
  return out;
}

}  // namespace qpcert
