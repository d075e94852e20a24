#include "qpcert/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qpcert/eig.hpp"
#include "qpcert/errors.hpp"
#include "qpcert/feasibility.hpp"
#include "qpcert/search.hpp"

namespace qpcert {

const char* to_string(BoundednessVerdict::Status s) {
  switch (s) {
    case BoundednessVerdict::Status::BOUNDED: return "BOUNDED";
    case BoundednessVerdict::Status::UNBOUNDED: return "UNBOUNDED";
    case BoundednessVerdict::Status::UNKNOWN: return "UNKNOWN";
  }
  return "?";
}

const char* to_string(Certificate::Exists e) {
  switch (e) {
    case Certificate::Exists::YES: return "YES";
    case Certificate::Exists::NO_UNBOUNDED: return "NO_UNBOUNDED";
    case Certificate::Exists::UNKNOWN: return "UNKNOWN";
  }
  return "?";
}

const char* to_string(Certificate::Rule r) {
  switch (r) {
    case Certificate::Rule::FW1: return "FW1";
    case Certificate::Rule::SingleConstraint: return "SingleConstraint";
    case Certificate::Rule::Eaves: return "Eaves";
    case Certificate::Rule::FW2: return "FW2";
    case Certificate::Rule::Corollary1: return "Corollary1";
    case Certificate::Rule::Corollary2: return "Corollary2";
    case Certificate::Rule::Corollary3: return "Corollary3";
    case Certificate::Rule::Corollary4: return "Corollary4";
    case Certificate::Rule::None: return "None";
  }
  return "?";
}

const char* rule_display_name(Certificate::Rule r) {
  switch (r) {
    case Certificate::Rule::FW1: return "Frank-Wolfe type 1";
    case Certificate::Rule::SingleConstraint:
      return "single constraint (generalized trust region)";
    case Certificate::Rule::Eaves: return "Eaves type";
    case Certificate::Rule::FW2: return "Frank-Wolfe type 2 (compact, closed range)";
    case Certificate::Rule::Corollary1: return "corollary: linear constraints";
    case Certificate::Rule::Corollary2: return "corollary: zero linear parts";
    case Certificate::Rule::Corollary3: return "corollary: trivial zero-form set";
    case Certificate::Rule::Corollary4: return "corollary: unconstrained";
    case Certificate::Rule::None: return "none";
  }
  return "?";
}

Vector slater_point(const Problem& p, std::size_t i) {
  const QuadraticFunction& g = p.constraints.at(i);
  const UnconstrainedMin um = unconstrained_argmin(g);
  if (um.bounded) {
    if (um.value <= -kConditionATol) return um.point;
    throw NoSlaterPoint("slater_point: min g_" + std::to_string(i + 1) + " = " +
                        std::to_string(um.value) + " >= 0");
  }
  // g is convex, so the descent ray lives in ker(T_i) and g decreases
  // linearly along it: g(t * ray) = t <c_i, ray> + alpha_i.
  const double slope = dot(g.lin, um.ray);
  const double t = std::max(0.0, (g.constant + 1.0) / (-slope));
  return axpy(t, um.ray, Vector::zeros(um.ray.size()));
}

namespace {

double pattern_probe_min(const Problem& p, const Vector& start,
                         std::uint64_t seed) {
  const std::size_t k = std::max<std::size_t>(head_dim(p), 1);
  double best = eval_quadratic(p.objective, start);
  const std::vector<Vector> starts =
      feasible_samples(p, start, 4.0, 6, seed ^ 0x9245ULL);
  std::vector<Vector> all = starts;
  all.push_back(start);
  for (const Vector& s0 : all) {
    Vector x = padded(s0, k);
    double v = eval_quadratic(p.objective, x);
    double step = 1.0;
    for (int it = 0; it < 300 && step > 1e-9; ++it) {
      bool improved = false;
      for (std::size_t j = 0; j < k; ++j) {
        for (double dir : {+1.0, -1.0}) {
          Vector y = x;
          y.ref(j) += dir * step;
          if (inf_norm(y) > 1024.0) continue;
          y = restore_to_feasible(p, x, y);
          const double vy = eval_quadratic(p.objective, y);
          if (vy < v - 1e-14) {
            x = y;
            v = vy;
            improved = true;
          }
        }
      }
      if (!improved) step *= 0.5;
    }
    best = std::min(best, v);
  }
  return best;
}

// Constraints with a nonzero psd operator, zero linear part and zero
// constant pin the feasible set inside the kernel of their operator
// exactly: g_i(x) = <x, T_i x>/2 <= 0 iff T_i x = 0. Restricting to that
// subspace removes the constraint and is an equivalence, not a relaxation.
struct ForcedReduction {
  bool applies = false;
  Matrix w;          // K x r head basis of the forced subspace
  bool tail_alive = false;
  Problem reduced;
};

ForcedReduction forced_subspace_reduction(const Problem& p) {
  ForcedReduction out;
  const std::size_t k = head_dim(p);
  std::vector<std::size_t> forced;
  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    const auto& g = p.constraints[i];
    if (!is_zero_operator(g.op) && support_dim(g.lin, 0.0) == 0 && g.constant == 0.0)
      forced.push_back(i);
  }
  if (forced.empty()) return out;

  Matrix gram(k, k);
  for (std::size_t i : forced) {
    const Operator gi = padded(p.constraints[i].op, k);
    const Matrix sq = matmul(gi.block, gi.block);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) gram(a, b) += sq(a, b);
  }
  out.w = nullspace_basis(gram);
  out.tail_alive = !p.space.is_finite();
  for (std::size_t i : forced)
    if (p.constraints[i].op.tail > 0.0) out.tail_alive = false;
  out.applies = true;

  const std::size_t r = out.w.cols();
  Problem q;
  q.space = out.tail_alive ? SpaceDesc::sequence() : SpaceDesc::finite(std::max<std::size_t>(r, 1));
  auto reduce_fn = [&](const QuadraticFunction& g) {
    QuadraticFunction rq;
    const Operator op = padded(g.op, k);
    rq.op.block = congruence(op.block, out.w);
    rq.op.tail = out.tail_alive ? op.tail : 0.0;
    rq.lin = matvec_t(out.w, padded(g.lin, k));
    rq.constant = g.constant;
    return rq;
  };
  q.objective = reduce_fn(p.objective);
  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    bool is_forced = std::find(forced.begin(), forced.end(), i) != forced.end();
    if (!is_forced) q.constraints.push_back(reduce_fn(p.constraints[i]));
  }
  out.reduced = drop_vacuous_constraints(q);
  return out;
}

Vector lift_from_reduction(const ForcedReduction& fr, const Vector& v,
                           std::size_t ambient_head) {
  const std::size_t r = fr.w.cols();
  Vector head_part = Vector::zeros(r);
  for (std::size_t j = 0; j < r && j < v.size(); ++j) head_part.ref(j) = v[j];
  Vector out = padded(matvec(fr.w, head_part), ambient_head);
  for (std::size_t j = r; j < v.size(); ++j) {
    out = padded(out, ambient_head + (j - r) + 1);
    out.ref(ambient_head + (j - r)) = v[j];
  }
  return out;
}

}  // namespace

BoundednessVerdict check_bounded_below(const Problem& p_in, const AnalyzeOptions& opts) {
  BoundednessVerdict out;
  const Problem p = drop_vacuous_constraints(normalize_problem(p_in));
  const std::size_t k = head_dim(p);

  if (p.m() == 0) {
    const UnconstrainedMin um = unconstrained_argmin(p.objective);
    if (um.bounded) {
      out.status = BoundednessVerdict::Status::BOUNDED;
      out.lower_bound = um.value;
      out.notes.push_back("exact unconstrained quadratic analysis");
    } else {
      // Rescale so the descent is monotone from t = 1 on.
      const double form = quad_value(p.objective.op, um.ray);
      const double slope = dot(gradient(p.objective, Vector::zeros(k)), um.ray);
      Vector ray = um.ray;
      if (form < 0.0) ray = std::max(1.0, 2.0 * std::fabs(slope) / -form) * ray;
      out.status = BoundednessVerdict::Status::UNBOUNDED;
      out.witness_ray = ray;
      out.base_point = Vector::zeros(k);
      out.notes.push_back("unconstrained descent direction");
    }
    return out;
  }

  const auto feasible = find_feasible_point(p, opts.seed);
  if (!feasible)
    throw InfeasibleProblem("check_bounded_below: no feasible point found");

  // Equality-forcing constraints reduce the problem exactly; recurse on the
  // restriction (strictly fewer constraints each time).
  const ForcedReduction fr = forced_subspace_reduction(p);
  if (fr.applies) {
    if (fr.w.cols() == 0 && !fr.tail_alive) {
      out.status = BoundednessVerdict::Status::BOUNDED;
      out.lower_bound = eval_quadratic(p.objective, Vector::zeros(k));
      out.notes.push_back("feasible set pinned to the origin");
      return out;
    }
    BoundednessVerdict inner = check_bounded_below(fr.reduced, opts);
    inner.notes.insert(inner.notes.begin(),
                       "after restriction to the subspace forced by equality "
                       "constraints");
    if (inner.status == BoundednessVerdict::Status::UNBOUNDED) {
      inner.witness_ray = lift_from_reduction(fr, inner.witness_ray, k);
      inner.base_point = lift_from_reduction(fr, inner.base_point, k);
      if (!verify_unbounded(p, inner.base_point, inner.witness_ray)) {
        inner.status = BoundednessVerdict::Status::UNKNOWN;
        inner.notes.push_back("lifted ray failed re-verification");
      }
    }
    return inner;
  }

  const ConeAnalysis ca = analyze_cone(p);
  if (const auto ub = unbounded_ray_scan(p, ca, *feasible)) {
    out.status = BoundednessVerdict::Status::UNBOUNDED;
    out.witness_ray = ub->ray;
    out.base_point = ub->base;
    out.notes.push_back(ub->reason);
    return out;
  }

  if (p.m() == 1) {
    try {
      const Solution sol = solve_single_constraint(p);
      out.status = BoundednessVerdict::Status::BOUNDED;
      out.lower_bound = sol.value;
      out.multiplier = sol.multiplier;
      out.notes.push_back("single-constraint multiplier certificate");
      return out;
    } catch (const NotBoundedBelow& e) {
      if (!e.ray.empty()) {
        out.status = BoundednessVerdict::Status::UNBOUNDED;
        out.witness_ray = Vector(e.ray);
        out.base_point = Vector(e.base);
        out.notes.push_back(e.what());
        return out;
      }
      out.status = BoundednessVerdict::Status::UNKNOWN;
      out.best_probe = pattern_probe_min(p, *feasible, opts.seed);
      out.notes.push_back(e.what());
      out.notes.push_back(
          "duality says unbounded, but no affine descent ray exists to attach");
      return out;
    } catch (const NoSlaterPoint& e) {
      out.status = BoundednessVerdict::Status::UNKNOWN;
      out.best_probe = pattern_probe_min(p, *feasible, opts.seed);
      out.notes.push_back(e.what());
      return out;
    } catch (const HardCaseNoRay& e) {
      out.status = BoundednessVerdict::Status::UNKNOWN;
      out.best_probe = pattern_probe_min(p, *feasible, opts.seed);
      out.notes.push_back(e.what());
      return out;
    }
  }

  // m >= 2: probe only. Ray sampling found nothing above; report the best
  // value seen by the pattern search and a capped oracle pass.
  out.status = BoundednessVerdict::Status::UNKNOWN;
  double probe = pattern_probe_min(p, *feasible, opts.seed);
  if (k <= 4) {
    const OracleResult orc = oracle_refined(p, 64.0, 4.0, 6, 4);
    if (orc.argmin) probe = std::min(probe, orc.inf_estimate);
  }
  out.best_probe = probe;
  out.notes.push_back("multi-constraint case: sampled probes only");
  return out;
}

namespace {

Verdict verdict_from_bool(bool holds, std::string note) {
  Verdict v;
  v.status = holds ? Verdict::Status::HOLDS : Verdict::Status::VIOLATED;
  v.notes.push_back(std::move(note));
  return v;
}

// Grid-stable attained minimizer: attained strictly inside the box at two
// radii with matching values. Operationally "directly verified" at desk
// scale; sound for head-supported minima, which is exactly the guarded case
// (finite space or nonnegative objective tail). The argmins are polished
// onto the exact feasible set before comparison: grid points carry a
// slack-level infeasibility whose value artifact would otherwise leak into
// the witness.
std::optional<std::pair<Vector, double>> oracle_verified_minimizer(
    const Problem& p, const AnalyzeOptions& opts) {
  if (!p.space.is_finite() && p.objective.op.tail < 0.0) return std::nullopt;
  if (head_dim(p) > 6) return std::nullopt;
  const OracleResult r1 = oracle_refined(p, opts.oracle_radius, opts.oracle_step);
  if (!r1.argmin || !r1.attained_in_box || !r1.exhaustive) return std::nullopt;
  const OracleResult r2 =
      oracle_refined(p, 2.0 * opts.oracle_radius, 2.0 * opts.oracle_step);
  if (!r2.argmin || !r2.attained_in_box) return std::nullopt;

  const Vector x1 = polish_feasible(p, *r1.argmin);
  const Vector x2 = polish_feasible(p, *r2.argmin);
  if (!is_feasible(p, x1, 1e-9) || !is_feasible(p, x2, 1e-9)) return std::nullopt;
  const double v1 = eval_quadratic(p.objective, x1);
  const double v2 = eval_quadratic(p.objective, x2);

  double curv = fro_norm(p.objective.op.block) + std::fabs(p.objective.op.tail);
  double grad = norm(gradient(p.objective, x2));
  for (const auto& g : p.constraints)
    curv = std::max(curv, fro_norm(g.op.block) + std::fabs(g.op.tail));
  curv = std::max(1.0, curv);
  const double tol =
      1e-9 + (r1.grid_step + r2.grid_step) * (1.0 + grad) * std::sqrt(2.0 * curv) +
      20.0 * curv * (r1.grid_step * r1.grid_step + r2.grid_step * r2.grid_step);
  // Stable raw grid values, or stable polished values: either settles the
  // location of the minimum across the two boxes.
  const bool raw_stable = std::fabs(r1.inf_estimate - r2.inf_estimate) <=
                          tol * std::max(1.0, std::fabs(r1.inf_estimate));
  const bool polished_stable =
      std::fabs(v1 - v2) <= tol * std::max(1.0, std::fabs(v1));
  if (!raw_stable && !polished_stable) return std::nullopt;
  return v1 < v2 ? std::make_pair(x1, v1) : std::make_pair(x2, v2);
}

}  // namespace

Analysis analyze_problem(const Problem& p_in, const AnalyzeOptions& opts) {
  const ValidationReport vr = validate_problem(p_in);
  if (!vr.ok()) throw ValidationFailure("analyze_problem: " + vr.issues.front().message);

  Analysis a;
  a.normalized = normalize_problem(p_in);
  const Problem eff = drop_vacuous_constraints(a.normalized);

  a.objective_class = classify_form(a.normalized.objective.op, a.normalized.space);
  for (const auto& g : a.normalized.constraints)
    a.constraint_classes.push_back(classify_form(g.op, a.normalized.space));

  a.feasible_point = find_feasible_point(eff, opts.seed);
  if (!a.feasible_point)
    throw InfeasibleProblem("analyze_problem: no feasible point found");

  a.cone = analyze_cone(eff);
  a.cond_a = check_condition_A(eff, a.cone, opts.seed);
  a.eaves = check_eaves(eff, a.cone, a.feasible_point, opts.seed);
  a.bounded = check_bounded_below(eff, opts);

  Certificate& cert = a.certificate;

  // Hypothesis table, in rendering order.
  {
    Verdict feas;
    feas.status = Verdict::Status::HOLDS;
    feas.witness = a.feasible_point;
    const double worst = eff.m() == 0
                             ? 0.0
                             : max_constraint_value(eff, *a.feasible_point);
    feas.notes.push_back("max constraint value at the point: " + std::to_string(worst) +
                         " (reporting tolerance " + std::to_string(opts.report_tol) + ")");
    cert.hypotheses.emplace_back("feasible", feas);
  }
  {
    Verdict leg = verdict_from_bool(
        a.objective_class.legendre,
        a.normalized.space.is_finite()
            ? "finite-dimensional space: every continuous form qualifies"
            : "sequence space: tail = " + std::to_string(a.objective_class.tail));
    if (borderline_tail(a.objective_class))
      leg.notes.push_back("borderline tail below 1e-12, classified by literal sign");
    cert.hypotheses.emplace_back("objective_legendre", leg);
  }
  {
    Verdict b;
    switch (a.bounded.status) {
      case BoundednessVerdict::Status::BOUNDED:
        b.status = Verdict::Status::HOLDS;
        b.notes.push_back("lower bound " + std::to_string(a.bounded.lower_bound));
        if (a.bounded.multiplier)
          b.notes.push_back("multiplier " + std::to_string(*a.bounded.multiplier));
        break;
      case BoundednessVerdict::Status::UNBOUNDED:
        b.status = Verdict::Status::VIOLATED;
        b.witness = a.bounded.witness_ray;
        b.witness_point = a.bounded.base_point;
        break;
      case BoundednessVerdict::Status::UNKNOWN:
        b.status = Verdict::Status::UNKNOWN;
        b.notes.push_back("best probe " + std::to_string(a.bounded.best_probe));
        break;
    }
    for (const auto& n : a.bounded.notes) b.notes.push_back(n);
    cert.hypotheses.emplace_back("bounded_below", b);
  }
  cert.hypotheses.emplace_back("condition_A", a.cond_a.verdict);
  {
    bool all_ccr = a.objective_class.compact_closed_range;
    std::string which = all_ccr ? "" : "objective";
    for (std::size_t i = 0; i < a.constraint_classes.size(); ++i)
      if (!a.constraint_classes[i].compact_closed_range) {
        all_ccr = false;
        if (!which.empty()) which += ", ";
        which += "constraint " + std::to_string(i + 1);
      }
    cert.hypotheses.emplace_back(
        "compact_closed_range_all",
        verdict_from_bool(all_ccr, all_ccr ? "all operators have zero tail"
                                           : "nonzero tail: " + which));
  }
  cert.hypotheses.emplace_back("eaves_ii", a.eaves.cond_ii);
  cert.hypotheses.emplace_back("eaves_iii", a.eaves.cond_iii);

  auto hyp = [&cert](const std::string& name) -> const Verdict& {
    for (const auto& [n, v] : cert.hypotheses)
      if (n == name) return v;
    static const Verdict unknown;
    return unknown;
  };
  const bool legendre = hyp("objective_legendre").status == Verdict::Status::HOLDS;
  const bool bounded = a.bounded.status == BoundednessVerdict::Status::BOUNDED;
  const bool cond_a = a.cond_a.verdict.status == Verdict::Status::HOLDS;
  const bool all_ccr = hyp("compact_closed_range_all").status == Verdict::Status::HOLDS;
  const bool eaves_ok = a.eaves.cond_ii.status == Verdict::Status::HOLDS &&
                        a.eaves.cond_iii.status == Verdict::Status::HOLDS;

  // Rule table, priority order fixed. Shortcut-settled Condition A refines
  // the first rule's label to the matching corollary.
  if (legendre && bounded && cond_a) {
    cert.exists = Certificate::Exists::YES;
    switch (a.cond_a.shortcut) {
      case CondAShortcut::NoQuadraticConstraints:
        cert.fired_rule = eff.m() == 0 ? Certificate::Rule::Corollary4
                                       : Certificate::Rule::Corollary1;
        break;
      case CondAShortcut::ZeroLinearOnI1:
        cert.fired_rule = Certificate::Rule::Corollary2;
        break;
      case CondAShortcut::TrivialZeroSet:
        cert.fired_rule = Certificate::Rule::Corollary3;
        break;
      default:
        cert.fired_rule = Certificate::Rule::FW1;
    }
  } else if (eff.m() == 1 && legendre && bounded) {
    cert.exists = Certificate::Exists::YES;
    cert.fired_rule = Certificate::Rule::SingleConstraint;
  } else if (all_ccr && bounded && cond_a) {
    cert.exists = Certificate::Exists::YES;
    cert.fired_rule = Certificate::Rule::FW2;
  } else if (legendre && cond_a && eaves_ok) {
    cert.exists = Certificate::Exists::YES;
    cert.fired_rule = Certificate::Rule::Eaves;
  } else if (a.bounded.status == BoundednessVerdict::Status::UNBOUNDED) {
    cert.exists = Certificate::Exists::NO_UNBOUNDED;
    cert.fired_rule = Certificate::Rule::None;
    cert.notes.push_back("objective decreases without bound along the recorded ray");
  } else {
    cert.exists = Certificate::Exists::UNKNOWN;
    cert.fired_rule = Certificate::Rule::None;
  }

  // Witness attachment. The theorems are existence statements; the witness
  // comes from the constructive solver (m = 1) or the grid oracle.
  if (cert.exists == Certificate::Exists::YES) {
    if (eff.m() == 1) {
      try {
        const Solution s = solve_single_constraint(eff);
        cert.witness_point = s.point;
        cert.witness_value = s.value;
        cert.notes.push_back("witness from the single-constraint solver");
      } catch (const Error& e) {
        cert.notes.push_back(std::string("constructive solve unavailable: ") + e.what());
      }
    } else if (eff.m() == 0) {
      const UnconstrainedMin um = unconstrained_argmin(eff.objective);
      if (um.bounded) {
        cert.witness_point = um.point;
        cert.witness_value = um.value;
        cert.notes.push_back("witness from the exact unconstrained minimization");
      }
    }
    if (!cert.witness_point) {
      if (const auto w = oracle_verified_minimizer(eff, opts)) {
        cert.witness_point = w->first;
        cert.witness_value = w->second;
        cert.notes.push_back("witness from the grid oracle");
      } else if (head_dim(eff) <= 6 &&
                 (eff.space.is_finite() || eff.objective.op.tail >= 0.0)) {
        // Existence is already rule-certified; attach the best polished grid
        // point as the witness.
        const OracleResult orc =
            oracle_refined(eff, opts.oracle_radius, opts.oracle_step);
        if (orc.argmin) {
          const Vector x = polish_feasible(eff, *orc.argmin);
          if (is_feasible(eff, x, kFeasTol)) {
            cert.witness_point = x;
            cert.witness_value = eval_quadratic(eff.objective, x);
            cert.notes.push_back("witness from the polished grid argmin");
          }
        }
      }
    }
  } else if (cert.exists == Certificate::Exists::UNKNOWN) {
    // Verdict upgrading: a directly verified minimizer settles existence by
    // itself; the rules above are sufficient conditions only.
    if (const auto w = oracle_verified_minimizer(eff, opts)) {
      cert.exists = Certificate::Exists::YES;
      cert.fired_rule = Certificate::Rule::None;
      cert.witness_point = w->first;
      cert.witness_value = w->second;
      cert.notes.push_back(
          "no rule fired; upgraded by a grid-stable attained minimizer "
          "(feasibility-checked, value stable across two box radii)");
    }
  }
  return a;
}

Certificate certify_existence(const Problem& p, const AnalyzeOptions& opts) {
  return analyze_problem(p, opts).certificate;
}

}  // namespace qpcert
