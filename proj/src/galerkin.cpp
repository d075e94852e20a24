#include "qpcert/galerkin.hpp"

#include <algorithm>
#include <cmath>

#include "qpcert/errors.hpp"
#include "qpcert/form_class.hpp"
#include "qpcert/gtrs.hpp"

namespace qpcert {

const char* to_string(SweepReport::Diagnosis d) {
  switch (d) {
    case SweepReport::Diagnosis::ATTAINMENT_LIKELY: return "ATTAINMENT_LIKELY";
    case SweepReport::Diagnosis::NON_ATTAINMENT_SIGNATURE:
      return "NON_ATTAINMENT_SIGNATURE";
    case SweepReport::Diagnosis::INCONCLUSIVE: return "INCONCLUSIVE";
  }
  return "?";
}

Problem truncate(const Problem& p, std::size_t n) {
  if (p.space.is_finite())
    throw InvalidDimension("truncate: input is already finite-dimensional");
  const Problem q = normalize_problem(p);
  if (n < head_dim(q))
    throw InvalidDimension("truncate: level below the head dimension");

  Problem out;
  out.space = SpaceDesc::finite(n);
  auto cut = [n](const QuadraticFunction& g) {
    QuadraticFunction r;
    r.op = padded(g.op, n);
    r.op.tail = 0.0;
    r.lin = padded(g.lin, n);
    r.constant = g.constant;
    return r;
  };
  out.objective = cut(q.objective);
  for (const auto& g : q.constraints) out.constraints.push_back(cut(g));
  return out;
}

Problem discretized_multiplication_problem(std::size_t n) {
  if (n < 2) throw InvalidDimension("discretized_multiplication_problem: n >= 2");
  Problem p;
  p.space = SpaceDesc::finite(n);
  std::vector<double> diag(n);
  Vector lin = Vector::zeros(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = (static_cast<double>(j) + 0.5) / static_cast<double>(n);
    diag[j] = t / static_cast<double>(n);
    lin.ref(j) = -1.0 / (std::sqrt(t) * static_cast<double>(n));
  }
  p.objective.op = Operator::diagonal(diag);
  QuadraticFunction g;
  g.op = Operator::zero(n);
  g.lin = lin;
  g.constant = 1.0;
  p.constraints.push_back(g);
  return p;
}

double multiplication_witness_value(std::size_t n) {
  const double nn = static_cast<double>(n);
  return 0.5 * nn * (1.0 / (nn * nn) - 1.0 / (nn * nn * nn * nn));
}

namespace {

struct LevelResult {
  double inf = 0.0;
  double norm = 0.0;
  std::string note;
};

LevelResult solve_level(const Problem& p) {
  LevelResult r;
  const Problem eff = drop_vacuous_constraints(p);
  const bool legendre = classify_form(eff.objective.op, eff.space).legendre;
  if (eff.m() == 1 && legendre) {
    const Solution s = solve_single_constraint(eff);
    r.inf = s.value;
    r.norm = norm(s.point);
    r.note = "single-constraint solver";
    return r;
  }
  const std::size_t dims = std::min<std::size_t>(head_dim(eff), 6);
  const double step = dims >= 6 ? 1.0 : dims == 5 ? 0.8 : 0.5;
  const OracleResult o = oracle_refined(eff, 8.0, step);
  if (!o.argmin) throw InfeasibleProblem("sweep: no feasible grid point at a level");
  r.inf = o.inf_estimate;
  r.norm = norm(*o.argmin);
  r.note = o.exhaustive ? "grid oracle" : "grid oracle over the first 6 coordinates";
  return r;
}

SweepReport::Diagnosis diagnose(const std::vector<double>& inf_values,
                                const std::vector<double>& norms) {
  if (inf_values.size() < 3) return SweepReport::Diagnosis::INCONCLUSIVE;
  const std::size_t n = inf_values.size();
  const double d1 = std::fabs(inf_values[n - 2] - inf_values[n - 3]);
  const double d2 = std::fabs(inf_values[n - 1] - inf_values[n - 2]);
  const double scale = std::max(1.0, std::fabs(inf_values[n - 1]));
  const bool convergent = d2 <= std::max(0.7 * d1, 1e-9 * scale);

  double norm_lo = norms.front(), norm_hi = norms.front();
  for (double v : norms) {
    norm_lo = std::min(norm_lo, v);
    norm_hi = std::max(norm_hi, v);
  }
  const bool norms_grow = norm_hi >= 2.0 * std::max(norm_lo, 1e-12) &&
                          norms.back() > norms.front();
  const bool norms_plateau = norm_hi <= 1.5 * std::max(norm_lo, 1e-12);

  if (convergent && norms_grow) return SweepReport::Diagnosis::NON_ATTAINMENT_SIGNATURE;
  if (norms_plateau && d2 <= 1e-6 * scale) return SweepReport::Diagnosis::ATTAINMENT_LIKELY;
  return SweepReport::Diagnosis::INCONCLUSIVE;
}

}  // namespace

SweepReport sweep_family(const std::function<Problem(std::size_t)>& family,
                         const std::vector<std::size_t>& levels) {
  for (std::size_t i = 1; i < levels.size(); ++i)
    if (levels[i] <= levels[i - 1])
      throw PreconditionViolation("sweep: levels must be ascending");
  SweepReport rep;
  rep.levels = levels;
  for (std::size_t n : levels) {
    const LevelResult lr = solve_level(family(n));
    rep.inf_values.push_back(lr.inf);
    rep.minimizer_norms.push_back(lr.norm);
    if (rep.notes.empty() || rep.notes.back() != "per-level method: " + lr.note)
      rep.notes.push_back("per-level method: " + lr.note);
  }
  rep.diagnosis = diagnose(rep.inf_values, rep.minimizer_norms);
  rep.notes.push_back(
      "diagnosis is a heuristic signature (value convergence + norm growth), "
      "not a certificate");
  return rep;
}

SweepReport sweep(const Problem& p, const std::vector<std::size_t>& levels) {
  return sweep_family([&p](std::size_t n) { return truncate(p, n); }, levels);
}

}  // namespace qpcert
