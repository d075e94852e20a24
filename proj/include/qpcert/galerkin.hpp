#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qpcert/problem.hpp"

namespace qpcert {

/// Attainment diagnostics across finite-dimensional restrictions. The
/// diagnosis is a heuristic signature, never a certificate; reports carry
/// that label.
struct SweepReport {
  std::vector<std::size_t> levels;
  std::vector<double> inf_values;
  std::vector<double> minimizer_norms;
  enum class Diagnosis { ATTAINMENT_LIKELY, NON_ATTAINMENT_SIGNATURE, INCONCLUSIVE };
  Diagnosis diagnosis = Diagnosis::INCONCLUSIVE;
  std::vector<std::string> notes;
};

const char* to_string(SweepReport::Diagnosis d);

/// Leading n x n section of a sequence-space problem: blocks padded with
/// their tail value on the diagonal, vectors zero-padded. Agrees with the
/// original on every vector supported in the first n coordinates.
Problem truncate(const Problem& p, std::size_t n);

/// Uniform midpoint-grid restriction of the multiplication-operator
/// instance on L2[0,1]: objective form integral of t x(t)^2, one linear
/// constraint <-(1/sqrt(t)), x> + 1 <= 0. Midpoints avoid the t = 0
/// singularity of the constraint density.
Problem discretized_multiplication_problem(std::size_t n);

/// Continuum objective value of the scaled-indicator comparison sequence
/// for that instance: (n/2) * (1/n^2 - 1/n^4).
double multiplication_witness_value(std::size_t n);

/// Per-level minimization: the single-constraint solver when the truncation
/// has one effective constraint, the grid oracle otherwise.
SweepReport sweep(const Problem& p, const std::vector<std::size_t>& levels);

/// Same report over an arbitrary per-level problem family.
SweepReport sweep_family(const std::function<Problem(std::size_t)>& family,
                         const std::vector<std::size_t>& levels);

}  // namespace qpcert
