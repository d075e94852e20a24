#pragma once

#include <vector>

#include "qpcert/matrix.hpp"

namespace qpcert {

/// Eigendecomposition of a symmetric matrix. values ascending; vectors(:,j)
/// is the unit eigenvector for values[j].
struct EigResult {
  std::vector<double> values;
  Matrix vectors;
};

/// Cyclic Jacobi iteration. Deterministic for identical input bits; throws
/// ConvergenceFailure when the sweep cap is hit (does not happen for
/// symmetric input at desk scale).
EigResult eig_sym(const Matrix& b);

double eig_min(const Matrix& b);

/// True when eigmin(B) >= -kPsdTol * max(1, ||B||_F).
bool is_psd_block(const Matrix& b);

/// Orthonormal basis (columns) of the numerical nullspace: eigenvectors with
/// |eigenvalue| <= tol_scale. Default tol_scale: kNullspaceTol * max(1, ||B||_F).
Matrix nullspace_basis(const Matrix& b, double tol_scale = -1.0);

}  // namespace qpcert
