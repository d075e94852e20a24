#include "qpcert/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qpcert/constants.hpp"
#include "qpcert/errors.hpp"

namespace qpcert {

namespace {

double off_diag_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j) s += 2.0 * a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace

EigResult eig_sym(const Matrix& b) {
  const std::size_t n = b.rows();
  if (b.cols() != n) throw ConvergenceFailure("eig_sym: matrix not square");
  EigResult out;
  if (n == 0) {
    out.vectors = Matrix(0, 0);
    return out;
  }

  Matrix a = b;
  Matrix v = Matrix::identity(n);
  const double scale = std::max(1.0, fro_norm(b));
  const double stop = 1e-12 * scale;
  const int max_sweeps = 64;

  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    if (off_diag_norm(a) <= stop) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::fabs(apq) <= 1e-300) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        // Classic two-sided rotation zeroing a(p,q).
        const double theta = 0.5 * (a(q, q) - a(p, p)) / apq;
        double t = 1.0 / (std::fabs(theta) + std::sqrt(1.0 + theta * theta));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        const double h = t * apq;
        a(p, p) -= h;
        a(q, q) += h;
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r != p && r != q) {
            const double arp = a(r, p);
            const double arq = a(r, q);
            a(r, p) = arp - s * (arq + tau * arp);
            a(p, r) = a(r, p);
            a(r, q) = arq + s * (arp - tau * arq);
            a(q, r) = a(r, q);
          }
          const double vrp = v(r, p);
          const double vrq = v(r, q);
          v(r, p) = vrp - s * (vrq + tau * vrp);
          v(r, q) = vrq + s * (vrp - tau * vrq);
        }
      }
    }
  }
  if (sweep == max_sweeps && off_diag_norm(a) > stop)
    throw ConvergenceFailure("eig_sym: Jacobi sweep cap reached");

  // Ascending sort, stable in the original column index for determinism.
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = a(idx[j], idx[j]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, idx[j]);
  }
  return out;
}

double eig_min(const Matrix& b) {
  if (b.rows() == 0) return 0.0;
  return eig_sym(b).values.front();
}

bool is_psd_block(const Matrix& b) {
  if (b.rows() == 0) return true;
  return eig_min(b) >= -kPsdTol * std::max(1.0, fro_norm(b));
}

Matrix nullspace_basis(const Matrix& b, double tol_scale) {
  const std::size_t n = b.rows();
  if (n == 0) return Matrix(0, 0);
  if (tol_scale < 0.0) tol_scale = kNullspaceTol * std::max(1.0, fro_norm(b));
  const EigResult e = eig_sym(b);
  std::size_t count = 0;
  for (double lam : e.values)
    if (std::fabs(lam) <= tol_scale) ++count;
  Matrix z(n, count);
  std::size_t k = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (std::fabs(e.values[j]) > tol_scale) continue;
    for (std::size_t i = 0; i < n; ++i) z(i, k) = e.vectors(i, j);
    ++k;
  }
  return z;
}

}  // namespace qpcert
