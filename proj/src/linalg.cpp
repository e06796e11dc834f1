#include "linalg.hpp"

#include <sstream>
#include <stdexcept>

#include "errors.hpp"

namespace gpr {

bool is_finite(const Matrix& m) { return m.allFinite(); }

EigenDecomp sym_eig(const Matrix& m, const LinalgTolerances& tol) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw std::invalid_argument("sym_eig: matrix must be square and non-empty");
  }
  if (!m.allFinite()) {
    throw std::invalid_argument("sym_eig: non-finite entries in input");
  }
  const double scale = std::max(1.0, m.norm());
  const double asym = (m - m.transpose()).norm();
  if (asym > tol.symmetry * scale) {
    std::ostringstream os;
    os << "sym_eig: input asymmetry " << asym << " exceeds " << tol.symmetry
       << " * max(1, ||M||_F)";
    throw std::invalid_argument(os.str());
  }
  const Matrix sym = 0.5 * (m + m.transpose());

  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    const double residual =
        (sym - solver.eigenvectors() *
                   solver.eigenvalues().asDiagonal() *
                   solver.eigenvectors().transpose())
            .norm();
    std::ostringstream os;
    os << "sym_eig: eigensolver did not converge (residual " << residual << ")";
    throw NumericalError(os.str());
  }

  // Eigen reports ascending order; flip to non-increasing.
  const Eigen::Index k = sym.rows();
  EigenDecomp out;
  out.values = solver.eigenvalues().reverse();
  out.vectors.resize(k, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    out.vectors.col(j) = solver.eigenvectors().col(k - 1 - j);
  }
  return out;
}

SmallSvd svd_small(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) {
    throw std::invalid_argument("svd_small: empty matrix");
  }
  if (!m.allFinite()) {
    throw std::invalid_argument("svd_small: non-finite entries in input");
  }
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return SmallSvd{svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

Matrix nearest_orthogonal(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("nearest_orthogonal: matrix must be square");
  }
  const SmallSvd svd = svd_small(m);
  return svd.U * svd.V.transpose();
}

Matrix project_psd(const Matrix& m, const LinalgTolerances& tol) {
  const EigenDecomp ed = sym_eig(m, tol);
  const Vector clamped = ed.values.cwiseMax(0.0);
  Matrix out = ed.vectors * clamped.asDiagonal() * ed.vectors.transpose();
  out = 0.5 * (out + out.transpose()).eval();
  return out;
}

}  // namespace gpr
