#pragma once

#include <Eigen/Dense>

namespace gpr {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Eigendecomposition of a symmetric matrix.
/// `values` is sorted non-increasing, `vectors` holds the matching
/// column-orthonormal eigenvectors.
struct EigenDecomp {
  Vector values;
  Matrix vectors;
};

/// Numerical knobs shared by the dense primitives. The defaults are what the
/// rest of the library assumes.
struct LinalgTolerances {
  double symmetry = 1e-12;  // admissible relative asymmetry of "symmetric" inputs
};

/// SVD of a small dense matrix: M = U * diag(s) * V^T with U, V orthogonal
/// and s non-negative, non-increasing.
struct SmallSvd {
  Matrix U;
  Vector s;
  Matrix V;
};

bool is_finite(const Matrix& m);

// Symmetric eigendecomposition. The input is symmetrized as (M + M^T)/2;
// asymmetry beyond tol.symmetry * max(1, ||M||_F) or non-finite entries throw
// std::invalid_argument. Solver stall throws NumericalError with the residual.
EigenDecomp sym_eig(const Matrix& m, const LinalgTolerances& tol = {});

SmallSvd svd_small(const Matrix& m);

// Polar factor U * V^T of the SVD: the orthogonal matrix maximizing
// tr(Q^T M) over O(d). Reflections are permitted.
Matrix nearest_orthogonal(const Matrix& m);

// Frobenius-nearest positive semidefinite matrix: negative eigenvalues are
// clamped to zero.
Matrix project_psd(const Matrix& m, const LinalgTolerances& tol = {});

}  // namespace gpr
