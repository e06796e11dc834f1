#pragma once

#include <vector>

#include "instance.hpp"

namespace gpr {

/// Output of the alternating local solver for the alignment objective.
struct RefineResult {
  OrthogonalSet transforms;
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
  /// Pairwise objective after each accepted sweep, starting with the value
  /// at the initial point. Non-increasing.
  std::vector<double> objective_history;
};

/// (1/n) * sum_i O_i^T A_i, the unconstrained minimizer of
/// sum_i ||O_i^T A_i - A||_F^2 over A.
Matrix mean_shape(const Instance& instance, const OrthogonalSet& o);

/// Global minimizer of ||O^T A_i - A_hat||_F^2 over O(d): the polar factor
/// of A_i * A_hat^T.
Matrix procrustes_step(const Matrix& a_i, const Matrix& a_hat);

/// Block-coordinate descent: alternate the mean-shape update with per-block
/// Procrustes alignments until the relative objective decrease falls below
/// rel_tol. Each half-step is an exact minimization, so the objective never
/// increases; a sweep that would raise it through roundoff is rejected and
/// the previous iterate returned.
RefineResult alternate(const Instance& instance, const OrthogonalSet& init,
                       int max_iters = 500, double rel_tol = 1e-12);

}  // namespace gpr
