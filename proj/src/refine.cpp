#include "refine.hpp"

#include <stdexcept>

namespace gpr {

Matrix mean_shape(const Instance& instance, const OrthogonalSet& o) {
  if (o.count() != instance.n || o.dim() != instance.d) {
    throw std::invalid_argument("mean_shape: dimension mismatch");
  }
  Matrix acc = Matrix::Zero(instance.d, instance.m);
  for (int i = 0; i < instance.n; ++i) {
    acc.noalias() += o.blocks[i].transpose() * instance.measurements[i];
  }
  return acc / static_cast<double>(instance.n);
}

Matrix procrustes_step(const Matrix& a_i, const Matrix& a_hat) {
  if (a_i.rows() != a_hat.rows() || a_i.cols() != a_hat.cols()) {
    throw std::invalid_argument("procrustes_step: shape mismatch");
  }
  return nearest_orthogonal(a_i * a_hat.transpose());
}

RefineResult alternate(const Instance& instance, const OrthogonalSet& init,
                       int max_iters, double rel_tol) {
  RefineResult res;
  res.transforms = init;
  res.objective = objective_pairwise(instance, init);
  res.objective_history.push_back(res.objective);

  for (int it = 1; it <= max_iters; ++it) {
    const Matrix a_hat = mean_shape(instance, res.transforms);
    OrthogonalSet next;
    next.blocks.reserve(instance.n);
    for (int i = 0; i < instance.n; ++i) {
      next.blocks.push_back(procrustes_step(instance.measurements[i], a_hat));
    }
    const double f_prev = res.objective;
    const double f_next = objective_pairwise(instance, next);
    if (f_next > f_prev) {
      // Roundoff-level uptick at a fixed point; keep the best iterate.
      res.iterations = it;
      res.converged = true;
      break;
    }
    res.transforms = std::move(next);
    res.objective = f_next;
    res.objective_history.push_back(f_next);
    res.iterations = it;
    if (f_prev - f_next < rel_tol * std::max(1.0, f_prev)) {
      res.converged = true;
      break;
    }
  }
  return res;
}

}  // namespace gpr
