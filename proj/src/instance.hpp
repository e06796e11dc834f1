#pragma once

#include <cstdint>
#include <vector>

#include "linalg.hpp"
#include "rng.hpp"

namespace gpr {

/// A set of n orthogonal d x d transforms, one per measurement.
struct OrthogonalSet {
  std::vector<Matrix> blocks;

  int count() const { return static_cast<int>(blocks.size()); }
  int dim() const { return blocks.empty() ? 0 : static_cast<int>(blocks[0].rows()); }

  /// Vertical stack [O_1; O_2; ...; O_n], the rank-d factor of the lifted
  /// variable X = Y Y^T with blocks X_ij = O_i O_j^T.
  Matrix stacked() const;

  /// max_i || O_i O_i^T - I ||_F
  double orthogonality_defect() const;

  /// Right-multiplies every block by the same orthogonal Q (the gauge action
  /// both objectives are invariant under).
  OrthogonalSet gauged(const Matrix& q) const;

  static OrthogonalSet identity(int n, int d);
};

enum class TransformMode { kIdentity, kHaar };

/// A synthetic alignment problem: measurements A_i = O_i * A + sigma * eta_i
/// with eta_i i.i.d. standard gaussian. Instances loaded from disk carry the
/// measurements only (has_ground_truth = false).
struct Instance {
  int d = 0;
  int n = 0;
  int m = 0;
  double sigma = 0.0;
  std::uint64_t seed = 0;
  Matrix cloud;                       // d x m, columns are points
  OrthogonalSet transforms;           // n blocks, d x d
  std::vector<Matrix> measurements;   // n matrices, d x m
  bool has_ground_truth = false;
};

/// The nd x nd symmetric coupling matrix with d x d blocks C_ij = A_i A_j^T.
/// Both the trace objective and the SDP are defined through it.
struct Coupling {
  Matrix mat;
  int d = 0;
  int n = 0;

  auto block(int i, int j) const { return mat.block(i * d, j * d, d, d); }
};

/// d x m matrix of i.i.d. Uniform[0,1] entries, consuming exactly d*m draws
/// (column by column).
Matrix sample_point_cloud(int d, int m, Rng& rng);

/// Identity, or a Haar-distributed element of O(d): QR of a d x d gaussian
/// matrix with the signs of R's diagonal absorbed into Q.
Matrix sample_orthogonal(int d, Rng& rng, TransformMode mode);

/// Deterministic generation from a single seed; draw order is cloud, then
/// transforms (i ascending), then noise (i ascending). sigma = 0 skips the
/// noise draws and copies O_i * A exactly.
Instance make_instance(int d, int n, int m, double sigma, std::uint64_t seed,
                       TransformMode mode);

Coupling build_coupling(const Instance& instance);

/// sum_{i<j} || O_i^T A_i - O_j^T A_j ||_F^2
double objective_pairwise(const Instance& instance, const OrthogonalSet& o);

/// tr(C * X(O)) with X(O)_ij = O_i O_j^T, evaluated as tr(Y^T C Y) for the
/// stacked factor Y without materializing X.
double objective_trace(const Coupling& c, const OrthogonalSet& o);

/// sum_i || A_i ||_F^2 (links the two objectives:
/// pairwise = n * this - trace).
double measurement_norm_sq(const Instance& instance);

}  // namespace gpr
