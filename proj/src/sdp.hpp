#pragma once

#include "instance.hpp"

namespace gpr {

/// ADMM and certificate parameters. Tolerances marked "relative" are
/// multiplied by ||C||_F (certificates) or sqrt(nd) (residuals) at solve
/// time.
struct SolverConfig {
  double rho = 0.0;            // ADMM penalty; <= 0 selects ||C||_F / (nd)
  double eps_primal = 1e-7;    // scaled by sqrt(nd)
  double eps_dual = 1e-7;      // scaled by sqrt(nd)
  int max_iters = 20000;
  double rank_rel_tol = 1e-4;  // eigenvalue cutoff relative to the largest
  double cert_stat_tol = 1e-6; // stationarity residual, relative to ||C||_F
  double cert_psd_tol = 1e-7;  // slack eigenvalue floor, relative to ||C||_F
  bool residual_balancing = true;
};

/// Relative tolerance on |tr(C X(O)) - sdp objective| deciding whether a
/// candidate attains the relaxation value.
inline constexpr double kObjectiveGapTol = 1e-4;

enum class SolveStatus { kConverged, kMaxIters };

/// Approximate maximizer of tr(CX) over {X PSD, X_ii = I}. X is the PSD
/// iterate, so spectrum is non-negative.
struct SdpSolution {
  Matrix X;
  double objective = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  int iterations = 0;
  Vector spectrum;  // eigenvalues of X, non-increasing
  SolveStatus status = SolveStatus::kMaxIters;
};

/// Dual optimality certificate at a candidate orthogonal set. passed means
/// the slack S = BlockDiag(Lambda) - C is PSD (up to tolerance) and the
/// candidate is first-order stationary, which together prove the lifted
/// point globally maximizes the relaxation.
struct Certificate {
  std::vector<Matrix> lambda_blocks;
  double stationarity_residual = 0.0;
  double slack_min_eig = 0.0;
  int slack_corank = 0;
  double dual_value = 0.0;
  bool passed = false;
};

/// Everything rank_recovered() looked at, for logging.
struct RecoveryDiagnostics {
  bool recovered = false;
  bool objective_match = false;
  double duality_gap = 0.0;     // sdp objective minus tr(C X(O)) at the candidate
  int estimated_rank = 0;
  double spectrum_gap = 0.0;    // lambda_d / lambda_{d+1} of the SDP iterate
  Certificate certificate;
};

/// ADMM splitting between the affine set {X_ii = I} and the PSD cone:
///   X-update: overwrite diagonal blocks of (Z - U + C/rho) with I,
///   Z-update: PSD projection of X + U,
///   U-update: U + X - Z.
/// Stops when ||X - Z||_F <= eps_primal * sqrt(nd) and
/// rho * ||Z - Z_prev||_F <= eps_dual * sqrt(nd).
SdpSolution solve_sdp(const Coupling& c, const SolverConfig& cfg = {});

/// Count of eigenvalues above rank_rel_tol * max(lambda_1, 1e-30).
int estimate_rank(const Vector& spectrum, double rank_rel_tol);
int estimate_rank(const SdpSolution& sol, double rank_rel_tol);

/// Factor the top-d eigenspace, polar-project each d x d block onto O(d),
/// and fix the gauge so the first block is the identity. Throws
/// NumericalError when lambda_d <= 0 (no usable rank-d factor).
OrthogonalSet round_solution(const SdpSolution& sol, int d);

/// Build the dual blocks Lambda_i = sym((CY)_i Y_i^T) from the stacked
/// factor Y of the candidate and test stationarity plus slack positivity.
Certificate certify(const Coupling& c, const OrthogonalSet& o,
                    const SolverConfig& cfg = {});

/// Rank recovery: the certificate passes at the refined candidate AND the
/// candidate attains the SDP objective within kObjectiveGapTol.
RecoveryDiagnostics rank_recovered(const Coupling& c, const SdpSolution& sol,
                                   const OrthogonalSet& refined,
                                   const SolverConfig& cfg = {});

}  // namespace gpr
