#include "sdp.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "errors.hpp"

namespace gpr {

namespace {

void validate_config(const SolverConfig& cfg) {
  if (cfg.eps_primal <= 0 || cfg.eps_dual <= 0 || cfg.max_iters < 1 ||
      cfg.rank_rel_tol <= 0 || cfg.cert_stat_tol <= 0 || cfg.cert_psd_tol <= 0) {
    throw std::invalid_argument("solver config: tolerances must be positive");
  }
}

void set_identity_diagonal(Matrix& x, int n, int d) {
  for (int i = 0; i < n; ++i) {
    x.block(i * d, i * d, d, d) = Matrix::Identity(d, d);
  }
}

}  // namespace

SdpSolution solve_sdp(const Coupling& c, const SolverConfig& cfg) {
  validate_config(cfg);
  const int d = c.d;
  const int n = c.n;
  const int nd = n * d;
  if (nd == 0 || c.mat.rows() != nd || c.mat.cols() != nd) {
    throw std::invalid_argument("solve_sdp: coupling dimensions inconsistent");
  }
  if (!c.mat.allFinite()) {
    throw std::invalid_argument("solve_sdp: non-finite coupling");
  }

  const double cnorm = c.mat.norm();
  const double rho0 = cfg.rho > 0 ? cfg.rho : std::max(cnorm / nd, 1e-12);
  double rho = rho0;
  const double eps_primal = cfg.eps_primal * std::sqrt(static_cast<double>(nd));
  const double eps_dual = cfg.eps_dual * std::sqrt(static_cast<double>(nd));

  Matrix z = Matrix::Identity(nd, nd);
  Matrix u = Matrix::Zero(nd, nd);
  Matrix x(nd, nd);

  SdpSolution sol;
  sol.spectrum = Vector::Ones(nd);

  for (int it = 1; it <= cfg.max_iters; ++it) {
    // X-update: coordinate-separable quadratic over the affine set, so the
    // free entries shift by C/rho and the diagonal blocks pin to I.
    x = z - u + c.mat / rho;
    x = (0.5 * (x + x.transpose())).eval();
    set_identity_diagonal(x, n, d);

    const Matrix w = x + u;
    if (!w.allFinite()) {
      std::ostringstream os;
      os << "solve_sdp: non-finite iterate at iteration " << it;
      throw NumericalError(os.str());
    }
    const EigenDecomp ed = sym_eig(w);
    const Vector clamped = ed.values.cwiseMax(0.0);
    Matrix z_next = ed.vectors * clamped.asDiagonal() * ed.vectors.transpose();
    z_next = (0.5 * (z_next + z_next.transpose())).eval();

    const double primal = (x - z_next).norm();
    const double dual = rho * (z_next - z).norm();

    u += x - z_next;
    z = std::move(z_next);

    sol.spectrum = clamped;
    sol.primal_residual = primal;
    sol.dual_residual = dual;
    sol.iterations = it;

    if (primal <= eps_primal && dual <= eps_dual) {
      sol.status = SolveStatus::kConverged;
      break;
    }

    if (cfg.residual_balancing && it % 100 == 0) {
      // He-Yang-Wang rule on a fixed cadence (adapting every iteration makes
      // the iterates limit-cycle); rescaling u keeps rho * u (the unscaled
      // dual) fixed.
      if (primal > 10.0 * dual && rho < 1e8 * rho0) {
        rho *= 2.0;
        u *= 0.5;
      } else if (dual > 10.0 * primal && rho > 1e-8 * rho0) {
        rho *= 0.5;
        u *= 2.0;
      }
    }
  }

  sol.X = z;
  sol.objective = c.mat.cwiseProduct(z).sum();
  return sol;
}

int estimate_rank(const Vector& spectrum, double rank_rel_tol) {
  if (spectrum.size() == 0) {
    return 0;
  }
  const double cutoff = rank_rel_tol * std::max(spectrum(0), 1e-30);
  int rank = 0;
  for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
    if (spectrum(i) > cutoff) {
      ++rank;
    }
  }
  return rank;
}

int estimate_rank(const SdpSolution& sol, double rank_rel_tol) {
  return estimate_rank(sol.spectrum, rank_rel_tol);
}

OrthogonalSet round_solution(const SdpSolution& sol, int d) {
  const int nd = static_cast<int>(sol.X.rows());
  if (d < 1 || nd % d != 0) {
    throw std::invalid_argument("round_solution: block size does not divide matrix size");
  }
  const int n = nd / d;
  const EigenDecomp ed = sym_eig(sol.X);
  if (!(ed.values(d - 1) > 0.0)) {
    std::ostringstream os;
    os << "round_solution: eigenvalue " << d << " is " << ed.values(d - 1)
       << "; top eigenspace is degenerate";
    throw NumericalError(os.str());
  }

  Matrix y = ed.vectors.leftCols(d);
  for (int j = 0; j < d; ++j) {
    y.col(j) *= std::sqrt(ed.values(j));
  }

  OrthogonalSet o;
  o.blocks.reserve(n);
  for (int i = 0; i < n; ++i) {
    o.blocks.push_back(nearest_orthogonal(y.block(i * d, 0, d, d)));
  }
  // Gauge: right-multiply so the first block is the identity.
  const Matrix g = o.blocks[0].transpose();
  for (Matrix& b : o.blocks) {
    b = b * g;
  }
  return o;
}

Certificate certify(const Coupling& c, const OrthogonalSet& o,
                    const SolverConfig& cfg) {
  validate_config(cfg);
  const int d = c.d;
  const int n = c.n;
  if (o.count() != n || o.dim() != d) {
    throw std::invalid_argument("certify: dimension mismatch");
  }
  if (o.orthogonality_defect() > 1e-6) {
    throw std::invalid_argument("certify: candidate blocks are not orthogonal");
  }

  const double cnorm = c.mat.norm();
  const double stat_tol = cfg.cert_stat_tol * cnorm;
  const double psd_tol = cfg.cert_psd_tol * cnorm;

  const Matrix y = o.stacked();
  const Matrix cy = c.mat * y;

  Certificate cert;
  cert.lambda_blocks.reserve(n);
  Matrix slack = -c.mat;
  for (int i = 0; i < n; ++i) {
    const Matrix t = cy.block(i * d, 0, d, d) * o.blocks[i].transpose();
    cert.stationarity_residual =
        std::max(cert.stationarity_residual, (t - t.transpose()).norm());
    Matrix lambda = 0.5 * (t + t.transpose());
    slack.block(i * d, i * d, d, d) += lambda;
    cert.dual_value += lambda.trace();
    cert.lambda_blocks.push_back(std::move(lambda));
  }

  const EigenDecomp ed = sym_eig(slack);
  cert.slack_min_eig = ed.values(ed.values.size() - 1);
  for (Eigen::Index i = 0; i < ed.values.size(); ++i) {
    if (std::abs(ed.values(i)) <= psd_tol) {
      ++cert.slack_corank;
    }
  }
  cert.passed = cert.stationarity_residual <= stat_tol &&
                cert.slack_min_eig >= -psd_tol;
  return cert;
}

RecoveryDiagnostics rank_recovered(const Coupling& c, const SdpSolution& sol,
                                   const OrthogonalSet& refined,
                                   const SolverConfig& cfg) {
  const int d = c.d;
  RecoveryDiagnostics diag;
  diag.certificate = certify(c, refined, cfg);
  diag.duality_gap = sol.objective - objective_trace(c, refined);
  diag.objective_match =
      std::abs(diag.duality_gap) <= kObjectiveGapTol * (1.0 + std::abs(sol.objective));
  diag.recovered = diag.certificate.passed && diag.objective_match;
  diag.estimated_rank = estimate_rank(sol, cfg.rank_rel_tol);

  if (sol.spectrum.size() > d) {
    const double head = sol.spectrum(d - 1);
    const double tail = sol.spectrum(d);
    diag.spectrum_gap = tail > 0.0 ? head / tail
                                   : std::numeric_limits<double>::infinity();
  } else {
    diag.spectrum_gap = std::numeric_limits<double>::infinity();
  }
  return diag;
}

}  // namespace gpr
