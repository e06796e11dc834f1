#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "refine.hpp"
#include "sdp.hpp"

namespace gpr {

/// One Monte-Carlo trial of the full pipeline.
struct TrialRecord {
  double sigma = 0.0;
  int trial_index = 0;
  std::uint64_t seed = 0;
  bool recovered = false;
  double sdp_objective = 0.0;
  double refined_objective = 0.0;  // pairwise objective at the refined candidate
  double duality_gap = 0.0;
  double spectrum_gap = 0.0;
  double cert_min_eig = 0.0;
  double cert_stationarity = 0.0;
  int estimated_rank = 0;
  int admm_iterations = 0;
  std::string status;  // "converged", "max_iters", or "error: ..."
};

/// Read-only view of a trial's intermediate objects, handed to observers
/// (used by property suites; may be called from worker threads).
struct TrialInternals {
  const Instance& instance;
  const Coupling& coupling;
  const SdpSolution& solution;
  const OrthogonalSet& refined;
  const Certificate& certificate;
  const TrialRecord& record;
};

using TrialObserver = std::function<void(const TrialInternals&)>;

/// The noise grid every CLI run falls back to; chosen by a pilot calibration
/// so the recovery fraction spans 1 -> 0 across the grid at the default
/// d=3, n=20, m=30 geometry.
std::vector<double> default_sigma_grid();

struct SweepConfig {
  int d = 3;
  int n = 20;
  int m = 30;
  std::vector<double> sigma_grid = default_sigma_grid();
  int trials = 100;
  std::uint64_t master_seed = 0;
  TransformMode mode = TransformMode::kHaar;
  SolverConfig solver;
  int jobs = 0;  // worker threads; 0 selects the hardware concurrency
  TrialObserver observer;  // optional; must be thread-safe
};

struct SweepResult {
  std::vector<double> sigma_grid;
  int trials = 0;
  std::vector<double> fractions;      // recovery fraction per sigma
  std::vector<TrialRecord> records;   // sorted by (sigma index, trial index)
  std::optional<double> empirical_threshold;  // largest sigma with fraction >= 0.95
};

/// make_instance -> build_coupling -> solve_sdp -> round_solution ->
/// alternate -> rank_recovered. Failures land in record.status; the record
/// is always returned.
TrialRecord run_trial(int d, int n, int m, double sigma, std::uint64_t seed,
                      TransformMode mode, const SolverConfig& solver,
                      const TrialObserver& observer = nullptr);

/// Called after each completed sigma with the partially filled result
/// (records for completed sigmas only).
using SweepProgress = std::function<void(int sigmas_done, const SweepResult& partial)>;

/// Runs trials for one sigma at a time, parallelized across cfg.jobs
/// workers. Per-trial seeds are derive_seed(master, sigma index, trial
/// index), so the result is identical for any jobs value.
SweepResult run_sweep(const SweepConfig& cfg, const SweepProgress& progress = nullptr);

/// CSV with the fixed header
/// sigma,trial,seed,recovered,sdp_objective,refined_objective,duality_gap,
/// spectrum_gap,cert_min_eig,cert_stationarity,estimated_rank,
/// admm_iterations,status
/// one row per trial, floats with 17 significant digits.
void write_csv(const SweepResult& result, const std::string& path);

/// Self-contained SVG plot of recovery fraction versus sigma.
void write_svg(const SweepResult& result, const std::string& path);

/// Plain-text instance exchange format: a "d n m sigma" header line followed
/// by n blocks of d rows of m whitespace-separated values (the measurements).
Instance read_instance_text(const std::string& path);
void write_instance_text(const Instance& instance, const std::string& path);

/// 17-significant-digit decimal rendering used for CSV and instance files.
std::string format_double(double v);

}  // namespace gpr
