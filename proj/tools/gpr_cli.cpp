// Command-line front end for the gpr shared library. Talks to the core only
// through the C API in gpr/gpr.h.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gpr/gpr.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

struct SolverFlags {
  double rho = 0.0;
  int max_iters = 20000;
  double eps = 1e-7;
};

void add_solver_flags(CLI::App* cmd, SolverFlags* flags) {
  cmd->add_option("--rho", flags->rho, "ADMM penalty (0 = automatic)");
  cmd->add_option("--max-iters", flags->max_iters, "ADMM iteration cap");
  cmd->add_option("--eps", flags->eps,
                  "ADMM primal/dual tolerance (scaled by sqrt(nd))");
}

gpr_solver_config* make_config(const SolverFlags& flags) {
  gpr_solver_config* cfg = gpr_solver_config_new();
  if (cfg == nullptr) {
    return nullptr;
  }
  gpr_solver_config_set(cfg, "rho", flags.rho);
  gpr_solver_config_set(cfg, "max_iters", static_cast<double>(flags.max_iters));
  gpr_solver_config_set(cfg, "eps", flags.eps);
  return cfg;
}

int fail_runtime(const char* what) {
  std::fprintf(stderr, "error: %s: %s\n", what, gpr_last_error());
  return kExitRuntime;
}

void print_record(const gpr_trial_record& rec) {
  std::printf("sigma=%.17g\n", rec.sigma);
  std::printf("trial=%d\n", rec.trial_index);
  std::printf("seed=%" PRIu64 "\n", rec.seed);
  std::printf("recovered=%s\n", rec.recovered ? "true" : "false");
  std::printf("sdp_objective=%.17g\n", rec.sdp_objective);
  std::printf("refined_objective=%.17g\n", rec.refined_objective);
  std::printf("duality_gap=%.17g\n", rec.duality_gap);
  std::printf("spectrum_gap=%.17g\n", rec.spectrum_gap);
  std::printf("cert_min_eig=%.17g\n", rec.cert_min_eig);
  std::printf("cert_stationarity=%.17g\n", rec.cert_stationarity);
  std::printf("estimated_rank=%d\n", rec.estimated_rank);
  std::printf("admm_iterations=%d\n", rec.admm_iterations);
  std::printf("status=%s\n", rec.status);
}

struct ProgressCtx {
  std::string csv_path;  // empty = no partial flush
};

void on_sigma_done(const gpr_sweep_result* partial, int done, int total,
                   void* user) {
  auto* ctx = static_cast<ProgressCtx*>(user);
  const int idx = done - 1;
  std::fprintf(stderr, "sigma %d/%d (%.6g): fraction %.3f\n", done, total,
               gpr_sweep_sigma(partial, idx), gpr_sweep_fraction(partial, idx));
  if (!ctx->csv_path.empty()) {
    // Keep completed rows on disk in case the sweep is interrupted.
    gpr_sweep_write_csv(partial, ctx->csv_path.c_str());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized Procrustes SDP relaxation toolkit"};
  app.require_subcommand(1);

  // --- sweep ---
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Monte-Carlo rank-recovery sweep over a noise grid");
  int d = 3, n = 20, m = 30, trials = 100, steps = 0, jobs = 0;
  double sigma_min = -1.0, sigma_max = -1.0;
  std::vector<double> sigma_list;
  std::uint64_t seed = 0;
  std::string mode = "haar";
  std::string out_csv = "sweep.csv";
  std::string out_svg;
  SolverFlags sweep_solver;
  sweep->add_option("--d", d, "point dimension")->check(CLI::PositiveNumber);
  sweep->add_option("--n", n, "number of measurements")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--m", m, "points per cloud")->check(CLI::PositiveNumber);
  sweep->add_option("--sigma-min", sigma_min, "smallest noise level")
      ->check(CLI::NonNegativeNumber);
  sweep->add_option("--sigma-max", sigma_max, "largest noise level")
      ->check(CLI::NonNegativeNumber);
  sweep->add_option("--sigma-steps", steps, "number of uniform grid points")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--sigma-list", sigma_list,
                    "explicit noise levels (overrides min/max/steps)")
      ->check(CLI::NonNegativeNumber);
  sweep->add_option("--trials", trials, "trials per noise level")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--seed", seed, "master seed");
  sweep->add_option("--mode", mode, "transform mode: identity or haar")
      ->check(CLI::IsMember({"identity", "haar"}));
  sweep->add_option("--jobs", jobs, "worker threads (0 = hardware)");
  sweep->add_option("--out", out_csv, "CSV output path");
  sweep->add_option("--svg", out_svg, "SVG plot output path");
  add_solver_flags(sweep, &sweep_solver);

  // --- trial ---
  CLI::App* trial = app.add_subcommand("trial", "run one trial and print it");
  int td = 3, tn = 20, tm = 30;
  double tsigma = 0.0;
  std::uint64_t tseed = 0;
  std::string tmode = "haar";
  SolverFlags trial_solver;
  trial->add_option("--d", td, "point dimension")->check(CLI::PositiveNumber);
  trial->add_option("--n", tn, "number of measurements")
      ->check(CLI::PositiveNumber);
  trial->add_option("--m", tm, "points per cloud")->check(CLI::PositiveNumber);
  trial->add_option("--sigma", tsigma, "noise level")
      ->check(CLI::NonNegativeNumber);
  trial->add_option("--seed", tseed, "instance seed");
  trial->add_option("--mode", tmode, "transform mode: identity or haar")
      ->check(CLI::IsMember({"identity", "haar"}));
  add_solver_flags(trial, &trial_solver);

  // --- solve ---
  CLI::App* solve = app.add_subcommand(
      "solve", "solve an instance file and print SDP diagnostics");
  std::string instance_path;
  SolverFlags solve_solver;
  solve->add_option("instance", instance_path, "instance text file")
      ->required();
  add_solver_flags(solve, &solve_solver);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (sweep->parsed()) {
    std::vector<double> grid;
    if (!sigma_list.empty()) {
      grid = sigma_list;
    } else if (sigma_min >= 0.0 && sigma_max >= sigma_min && steps >= 1) {
      for (int i = 0; i < steps; ++i) {
        const double t = steps == 1 ? 0.0 : static_cast<double>(i) / (steps - 1);
        grid.push_back(sigma_min + t * (sigma_max - sigma_min));
      }
    } else if (sigma_min >= 0.0 || sigma_max >= 0.0 || steps != 0) {
      std::fprintf(stderr,
                   "error: --sigma-min/--sigma-max/--sigma-steps must be "
                   "given together (min <= max, steps >= 1)\n");
      return kExitUsage;
    } else {
      grid.resize(gpr_default_sigma_grid(nullptr, 0));
      gpr_default_sigma_grid(grid.data(), static_cast<int>(grid.size()));
    }

    gpr_solver_config* cfg = make_config(sweep_solver);
    ProgressCtx ctx{out_csv};
    gpr_sweep_result* res = nullptr;
    const int rc = gpr_run_sweep(d, n, m, grid.data(),
                                 static_cast<int>(grid.size()), trials, seed,
                                 mode.c_str(), cfg, jobs, on_sigma_done, &ctx,
                                 &res);
    gpr_solver_config_free(cfg);
    if (rc != GPR_OK) {
      return fail_runtime("sweep");
    }
    if (gpr_sweep_write_csv(res, out_csv.c_str()) != GPR_OK) {
      gpr_sweep_result_free(res);
      return fail_runtime("write csv");
    }
    if (!out_svg.empty() && gpr_sweep_write_svg(res, out_svg.c_str()) != GPR_OK) {
      gpr_sweep_result_free(res);
      return fail_runtime("write svg");
    }
    for (int i = 0; i < gpr_sweep_num_sigmas(res); ++i) {
      std::printf("sigma=%.17g fraction=%.17g\n", gpr_sweep_sigma(res, i),
                  gpr_sweep_fraction(res, i));
    }
    const double threshold = gpr_sweep_threshold(res);
    if (threshold == threshold) {
      std::printf("empirical_threshold=%.17g\n", threshold);
    } else {
      std::printf("empirical_threshold=none\n");
    }
    gpr_sweep_result_free(res);
    return kExitOk;
  }

  if (trial->parsed()) {
    gpr_solver_config* cfg = make_config(trial_solver);
    gpr_trial_record rec;
    const int rc = gpr_run_trial(td, tn, tm, tsigma, tseed, tmode.c_str(), cfg,
                                 &rec);
    gpr_solver_config_free(cfg);
    if (rc != GPR_OK) {
      return fail_runtime("trial");
    }
    print_record(rec);
    return kExitOk;
  }

  if (solve->parsed()) {
    gpr_instance* inst = nullptr;
    if (gpr_instance_read_text(instance_path.c_str(), &inst) != GPR_OK) {
      return fail_runtime("read instance");
    }
    gpr_solver_config* cfg = make_config(solve_solver);
    gpr_trial_record rec;
    const int rc = gpr_solve_instance(inst, cfg, &rec);
    gpr_solver_config_free(cfg);
    gpr_instance_free(inst);
    if (rc != GPR_OK) {
      return fail_runtime("solve");
    }
    print_record(rec);
    return kExitOk;
  }

  return kExitUsage;
}
