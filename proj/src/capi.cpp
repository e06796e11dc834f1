#include "gpr/gpr.h"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <limits>
#include <string>

#include "errors.hpp"
#include "sweep.hpp"

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return GPR_OK;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return GPR_ERR_INVALID_ARG;
  } catch (const gpr::IoError& e) {
    set_error(e.what());
    return GPR_ERR_IO;
  } catch (const gpr::NumericalError& e) {
    set_error(e.what());
    return GPR_ERR_NUMERICAL;
  } catch (const std::exception& e) {
    set_error(e.what());
    return GPR_ERR_INTERNAL;
  } catch (...) {
    set_error("unknown error");
    return GPR_ERR_INTERNAL;
  }
}

gpr::TransformMode parse_mode(const char* mode) {
  if (mode == nullptr || std::strcmp(mode, "haar") == 0) {
    return gpr::TransformMode::kHaar;
  }
  if (std::strcmp(mode, "identity") == 0) {
    return gpr::TransformMode::kIdentity;
  }
  throw std::invalid_argument(std::string("unknown transform mode: ") + mode);
}

void fill_record(const gpr::TrialRecord& rec, gpr_trial_record* out) {
  out->sigma = rec.sigma;
  out->trial_index = rec.trial_index;
  out->seed = rec.seed;
  out->recovered = rec.recovered ? 1 : 0;
  out->sdp_objective = rec.sdp_objective;
  out->refined_objective = rec.refined_objective;
  out->duality_gap = rec.duality_gap;
  out->spectrum_gap = rec.spectrum_gap;
  out->cert_min_eig = rec.cert_min_eig;
  out->cert_stationarity = rec.cert_stationarity;
  out->estimated_rank = rec.estimated_rank;
  out->admm_iterations = rec.admm_iterations;
  std::snprintf(out->status, sizeof(out->status), "%s", rec.status.c_str());
}

gpr::TrialRecord run_pipeline_on(const gpr::Instance& inst,
                                 const gpr::SolverConfig& cfg) {
  gpr::TrialRecord rec;
  rec.sigma = inst.sigma;
  rec.seed = inst.seed;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  rec.sdp_objective = rec.refined_objective = rec.duality_gap = nan;
  rec.spectrum_gap = rec.cert_min_eig = rec.cert_stationarity = nan;

  const gpr::Coupling coupling = gpr::build_coupling(inst);
  const gpr::SdpSolution sol = gpr::solve_sdp(coupling, cfg);
  rec.sdp_objective = sol.objective;
  rec.admm_iterations = sol.iterations;
  rec.status =
      sol.status == gpr::SolveStatus::kConverged ? "converged" : "max_iters";

  const gpr::OrthogonalSet rounded = gpr::round_solution(sol, inst.d);
  const gpr::RefineResult refined = gpr::alternate(inst, rounded);
  rec.refined_objective = refined.objective;

  const gpr::RecoveryDiagnostics diag =
      gpr::rank_recovered(coupling, sol, refined.transforms, cfg);
  rec.recovered = diag.recovered;
  rec.duality_gap = diag.duality_gap;
  rec.spectrum_gap = diag.spectrum_gap;
  rec.cert_min_eig = diag.certificate.slack_min_eig;
  rec.cert_stationarity = diag.certificate.stationarity_residual;
  rec.estimated_rank = diag.estimated_rank;
  return rec;
}

}  // namespace

struct gpr_solver_config {
  gpr::SolverConfig cfg;
};

struct gpr_instance {
  gpr::Instance inst;
};

struct gpr_sweep_result {
  gpr::SweepResult res;
};

extern "C" {

const char* gpr_version(void) { return "0.1.0"; }

const char* gpr_last_error(void) { return g_last_error.c_str(); }

gpr_solver_config* gpr_solver_config_new(void) {
  return new (std::nothrow) gpr_solver_config{};
}

void gpr_solver_config_free(gpr_solver_config* cfg) { delete cfg; }

int gpr_solver_config_set(gpr_solver_config* cfg, const char* key, double value) {
  return guarded([&] {
    if (cfg == nullptr || key == nullptr) {
      throw std::invalid_argument("solver_config_set: null argument");
    }
    const std::string k(key);
    gpr::SolverConfig& c = cfg->cfg;
    if (k == "rho") {
      c.rho = value;
    } else if (k == "eps_primal") {
      c.eps_primal = value;
    } else if (k == "eps_dual") {
      c.eps_dual = value;
    } else if (k == "eps") {
      c.eps_primal = c.eps_dual = value;
    } else if (k == "max_iters") {
      c.max_iters = static_cast<int>(value);
    } else if (k == "rank_rel_tol") {
      c.rank_rel_tol = value;
    } else if (k == "cert_stat_tol") {
      c.cert_stat_tol = value;
    } else if (k == "cert_psd_tol") {
      c.cert_psd_tol = value;
    } else if (k == "balancing") {
      c.residual_balancing = value != 0.0;
    } else {
      throw std::invalid_argument("solver_config_set: unknown key " + k);
    }
  });
}

int gpr_solver_config_get(const gpr_solver_config* cfg, const char* key,
                          double* value) {
  return guarded([&] {
    if (cfg == nullptr || key == nullptr || value == nullptr) {
      throw std::invalid_argument("solver_config_get: null argument");
    }
    const std::string k(key);
    const gpr::SolverConfig& c = cfg->cfg;
    if (k == "rho") {
      *value = c.rho;
    } else if (k == "eps_primal") {
      *value = c.eps_primal;
    } else if (k == "eps_dual") {
      *value = c.eps_dual;
    } else if (k == "max_iters") {
      *value = c.max_iters;
    } else if (k == "rank_rel_tol") {
      *value = c.rank_rel_tol;
    } else if (k == "cert_stat_tol") {
      *value = c.cert_stat_tol;
    } else if (k == "cert_psd_tol") {
      *value = c.cert_psd_tol;
    } else if (k == "balancing") {
      *value = c.residual_balancing ? 1.0 : 0.0;
    } else {
      throw std::invalid_argument("solver_config_get: unknown key " + k);
    }
  });
}

int gpr_instance_generate(int d, int n, int m, double sigma, uint64_t seed,
                          const char* mode, gpr_instance** out) {
  return guarded([&] {
    if (out == nullptr) {
      throw std::invalid_argument("instance_generate: null output");
    }
    auto* handle = new gpr_instance{
        gpr::make_instance(d, n, m, sigma, seed, parse_mode(mode))};
    *out = handle;
  });
}

int gpr_instance_read_text(const char* path, gpr_instance** out) {
  return guarded([&] {
    if (path == nullptr || out == nullptr) {
      throw std::invalid_argument("instance_read_text: null argument");
    }
    *out = new gpr_instance{gpr::read_instance_text(path)};
  });
}

int gpr_instance_write_text(const gpr_instance* inst, const char* path) {
  return guarded([&] {
    if (inst == nullptr || path == nullptr) {
      throw std::invalid_argument("instance_write_text: null argument");
    }
    gpr::write_instance_text(inst->inst, path);
  });
}

void gpr_instance_free(gpr_instance* inst) { delete inst; }

int gpr_instance_dims(const gpr_instance* inst, int* d, int* n, int* m,
                      double* sigma) {
  return guarded([&] {
    if (inst == nullptr) {
      throw std::invalid_argument("instance_dims: null instance");
    }
    if (d != nullptr) *d = inst->inst.d;
    if (n != nullptr) *n = inst->inst.n;
    if (m != nullptr) *m = inst->inst.m;
    if (sigma != nullptr) *sigma = inst->inst.sigma;
  });
}

int gpr_run_trial(int d, int n, int m, double sigma, uint64_t seed,
                  const char* mode, const gpr_solver_config* cfg,
                  gpr_trial_record* out) {
  return guarded([&] {
    if (out == nullptr) {
      throw std::invalid_argument("run_trial: null output");
    }
    const gpr::SolverConfig solver = cfg != nullptr ? cfg->cfg : gpr::SolverConfig{};
    const gpr::Instance inst =
        gpr::make_instance(d, n, m, sigma, seed, parse_mode(mode));
    fill_record(run_pipeline_on(inst, solver), out);
  });
}

int gpr_solve_instance(const gpr_instance* inst, const gpr_solver_config* cfg,
                       gpr_trial_record* out) {
  return guarded([&] {
    if (inst == nullptr || out == nullptr) {
      throw std::invalid_argument("solve_instance: null argument");
    }
    const gpr::SolverConfig solver = cfg != nullptr ? cfg->cfg : gpr::SolverConfig{};
    fill_record(run_pipeline_on(inst->inst, solver), out);
  });
}

int gpr_default_sigma_grid(double* buf, int cap) {
  const std::vector<double> grid = gpr::default_sigma_grid();
  const int count = static_cast<int>(grid.size());
  if (buf != nullptr && cap >= count) {
    for (int i = 0; i < count; ++i) {
      buf[i] = grid[i];
    }
  }
  return count;
}

int gpr_run_sweep(int d, int n, int m, const double* sigma_grid, int n_sigma,
                  int trials, uint64_t master_seed, const char* mode,
                  const gpr_solver_config* cfg, int jobs,
                  gpr_sweep_progress_fn progress, void* user,
                  gpr_sweep_result** out) {
  return guarded([&] {
    if (out == nullptr || sigma_grid == nullptr || n_sigma < 1) {
      throw std::invalid_argument("run_sweep: bad grid or output");
    }
    gpr::SweepConfig sweep;
    sweep.d = d;
    sweep.n = n;
    sweep.m = m;
    sweep.sigma_grid.assign(sigma_grid, sigma_grid + n_sigma);
    sweep.trials = trials;
    sweep.master_seed = master_seed;
    sweep.mode = parse_mode(mode);
    if (cfg != nullptr) {
      sweep.solver = cfg->cfg;
    }
    sweep.jobs = jobs;

    gpr::SweepProgress cb;
    if (progress != nullptr) {
      cb = [&](int done, const gpr::SweepResult& partial) {
        gpr_sweep_result view{partial};
        progress(&view, done, n_sigma, user);
      };
    }
    *out = new gpr_sweep_result{gpr::run_sweep(sweep, cb)};
  });
}

void gpr_sweep_result_free(gpr_sweep_result* res) { delete res; }

int gpr_sweep_num_sigmas(const gpr_sweep_result* res) {
  return res == nullptr ? 0 : static_cast<int>(res->res.fractions.size());
}

double gpr_sweep_sigma(const gpr_sweep_result* res, int i) {
  if (res == nullptr || i < 0 ||
      i >= static_cast<int>(res->res.sigma_grid.size())) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return res->res.sigma_grid[i];
}

double gpr_sweep_fraction(const gpr_sweep_result* res, int i) {
  if (res == nullptr || i < 0 ||
      i >= static_cast<int>(res->res.fractions.size())) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return res->res.fractions[i];
}

int gpr_sweep_num_records(const gpr_sweep_result* res) {
  return res == nullptr ? 0 : static_cast<int>(res->res.records.size());
}

int gpr_sweep_record(const gpr_sweep_result* res, int i, gpr_trial_record* out) {
  return guarded([&] {
    if (res == nullptr || out == nullptr || i < 0 ||
        i >= static_cast<int>(res->res.records.size())) {
      throw std::invalid_argument("sweep_record: index out of range");
    }
    fill_record(res->res.records[i], out);
  });
}

double gpr_sweep_threshold(const gpr_sweep_result* res) {
  if (res == nullptr || !res->res.empirical_threshold.has_value()) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return *res->res.empirical_threshold;
}

int gpr_sweep_write_csv(const gpr_sweep_result* res, const char* path) {
  return guarded([&] {
    if (res == nullptr || path == nullptr) {
      throw std::invalid_argument("sweep_write_csv: null argument");
    }
    gpr::write_csv(res->res, path);
  });
}

int gpr_sweep_write_svg(const gpr_sweep_result* res, const char* path) {
  return guarded([&] {
    if (res == nullptr || path == nullptr) {
      throw std::invalid_argument("sweep_write_svg: null argument");
    }
    gpr::write_svg(res->res, path);
  });
}

}  // extern "C"
