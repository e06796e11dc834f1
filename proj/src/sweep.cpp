#include "sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "errors.hpp"

namespace gpr {

std::vector<double> default_sigma_grid() {
  // 11 uniformly spaced points spanning the rank-recovery transition at the
  // default geometry (d=3, n=20, m=30, haar transforms). Pilot runs put the
  // drop from fraction 1 to 0 inside [0.45, 0.7], so 0.1..1.1 brackets it
  // with margin on both sides.
  std::vector<double> grid;
  grid.reserve(11);
  for (int i = 0; i < 11; ++i) {
    grid.push_back(0.1 + 0.1 * i);
  }
  return grid;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

TrialRecord run_trial(int d, int n, int m, double sigma, std::uint64_t seed,
                      TransformMode mode, const SolverConfig& solver,
                      const TrialObserver& observer) {
  TrialRecord rec;
  rec.sigma = sigma;
  rec.seed = seed;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  rec.sdp_objective = rec.refined_objective = rec.duality_gap = nan;
  rec.spectrum_gap = rec.cert_min_eig = rec.cert_stationarity = nan;

  try {
    const Instance inst = make_instance(d, n, m, sigma, seed, mode);
    const Coupling coupling = build_coupling(inst);
    const SdpSolution sol = solve_sdp(coupling, solver);
    rec.sdp_objective = sol.objective;
    rec.admm_iterations = sol.iterations;
    rec.status = sol.status == SolveStatus::kConverged ? "converged" : "max_iters";

    const OrthogonalSet rounded = round_solution(sol, d);
    const RefineResult refined = alternate(inst, rounded);
    rec.refined_objective = refined.objective;

    const RecoveryDiagnostics diag =
        rank_recovered(coupling, sol, refined.transforms, solver);
    rec.recovered = diag.recovered;
    rec.duality_gap = diag.duality_gap;
    rec.spectrum_gap = diag.spectrum_gap;
    rec.cert_min_eig = diag.certificate.slack_min_eig;
    rec.cert_stationarity = diag.certificate.stationarity_residual;
    rec.estimated_rank = diag.estimated_rank;

    if (observer) {
      observer(TrialInternals{inst, coupling, sol, refined.transforms,
                              diag.certificate, rec});
    }
  } catch (const std::exception& e) {
    rec.recovered = false;
    rec.status = std::string("error: ") + e.what();
  }
  return rec;
}

SweepResult run_sweep(const SweepConfig& cfg, const SweepProgress& progress) {
  if (cfg.trials < 1) {
    throw std::invalid_argument("run_sweep: trials must be >= 1");
  }
  if (cfg.sigma_grid.empty()) {
    throw std::invalid_argument("run_sweep: sigma grid is empty");
  }
  for (std::size_t i = 0; i < cfg.sigma_grid.size(); ++i) {
    if (!(cfg.sigma_grid[i] >= 0.0) ||
        (i > 0 && !(cfg.sigma_grid[i] > cfg.sigma_grid[i - 1]))) {
      throw std::invalid_argument(
          "run_sweep: sigma grid must be non-negative and strictly increasing");
    }
  }

  const int jobs = cfg.jobs > 0
                       ? cfg.jobs
                       : std::max(1u, std::thread::hardware_concurrency());

  SweepResult result;
  result.sigma_grid = cfg.sigma_grid;
  result.trials = cfg.trials;

  for (std::size_t s = 0; s < cfg.sigma_grid.size(); ++s) {
    std::vector<TrialRecord> batch(cfg.trials);
    std::atomic<int> next{0};
    auto worker = [&]() {
      for (;;) {
        const int t = next.fetch_add(1);
        if (t >= cfg.trials) {
          return;
        }
        const std::uint64_t seed = derive_seed(cfg.master_seed, s, t);
        batch[t] = run_trial(cfg.d, cfg.n, cfg.m, cfg.sigma_grid[s], seed,
                             cfg.mode, cfg.solver, cfg.observer);
        batch[t].trial_index = t;
      }
    };
    std::vector<std::thread> pool;
    const int workers = std::min(jobs, cfg.trials);
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back(worker);
    }
    for (std::thread& th : pool) {
      th.join();
    }

    int hits = 0;
    for (const TrialRecord& r : batch) {
      hits += r.recovered ? 1 : 0;
    }
    result.fractions.push_back(static_cast<double>(hits) / cfg.trials);
    result.records.insert(result.records.end(),
                          std::make_move_iterator(batch.begin()),
                          std::make_move_iterator(batch.end()));
    if (progress) {
      progress(static_cast<int>(s) + 1, result);
    }
  }

  for (std::size_t s = 0; s < result.fractions.size(); ++s) {
    if (result.fractions[s] >= 0.95) {
      result.empirical_threshold = result.sigma_grid[s];
    }
  }
  return result;
}

namespace {

std::string sanitize_status(const std::string& status) {
  std::string out = status;
  for (char& ch : out) {
    if (ch == ',' || ch == '\n' || ch == '\r') {
      ch = ';';
    }
  }
  return out;
}

}  // namespace

void write_csv(const SweepResult& result, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("write_csv: cannot open " + path);
  }
  out << "sigma,trial,seed,recovered,sdp_objective,refined_objective,"
         "duality_gap,spectrum_gap,cert_min_eig,cert_stationarity,"
         "estimated_rank,admm_iterations,status\n";
  for (const TrialRecord& r : result.records) {
    out << format_double(r.sigma) << ',' << r.trial_index << ',' << r.seed
        << ',' << (r.recovered ? 1 : 0) << ',' << format_double(r.sdp_objective)
        << ',' << format_double(r.refined_objective) << ','
        << format_double(r.duality_gap) << ',' << format_double(r.spectrum_gap)
        << ',' << format_double(r.cert_min_eig) << ','
        << format_double(r.cert_stationarity) << ',' << r.estimated_rank << ','
        << r.admm_iterations << ',' << sanitize_status(r.status) << '\n';
  }
  out.flush();
  if (!out) {
    throw IoError("write_csv: write failed for " + path);
  }
}

namespace {

// Plot geometry shared by the SVG emitter and its tests.
constexpr double kSvgWidth = 640.0;
constexpr double kSvgHeight = 440.0;
constexpr double kPlotLeft = 70.0;
constexpr double kPlotRight = 615.0;
constexpr double kPlotTop = 30.0;
constexpr double kPlotBottom = 385.0;

std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

}  // namespace

void write_svg(const SweepResult& result, const std::string& path) {
  if (result.sigma_grid.empty()) {
    throw std::invalid_argument("write_svg: need at least one sigma point");
  }
  const double smin = result.sigma_grid.front();
  const double smax = result.sigma_grid.back();
  const auto x_of = [&](double sigma) {
    if (smax == smin) {
      return 0.5 * (kPlotLeft + kPlotRight);
    }
    return kPlotLeft + (sigma - smin) / (smax - smin) * (kPlotRight - kPlotLeft);
  };
  const auto y_of = [&](double frac) {
    return kPlotBottom - frac * (kPlotBottom - kPlotTop);
  };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSvgWidth
      << "\" height=\"" << kSvgHeight << "\" viewBox=\"0 0 " << kSvgWidth
      << " " << kSvgHeight << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << kSvgWidth << "\" height=\""
      << kSvgHeight << "\" fill=\"#ffffff\"/>\n"
      << "<text x=\"" << svg_num(0.5 * (kPlotLeft + kPlotRight))
      << "\" y=\"18\" font-family=\"sans-serif\" font-size=\"14\" "
         "text-anchor=\"middle\">rank recovery rate</text>\n";

  // Axes.
  svg << "<line x1=\"" << svg_num(kPlotLeft) << "\" y1=\"" << svg_num(kPlotBottom)
      << "\" x2=\"" << svg_num(kPlotRight) << "\" y2=\"" << svg_num(kPlotBottom)
      << "\" stroke=\"#000000\" stroke-width=\"1\"/>\n"
      << "<line x1=\"" << svg_num(kPlotLeft) << "\" y1=\"" << svg_num(kPlotTop)
      << "\" x2=\"" << svg_num(kPlotLeft) << "\" y2=\"" << svg_num(kPlotBottom)
      << "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";

  // Horizontal ticks and gridlines at fraction 0, .25, .5, .75, 1.
  for (int k = 0; k <= 4; ++k) {
    const double f = 0.25 * k;
    const double y = y_of(f);
    svg << "<line x1=\"" << svg_num(kPlotLeft - 5) << "\" y1=\"" << svg_num(y)
        << "\" x2=\"" << svg_num(kPlotLeft) << "\" y2=\"" << svg_num(y)
        << "\" stroke=\"#000000\" stroke-width=\"1\"/>\n"
        << "<line x1=\"" << svg_num(kPlotLeft) << "\" y1=\"" << svg_num(y)
        << "\" x2=\"" << svg_num(kPlotRight) << "\" y2=\"" << svg_num(y)
        << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n"
        << "<text x=\"" << svg_num(kPlotLeft - 9) << "\" y=\"" << svg_num(y + 4)
        << "\" font-family=\"sans-serif\" font-size=\"12\" "
           "text-anchor=\"end\">" << tick_label(f) << "</text>\n";
  }

  // Vertical ticks: one per sigma when the grid is small.
  const std::size_t stride =
      result.sigma_grid.size() <= 12 ? 1 : (result.sigma_grid.size() + 11) / 12;
  for (std::size_t i = 0; i < result.sigma_grid.size(); i += stride) {
    const double x = x_of(result.sigma_grid[i]);
    svg << "<line x1=\"" << svg_num(x) << "\" y1=\"" << svg_num(kPlotBottom)
        << "\" x2=\"" << svg_num(x) << "\" y2=\"" << svg_num(kPlotBottom + 5)
        << "\" stroke=\"#000000\" stroke-width=\"1\"/>\n"
        << "<text x=\"" << svg_num(x) << "\" y=\"" << svg_num(kPlotBottom + 20)
        << "\" font-family=\"sans-serif\" font-size=\"12\" "
           "text-anchor=\"middle\">" << tick_label(result.sigma_grid[i])
        << "</text>\n";
  }

  svg << "<text x=\"" << svg_num(0.5 * (kPlotLeft + kPlotRight)) << "\" y=\""
      << svg_num(kSvgHeight - 12)
      << "\" font-family=\"sans-serif\" font-size=\"13\" "
         "text-anchor=\"middle\">noise sigma</text>\n"
      << "<text x=\"18\" y=\"" << svg_num(0.5 * (kPlotTop + kPlotBottom))
      << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" "
         "transform=\"rotate(-90 18 " << svg_num(0.5 * (kPlotTop + kPlotBottom))
      << ")\">fraction recovered</text>\n";

  if (result.sigma_grid.size() >= 2) {
    svg << "<polyline fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"2\" "
           "points=\"";
    for (std::size_t i = 0; i < result.sigma_grid.size(); ++i) {
      if (i > 0) {
        svg << ' ';
      }
      svg << svg_num(x_of(result.sigma_grid[i])) << ','
          << svg_num(y_of(result.fractions[i]));
    }
    svg << "\"/>\n";
  }
  for (std::size_t i = 0; i < result.sigma_grid.size(); ++i) {
    svg << "<circle cx=\"" << svg_num(x_of(result.sigma_grid[i])) << "\" cy=\""
        << svg_num(y_of(result.fractions[i]))
        << "\" r=\"4\" fill=\"#1f6fb2\"/>\n";
  }
  svg << "</svg>\n";

  std::ofstream out(path);
  if (!out) {
    throw IoError("write_svg: cannot open " + path);
  }
  out << svg.str();
  out.flush();
  if (!out) {
    throw IoError("write_svg: write failed for " + path);
  }
}

Instance read_instance_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("read_instance_text: cannot open " + path);
  }
  Instance inst;
  if (!(in >> inst.d >> inst.n >> inst.m >> inst.sigma)) {
    throw IoError("read_instance_text: bad header in " + path);
  }
  if (inst.d < 1 || inst.n < 1 || inst.m < 1 || !(inst.sigma >= 0.0)) {
    throw IoError("read_instance_text: invalid dimensions in " + path);
  }
  inst.measurements.reserve(inst.n);
  for (int i = 0; i < inst.n; ++i) {
    Matrix a(inst.d, inst.m);
    for (int r = 0; r < inst.d; ++r) {
      for (int c = 0; c < inst.m; ++c) {
        if (!(in >> a(r, c))) {
          std::ostringstream os;
          os << "read_instance_text: truncated data (measurement " << i
             << ") in " << path;
          throw IoError(os.str());
        }
      }
    }
    inst.measurements.push_back(std::move(a));
  }
  inst.has_ground_truth = false;
  return inst;
}

void write_instance_text(const Instance& instance, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("write_instance_text: cannot open " + path);
  }
  out << instance.d << ' ' << instance.n << ' ' << instance.m << ' '
      << format_double(instance.sigma) << '\n';
  for (const Matrix& a : instance.measurements) {
    for (int r = 0; r < instance.d; ++r) {
      for (int c = 0; c < instance.m; ++c) {
        if (c > 0) {
          out << ' ';
        }
        out << format_double(a(r, c));
      }
      out << '\n';
    }
  }
  out.flush();
  if (!out) {
    throw IoError("write_instance_text: write failed for " + path);
  }
}

}  // namespace gpr
