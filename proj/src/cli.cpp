// SPDX-License-Identifier: Apache-2.0
#include "qst/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "qst/estimator.hpp"
#include "qst/frames.hpp"
#include "qst/metrics.hpp"
#include "qst/noise.hpp"
#include "qst/runner.hpp"
#include "qst/states.hpp"

namespace qst {

namespace {

constexpr std::uint64_t kCliEstimatorSalt = 0x455354ULL;

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

Frame frame_from_arg(const std::string& spec) {
  if (spec == "mub20") return mub_frame();
  if (spec == "vinzant11") return vinzant_frame();
  if (spec.find('/') != std::string::npos ||
      spec.find('.') != std::string::npos)
    return load_frame(spec);
  throw std::invalid_argument("unknown frame \"" + spec +
                              "\" (expected mub20, vinzant11 or a file path)");
}

std::string out_stem(const std::string& path) {
  const auto dot = path.find_last_of('.');
  const auto slash = path.find_last_of("/\\");
  if (dot == std::string::npos ||
      (slash != std::string::npos && dot < slash))
    return path;
  return path.substr(0, dot);
}

void print_matrix(std::ostream& out, const Mat4& m) {
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c)
      out << (c ? "  " : "  ") << '(' << fmt12(m(r, c).real()) << ','
          << fmt12(m(r, c).imag()) << ')';
    out << "\n";
  }
}

struct SweepArgs {
  std::string config_path;
  std::string frames;
  std::string sigma_grid;
  std::string sample;
  std::string grid_counts;
  int phase_n = -1;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string out_path;
  bool plot = false;
  int restarts = -1;
  int max_iters = -1;
  double grad_tol = -1.0;
  int threads = -1;
};

int run_sweep_cmd(const SweepArgs& args, std::ostream& out) {
  ExperimentConfig config = args.config_path.empty()
                                ? ExperimentConfig::defaults()
                                : load_config(args.config_path);
  if (!args.frames.empty()) {
    std::istringstream overrides("frames=" + args.frames);
    // reuse the config parser for the list syntax
    ExperimentConfig tmp = parse_config(overrides);
    config.frames = std::move(tmp.frames);
  }
  if (!args.sigma_grid.empty()) {
    std::istringstream overrides("sigma_grid=" + args.sigma_grid);
    ExperimentConfig tmp = parse_config(overrides);
    config.sigma_grid = std::move(tmp.sigma_grid);
  }
  if (!args.sample.empty()) {
    if (args.sample == "grid")
      config.sample.kind = SampleSpec::Kind::kGrid;
    else if (args.sample == "phase")
      config.sample.kind = SampleSpec::Kind::kPhase;
    else
      throw std::invalid_argument("--sample must be grid or phase");
  }
  if (!args.grid_counts.empty()) {
    std::istringstream overrides("grid_counts=" + args.grid_counts);
    ExperimentConfig tmp = parse_config(overrides);
    config.sample.counts = tmp.sample.counts;
  }
  if (args.phase_n >= 0) config.sample.phase_n = args.phase_n;
  if (args.seed_set) config.master_seed = args.seed;
  if (!args.out_path.empty()) config.out_path = args.out_path;
  if (args.restarts >= 0) config.estimator.restarts = args.restarts;
  if (args.max_iters >= 0) config.estimator.max_iters = args.max_iters;
  if (args.grad_tol >= 0.0) config.estimator.grad_tol = args.grad_tol;
  if (args.threads >= 0) config.threads = args.threads;

  validate(config);
  if (args.plot && config.sigma_grid.size() < 2)
    throw std::invalid_argument(
        "--plot needs a sigma grid with at least 2 points");

  const std::vector<SweepRecord> records = run_sweep(config);
  emit_csv(records, config.out_path);
  out << "wrote " << config.out_path << " (" << records.size()
      << " records, seed " << config.master_seed << ", digest "
      << config_digest(config) << ")\n";

  if (args.plot) {
    const PlotMeta meta{config.master_seed, config_digest(config)};
    const std::string stem = out_stem(config.out_path);
    for (Metric m :
         {Metric::kFidelity, Metric::kPurity, Metric::kConcurrence}) {
      const std::string path = stem + "." + metric_name(m) + ".svg";
      emit_plot(records, m, path, meta);
      out << "wrote " << path << "\n";
    }
  }
  return kExitOk;
}

struct ReconstructArgs {
  std::string theta = "0", beta = "0", delta = "0";
  std::string phi12 = "0", phi13 = "0", phi14 = "0";
  std::string phase;
  std::string frame = "mub20";
  std::string sigma = "0";
  std::uint64_t seed = 0;
  int restarts = 10;
  int max_iters = 2000;
  double grad_tol = 1e-8;
};

int run_reconstruct_cmd(const ReconstructArgs& args, std::ostream& out) {
  const Frame frame = frame_from_arg(args.frame);
  const double sigma = parse_real_pi(args.sigma);
  if (!(sigma >= 0.0))
    throw std::invalid_argument("--sigma must be >= 0");

  PureState4 psi = [&] {
    if (!args.phase.empty()) return phase_entangled(parse_real_pi(args.phase));
    StateAngles a;
    a.theta = parse_real_pi(args.theta);
    a.beta = parse_real_pi(args.beta);
    a.delta = parse_real_pi(args.delta);
    a.phi12 = parse_real_pi(args.phi12);
    a.phi13 = parse_real_pi(args.phi13);
    a.phi14 = parse_real_pi(args.phi14);
    return state_from_angles(a);
  }();

  RngStream stream(args.seed, 0);
  std::vector<double> measured(frame.vectors.size());
  for (std::size_t k = 0; k < frame.vectors.size(); ++k)
    measured[k] = noisy_intensity(frame.vectors[k], psi, sigma, stream);

  ReconstructOptions opts;
  opts.restarts = args.restarts;
  opts.max_iters = args.max_iters;
  opts.grad_tol = args.grad_tol;
  opts.seed = derived_seed(args.seed, 0, kCliEstimatorSalt);
  const FitResult fit = reconstruct(frame, measured, opts);
  const MetricsRecord metrics = evaluate_metrics(psi, fit.rho);

  out << "frame: " << frame.name << "\n";
  out << "sigma: " << fmt12(sigma) << "\n";
  out << "rho_out (re,im):\n";
  print_matrix(out, fit.rho.mat());
  out << "residual: " << fmt12(fit.residual) << "\n";
  out << "iterations: " << fit.iterations << "\n";
  out << "restarts_used: " << fit.restarts_used << "\n";
  out << "converged: " << (fit.converged ? "yes" : "no") << "\n";
  out << "fidelity: " << fmt12(metrics.fidelity) << "\n";
  out << "purity: " << fmt12(metrics.purity) << "\n";
  out << "concurrence: " << fmt12(metrics.concurrence) << "\n";
  return kExitOk;
}

int run_frames_cmd(const std::string& frame_spec, std::ostream& out) {
  const Frame frame = frame_from_arg(frame_spec);
  // one vector per line, custom-frame file format
  for (const Vec4& v : frame.vectors) {
    for (int i = 0; i < 4; ++i)
      out << (i ? " " : "") << fmt12(v(i).real()) << ' '
          << fmt12(v(i).imag());
    out << "\n";
  }
  return kExitOk;
}

int run_probe_cmd(const std::string& frame_spec, int pairs,
                  std::uint64_t seed, std::ostream& out) {
  const Frame frame = frame_from_arg(frame_spec);
  const ProbeReport report = injectivity_probe(frame, pairs, seed);
  out << "frame: " << frame.name << " (" << frame.size() << " vectors)\n";
  out << "pairs: " << report.n_pairs
      << " (alternating independent / phase-matched)\n";
  out << "flagged: " << report.n_flagged << "\n";
  out << "min intensity distance: " << fmt12(report.min_intensity_dist)
      << "\n";
  out << "min intensity/state distance ratio: " << fmt12(report.min_ratio)
      << "\n";
  out << "verdict: "
      << (report.n_flagged == 0 ? "no injectivity violations observed"
                                : "possible injectivity violations")
      << "\n";
  return kExitOk;
}

int run_plot_cmd(const std::string& csv_path, const std::string& metric_arg,
                 std::string out_path, std::ostream& out) {
  const std::vector<SweepRecord> records = load_csv(csv_path);
  if (records.empty())
    throw std::invalid_argument("plot: CSV has no records");
  const Metric metric = metric_from_name(metric_arg);
  if (out_path.empty())
    out_path = out_stem(csv_path) + "." + metric_name(metric) + ".svg";

  // digest of the CSV content stands in for the config digest
  std::ifstream in(csv_path);
  std::ostringstream content;
  content << in.rdbuf();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : content.str()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char digest[20];
  std::snprintf(digest, sizeof(digest), "%016llx",
                static_cast<unsigned long long>(h));

  emit_plot(records, metric, out_path,
            PlotMeta{records.front().master_seed, digest});
  out << "wrote " << out_path << "\n";
  return kExitOk;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Four-level quantum state tomography with noisy frames"};
  app.require_subcommand(1);

  SweepArgs sweep_args;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Run a sigma sweep and write CSV (and optionally SVG plots)");
  sweep->add_option("--config", sweep_args.config_path,
                    "key=value config file");
  sweep->add_option("--frames", sweep_args.frames,
                    "comma list: mub20, vinzant11 or custom-frame files");
  sweep->add_option("--sigma-grid", sweep_args.sigma_grid,
                    "comma list of sigmas (decimals or pi fractions)");
  sweep->add_option("--sample", sweep_args.sample, "grid | phase");
  sweep->add_option("--grid-counts", sweep_args.grid_counts,
                    "6 integers: theta,beta,delta,phi12,phi13,phi14");
  sweep->add_option("--phase-n", sweep_args.phase_n,
                    "size of the entangled phase sample");
  sweep->add_option("--seed", sweep_args.seed, "master seed")
      ->each([&](const std::string&) { sweep_args.seed_set = true; });
  sweep->add_option("--out", sweep_args.out_path, "output CSV path");
  sweep->add_flag("--plot", sweep_args.plot, "emit SVG plots next to the CSV");
  sweep->add_option("--restarts", sweep_args.restarts);
  sweep->add_option("--max-iters", sweep_args.max_iters);
  sweep->add_option("--grad-tol", sweep_args.grad_tol);
  sweep->add_option("--threads", sweep_args.threads);

  ReconstructArgs rec_args;
  CLI::App* rec = app.add_subcommand(
      "reconstruct", "Reconstruct a single state and print the results");
  rec->add_option("--theta", rec_args.theta);
  rec->add_option("--beta", rec_args.beta);
  rec->add_option("--delta", rec_args.delta);
  rec->add_option("--phi12", rec_args.phi12);
  rec->add_option("--phi13", rec_args.phi13);
  rec->add_option("--phi14", rec_args.phi14);
  rec->add_option("--phase", rec_args.phase,
                  "build the phase-entangled state instead of angle input");
  rec->add_option("--frame", rec_args.frame, "mub20 | vinzant11 | file");
  rec->add_option("--sigma", rec_args.sigma, "noise level (rad or pi/N)");
  rec->add_option("--seed", rec_args.seed);
  rec->add_option("--restarts", rec_args.restarts);
  rec->add_option("--max-iters", rec_args.max_iters);
  rec->add_option("--grad-tol", rec_args.grad_tol);

  std::string frames_id;
  CLI::App* frames_cmd =
      app.add_subcommand("frames", "Print the vectors of a frame");
  frames_cmd->add_option("frame", frames_id, "mub20 | vinzant11 | file")
      ->required();

  std::string probe_id;
  int probe_pairs = 1000;
  std::uint64_t probe_seed = 1;
  CLI::App* probe =
      app.add_subcommand("probe", "Empirical injectivity diagnostic");
  probe->add_option("frame", probe_id, "mub20 | vinzant11 | file")
      ->required();
  probe->add_option("--pairs", probe_pairs, "number of random state pairs");
  probe->add_option("--seed", probe_seed);

  std::string plot_csv, plot_metric = "f_av", plot_out;
  CLI::App* plot = app.add_subcommand("plot", "Render an SVG from a sweep CSV");
  plot->add_option("--csv", plot_csv, "input CSV")->required();
  plot->add_option("--metric", plot_metric, "f_av | gamma_av | c_av");
  plot->add_option("--out", plot_out, "output SVG path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadArgs;
  }

  try {
    if (sweep->parsed()) return run_sweep_cmd(sweep_args, out);
    if (rec->parsed()) return run_reconstruct_cmd(rec_args, out);
    if (frames_cmd->parsed()) return run_frames_cmd(frames_id, out);
    if (probe->parsed())
      return run_probe_cmd(probe_id, probe_pairs, probe_seed, out);
    if (plot->parsed())
      return run_plot_cmd(plot_csv, plot_metric, plot_out, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadArgs;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
  err << "error: no subcommand\n";
  return kExitBadArgs;
}

}  // namespace qst
