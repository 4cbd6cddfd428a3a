// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qst/estimator.hpp"
#include "qst/frames.hpp"
#include "qst/metrics.hpp"
#include "qst/states.hpp"

namespace qst {

struct SampleSpec {
  enum class Kind { kGrid, kPhase };
  Kind kind = Kind::kGrid;
  GridCounts counts = GridCounts::desk();
  int phase_n = 50;

  std::vector<PureState4> states() const;
  long size() const;
};

struct ExperimentConfig {
  std::vector<Frame> frames;         // processed in order
  std::vector<double> sigma_grid;    // radians, ascending, >= 0
  SampleSpec sample;
  ReconstructOptions estimator;      // estimator.seed derived from master_seed
  std::uint64_t master_seed = 20260809;
  std::string out_path = "sweep.csv";
  int threads = 0;                   // 0 = hardware concurrency

  static ExperimentConfig defaults();
};

/// Throws std::invalid_argument on an unusable config (empty frames, empty
/// or unsorted sigma grid, empty sample, ...).
void validate(const ExperimentConfig& config);

/// One aggregated row per (frame, sigma).
struct SweepRecord {
  std::string frame;
  double sigma = 0.0;
  double f_av = 0.0;
  double gamma_av = 0.0;
  double c_av = 0.0;
  long n_states = 0;
  long n_converged = 0;
  std::uint64_t master_seed = 0;
};

/// Runs the full sweep: for every (frame, sigma, state) triple the noisy
/// intensities are drawn from the stream with index
/// sigma_index * n_states + state_index, the state is reconstructed, and the
/// metrics against the true input state are accumulated. Averages include
/// non-converged fits (their count is reported separately). Records come out
/// in (frame, sigma) order and are identical for identical configs no matter
/// how many threads run the reconstructions.
std::vector<SweepRecord> run_sweep(const ExperimentConfig& config);

/// Header "frame,sigma,f_av,gamma_av,c_av,n_states,n_converged,master_seed"
/// plus one row per record; reals carry 12 significant digits.
void emit_csv(const std::vector<SweepRecord>& records, std::ostream& out);
void emit_csv(const std::vector<SweepRecord>& records,
              const std::string& path);

/// Inverse of emit_csv; '#' comment lines are skipped. Throws on a malformed
/// header or row.
std::vector<SweepRecord> parse_csv(std::istream& in);
std::vector<SweepRecord> load_csv(const std::string& path);

enum class Metric { kFidelity, kPurity, kConcurrence };

Metric metric_from_name(const std::string& name);  // f_av | gamma_av | c_av
std::string metric_name(Metric m);

struct PlotMeta {
  std::uint64_t master_seed = 0;
  std::string config_digest;
};

/// SVG line plot: sigma on the abscissa, one polyline per frame. Concurrence
/// plots carry a dashed horizontal reference at 1/sqrt(2). Requires records
/// covering at least 2 sigma points; throws otherwise. The meta block is
/// embedded as an XML comment.
void emit_plot(const std::vector<SweepRecord>& records, Metric metric,
               std::ostream& out, const PlotMeta& meta = {});
void emit_plot(const std::vector<SweepRecord>& records, Metric metric,
               const std::string& path, const PlotMeta& meta = {});

/// Key=value config file mirroring ExperimentConfig; '#' lines are comments.
/// Recognized keys: frames, sigma_grid, sample, grid_counts, phase_n, seed,
/// restarts, max_iters, grad_tol, out, threads.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);

/// FNV-1a hash of the canonical key=value serialization, as 16 hex digits.
std::string config_digest(const ExperimentConfig& config);
std::string format_config(const ExperimentConfig& config);

}  // namespace qst
