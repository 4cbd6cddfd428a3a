// SPDX-License-Identifier: Apache-2.0
#include "qst/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "qst/cli.hpp"
#include "qst/noise.hpp"

namespace qst {

namespace {

// Salt separating estimator-restart streams from measurement-noise streams.
constexpr std::uint64_t kEstimatorSalt = 0x455354ULL;

std::string fmt_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

const char* kCsvHeader =
    "frame,sigma,f_av,gamma_av,c_av,n_states,n_converged,master_seed";

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

struct PerState {
  MetricsRecord metrics;
  bool converged = false;
};

}  // namespace

std::vector<PureState4> SampleSpec::states() const {
  return kind == Kind::kGrid ? grid_sample(counts) : phase_sample(phase_n);
}

long SampleSpec::size() const {
  return kind == Kind::kGrid ? counts.total() : phase_n;
}

ExperimentConfig ExperimentConfig::defaults() {
  ExperimentConfig c;
  c.frames = {mub_frame(), vinzant_frame()};
  const double pi = std::acos(-1.0);
  c.sigma_grid = {0.0, pi / 36, pi / 18, pi / 9, pi / 6, pi / 4, pi / 3};
  return c;
}

void validate(const ExperimentConfig& config) {
  if (config.frames.empty())
    throw std::invalid_argument("config: no frames selected");
  for (const Frame& f : config.frames)
    if (f.vectors.empty())
      throw std::invalid_argument("config: frame " + f.name + " is empty");
  if (config.sigma_grid.empty())
    throw std::invalid_argument("config: sigma_grid is empty");
  for (std::size_t i = 0; i < config.sigma_grid.size(); ++i) {
    const double s = config.sigma_grid[i];
    if (!(s >= 0.0) || !std::isfinite(s))
      throw std::invalid_argument("config: sigma values must be finite and >= 0");
    if (i > 0 && s < config.sigma_grid[i - 1])
      throw std::invalid_argument("config: sigma_grid must be ascending");
  }
  if (config.sample.size() < 1)
    throw std::invalid_argument("config: empty sample");
  if (config.sample.kind == SampleSpec::Kind::kPhase &&
      config.sample.phase_n < 1)
    throw std::invalid_argument("config: phase_n must be >= 1");
  if (config.estimator.restarts < 1)
    throw std::invalid_argument("config: restarts must be >= 1");
  if (config.estimator.max_iters < 1)
    throw std::invalid_argument("config: max_iters must be >= 1");
  if (!(config.estimator.grad_tol > 0.0))
    throw std::invalid_argument("config: grad_tol must be > 0");
  if (config.threads < 0)
    throw std::invalid_argument("config: threads must be >= 0");
}

std::vector<SweepRecord> run_sweep(const ExperimentConfig& config) {
  validate(config);

  const std::vector<PureState4> states = config.sample.states();
  const long n_states = static_cast<long>(states.size());
  const long n_sigmas = static_cast<long>(config.sigma_grid.size());
  const long n_frames = static_cast<long>(config.frames.size());

  ReconstructOptions opts = config.estimator;
  opts.seed = derived_seed(config.master_seed, 0, kEstimatorSalt);

  // one slot per (frame, sigma, state); workers fill disjoint slots
  const long total = n_frames * n_sigmas * n_states;
  std::vector<PerState> slots(static_cast<std::size_t>(total));

  auto run_task = [&](long task) {
    const long fi = task / (n_sigmas * n_states);
    const long rem = task % (n_sigmas * n_states);
    const long si = rem / n_states;
    const long sti = rem % n_states;

    const Frame& frame = config.frames[static_cast<std::size_t>(fi)];
    const PureState4& psi = states[static_cast<std::size_t>(sti)];
    const double sigma = config.sigma_grid[static_cast<std::size_t>(si)];

    RngStream stream(config.master_seed,
                     static_cast<std::uint64_t>(si * n_states + sti));
    std::vector<double> measured(frame.vectors.size());
    for (std::size_t k = 0; k < frame.vectors.size(); ++k)
      measured[k] = noisy_intensity(frame.vectors[k], psi, sigma, stream);

    const FitResult fit = reconstruct(frame, measured, opts);
    slots[static_cast<std::size_t>(task)] =
        PerState{evaluate_metrics(psi, fit.rho), fit.converged};
  };

  int n_threads = config.threads > 0
                      ? config.threads
                      : static_cast<int>(std::thread::hardware_concurrency());
  n_threads = std::clamp<long>(n_threads, 1, total);

  if (n_threads == 1) {
    for (long task = 0; task < total; ++task) run_task(task);
  } else {
    std::atomic<long> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
      for (;;) {
        const long task = next.fetch_add(1);
        if (task >= total) return;
        try {
          run_task(task);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }

  // deterministic reduction in (frame, sigma) order
  std::vector<SweepRecord> records;
  records.reserve(static_cast<std::size_t>(n_frames * n_sigmas));
  for (long fi = 0; fi < n_frames; ++fi) {
    for (long si = 0; si < n_sigmas; ++si) {
      SweepRecord rec;
      rec.frame = config.frames[static_cast<std::size_t>(fi)].name;
      rec.sigma = config.sigma_grid[static_cast<std::size_t>(si)];
      rec.n_states = n_states;
      rec.master_seed = config.master_seed;
      double f_sum = 0.0, g_sum = 0.0, c_sum = 0.0;
      long converged = 0;
      const long base = (fi * n_sigmas + si) * n_states;
      for (long sti = 0; sti < n_states; ++sti) {
        const PerState& ps = slots[static_cast<std::size_t>(base + sti)];
        f_sum += ps.metrics.fidelity;
        g_sum += ps.metrics.purity;
        c_sum += ps.metrics.concurrence;
        if (ps.converged) ++converged;
      }
      rec.f_av = f_sum / static_cast<double>(n_states);
      rec.gamma_av = g_sum / static_cast<double>(n_states);
      rec.c_av = c_sum / static_cast<double>(n_states);
      rec.n_converged = converged;
      records.push_back(std::move(rec));
    }
  }
  return records;
}

void emit_csv(const std::vector<SweepRecord>& records, std::ostream& out) {
  if (records.empty()) throw std::invalid_argument("emit_csv: no records");
  out << kCsvHeader << "\n";
  for (const SweepRecord& r : records) {
    out << r.frame << ',' << fmt_real(r.sigma) << ',' << fmt_real(r.f_av)
        << ',' << fmt_real(r.gamma_av) << ',' << fmt_real(r.c_av) << ','
        << r.n_states << ',' << r.n_converged << ',' << r.master_seed << "\n";
  }
}

void emit_csv(const std::vector<SweepRecord>& records,
              const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit_csv: cannot write " + path);
  emit_csv(records, out);
  if (!out) throw std::runtime_error("emit_csv: write failed for " + path);
}

std::vector<SweepRecord> parse_csv(std::istream& in) {
  std::vector<SweepRecord> records;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    if (!have_header) {
      if (text != kCsvHeader)
        throw std::invalid_argument("parse_csv: unexpected header \"" + text +
                                    "\"");
      have_header = true;
      continue;
    }
    const auto fields = split(text, ',');
    if (fields.size() != 8)
      throw std::invalid_argument("parse_csv: expected 8 fields, got row \"" +
                                  text + "\"");
    try {
      SweepRecord r;
      r.frame = fields[0];
      r.sigma = std::stod(fields[1]);
      r.f_av = std::stod(fields[2]);
      r.gamma_av = std::stod(fields[3]);
      r.c_av = std::stod(fields[4]);
      r.n_states = std::stol(fields[5]);
      r.n_converged = std::stol(fields[6]);
      r.master_seed = std::stoull(fields[7]);
      records.push_back(std::move(r));
    } catch (const std::exception&) {
      throw std::invalid_argument("parse_csv: malformed row \"" + text + "\"");
    }
  }
  if (!have_header) throw std::invalid_argument("parse_csv: missing header");
  return records;
}

std::vector<SweepRecord> load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("load_csv: cannot open " + path);
  return parse_csv(in);
}

Metric metric_from_name(const std::string& name) {
  if (name == "f_av") return Metric::kFidelity;
  if (name == "gamma_av") return Metric::kPurity;
  if (name == "c_av") return Metric::kConcurrence;
  throw std::invalid_argument("unknown metric \"" + name +
                              "\" (expected f_av, gamma_av or c_av)");
}

std::string metric_name(Metric m) {
  switch (m) {
    case Metric::kFidelity:
      return "f_av";
    case Metric::kPurity:
      return "gamma_av";
    case Metric::kConcurrence:
      return "c_av";
  }
  return "f_av";
}

namespace {

Frame frame_from_spec(const std::string& spec) {
  if (spec == "mub20") return mub_frame();
  if (spec == "vinzant11") return vinzant_frame();
  // anything else is a custom-frame file path
  return load_frame(spec);
}

}  // namespace

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig config = ExperimentConfig::defaults();
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key=value");
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    try {
      if (key == "frames") {
        config.frames.clear();
        for (const std::string& item : split(value, ','))
          config.frames.push_back(frame_from_spec(trim(item)));
      } else if (key == "sigma_grid") {
        config.sigma_grid.clear();
        for (const std::string& item : split(value, ','))
          config.sigma_grid.push_back(parse_real_pi(trim(item)));
      } else if (key == "sample") {
        if (value == "grid")
          config.sample.kind = SampleSpec::Kind::kGrid;
        else if (value == "phase")
          config.sample.kind = SampleSpec::Kind::kPhase;
        else
          throw std::invalid_argument("sample must be grid or phase");
      } else if (key == "grid_counts") {
        const auto items = split(value, ',');
        if (items.size() != 6)
          throw std::invalid_argument("grid_counts needs 6 integers");
        GridCounts c;
        c.theta = std::stoi(items[0]);
        c.beta = std::stoi(items[1]);
        c.delta = std::stoi(items[2]);
        c.phi12 = std::stoi(items[3]);
        c.phi13 = std::stoi(items[4]);
        c.phi14 = std::stoi(items[5]);
        config.sample.counts = c;
      } else if (key == "phase_n") {
        config.sample.phase_n = std::stoi(value);
      } else if (key == "seed") {
        config.master_seed = std::stoull(value);
      } else if (key == "restarts") {
        config.estimator.restarts = std::stoi(value);
      } else if (key == "max_iters") {
        config.estimator.max_iters = std::stoi(value);
      } else if (key == "grad_tol") {
        config.estimator.grad_tol = std::stod(value);
      } else if (key == "out") {
        config.out_path = value;
      } else if (key == "threads") {
        config.threads = std::stoi(value);
      } else {
        throw std::invalid_argument("unknown key \"" + key + "\"");
      }
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": " + e.what());
    } catch (const std::exception& e) {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": bad value for " + key);
    }
  }
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  return parse_config(in);
}

std::string format_config(const ExperimentConfig& config) {
  std::ostringstream out;
  out << "frames=";
  for (std::size_t i = 0; i < config.frames.size(); ++i)
    out << (i ? "," : "") << config.frames[i].name;
  out << "\nsigma_grid=";
  char buf[40];
  for (std::size_t i = 0; i < config.sigma_grid.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", config.sigma_grid[i]);
    out << (i ? "," : "") << buf;
  }
  const bool grid = config.sample.kind == SampleSpec::Kind::kGrid;
  out << "\nsample=" << (grid ? "grid" : "phase");
  const GridCounts& c = config.sample.counts;
  out << "\ngrid_counts=" << c.theta << ',' << c.beta << ',' << c.delta << ','
      << c.phi12 << ',' << c.phi13 << ',' << c.phi14;
  out << "\nphase_n=" << config.sample.phase_n;
  out << "\nrestarts=" << config.estimator.restarts;
  out << "\nmax_iters=" << config.estimator.max_iters;
  std::snprintf(buf, sizeof(buf), "%.17g", config.estimator.grad_tol);
  out << "\ngrad_tol=" << buf;
  out << "\nseed=" << config.master_seed;
  out << "\nthreads=" << config.threads;
  out << "\nout=" << config.out_path << "\n";
  return out.str();
}

std::string config_digest(const ExperimentConfig& config) {
  const std::string text = format_config(config);
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace qst
