// SPDX-License-Identifier: Apache-2.0
#include "qst/frames.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "qst/noise.hpp"

namespace qst {

namespace {

constexpr double kIntensityNormTol = 1e-9;

Vec4 v4(Complex a, Complex b, Complex c, Complex d) {
  Vec4 v;
  v << a, b, c, d;
  return v;
}

const Complex I{0.0, 1.0};

}  // namespace

Frame mub_frame() {
  const double h = 0.5;
  Frame f;
  f.id = FrameId::kMub20;
  f.name = "mub20";
  f.vectors = {
      // standard basis
      v4(1, 0, 0, 0),
      v4(0, 1, 0, 0),
      v4(0, 0, 1, 0),
      v4(0, 0, 0, 1),
      // second basis
      v4(h, h, h, h),
      v4(h, h, -h, -h),
      v4(h, -h, -h, h),
      v4(h, -h, h, -h),
      // third basis
      v4(h, -h, -h * I, -h * I),
      v4(h, -h, h * I, h * I),
      v4(h, h, h * I, -h * I),
      v4(h, h, -h * I, h * I),
      // fourth basis
      v4(h, -h * I, -h * I, -h),
      v4(h, -h * I, h * I, h),
      v4(h, h * I, h * I, -h),
      v4(h, h * I, -h * I, h),
      // fifth basis
      v4(h, -h * I, -h, -h * I),
      v4(h, -h * I, h, h * I),
      v4(h, h * I, -h, h * I),
      v4(h, h * I, h, -h * I),
  };
  return f;
}

std::vector<Vec4> vinzant_raw_vectors() {
  return {
      v4(1, 0, 0, 0),
      v4(0, 1, 0, 0),
      v4(0, 0, 1, 0),
      v4(0, 0, 0, 1),
      v4(1, 9. * I, {-5, -7}, {-6, -7}),
      v4(1, {1, -1}, {-5, -2}, {-1, -8}),
      v4(1, {-2, 4}, {-4, -2}, {3, 8}),
      v4(1, {-3, 1}, {1, -8}, {7, -6}),
      v4(1, {3, -3}, {-8, 7}, {-6, -2}),
      v4(1, {-3, 5}, {5, 6}, {0, 2}),
      v4(1, {-3, 8}, {5, -5}, {-6, -4}),
  };
}

Frame vinzant_frame() {
  Frame f = custom_frame(vinzant_raw_vectors(), "vinzant11");
  f.id = FrameId::kVinzant11;
  return f;
}

Frame custom_frame(std::vector<Vec4> raw, std::string name) {
  if (raw.empty())
    throw std::invalid_argument("custom_frame: empty vector list");
  Frame f;
  f.id = FrameId::kCustom;
  f.name = std::move(name);
  f.vectors.reserve(raw.size());
  for (const Vec4& v : raw) {
    if (!v.allFinite())
      throw std::invalid_argument("custom_frame: non-finite entry");
    const double norm = v.norm();
    if (!(norm > 0.0))
      throw std::invalid_argument("custom_frame: zero vector");
    f.vectors.push_back(v / norm);
  }
  return f;
}

Frame parse_frame(std::istream& in, std::string name) {
  std::vector<Vec4> raw;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    double re[4], im[4];
    bool ok = true;
    for (int i = 0; i < 4 && ok; ++i) ok = bool(row >> re[i] >> im[i]);
    if (!ok) {
      std::ostringstream msg;
      msg << "parse_frame: expected 8 reals per line, got \"" << line << "\"";
      throw std::invalid_argument(msg.str());
    }
    raw.push_back(v4({re[0], im[0]}, {re[1], im[1]}, {re[2], im[2]},
                     {re[3], im[3]}));
  }
  return custom_frame(std::move(raw), std::move(name));
}

Frame load_frame(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_frame: cannot open " + path);
  // frame takes its name from the file stem
  std::string name = path;
  if (auto slash = name.find_last_of("/\\"); slash != std::string::npos)
    name = name.substr(slash + 1);
  if (auto dot = name.find_last_of('.'); dot != std::string::npos && dot > 0)
    name = name.substr(0, dot);
  return parse_frame(in, name);
}

double intensity(const Vec4& frame_vector, const PureState4& state) {
  const double fn = frame_vector.norm();
  if (std::abs(fn - 1.0) > kIntensityNormTol) {
    std::ostringstream msg;
    msg << "intensity: frame vector norm " << fn << " deviates from 1";
    throw std::invalid_argument(msg.str());
  }
  const double sn = state.vec().norm();
  if (std::abs(sn - 1.0) > kIntensityNormTol) {
    std::ostringstream msg;
    msg << "intensity: state norm " << sn << " deviates from 1";
    throw std::invalid_argument(msg.str());
  }
  const Complex amp = frame_vector.dot(state.vec());
  return std::clamp(std::norm(amp), 0.0, 1.0);
}

namespace {

StateAngles random_angles(RngStream& rng) {
  StateAngles a;
  a.theta = rng.uniform(0.0, std::acos(-1.0));
  a.beta = rng.uniform(0.0, std::acos(-1.0));
  a.delta = rng.uniform(0.0, std::acos(-1.0));
  a.phi12 = rng.uniform(0.0, 2.0 * std::acos(-1.0));
  a.phi13 = rng.uniform(0.0, 2.0 * std::acos(-1.0));
  a.phi14 = rng.uniform(0.0, 2.0 * std::acos(-1.0));
  return a;
}

std::vector<double> intensity_vector(const Frame& frame,
                                     const PureState4& psi) {
  std::vector<double> out(frame.vectors.size());
  for (std::size_t k = 0; k < frame.vectors.size(); ++k)
    out[k] = intensity(frame.vectors[k], psi);
  return out;
}

double l2_dist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

// Distance between rays: min over global phase of ||psi - e^{ia} chi||.
double state_dist(const PureState4& a, const PureState4& b) {
  const double overlap = std::abs(a.vec().dot(b.vec()));
  return std::sqrt(std::max(0.0, 2.0 - 2.0 * std::min(overlap, 1.0)));
}

}  // namespace

ProbeReport injectivity_probe(const Frame& frame, int n_pairs,
                              std::uint64_t seed) {
  if (n_pairs < 1)
    throw std::invalid_argument("injectivity_probe: n_pairs must be >= 1");

  RngStream rng(seed, 0);
  ProbeReport report;
  report.n_pairs = n_pairs;
  report.min_intensity_dist = std::numeric_limits<double>::infinity();
  report.min_ratio = std::numeric_limits<double>::infinity();

  for (int pair = 0; pair < n_pairs; ++pair) {
    const StateAngles a = random_angles(rng);
    StateAngles b = random_angles(rng);
    if (pair % 2 == 1) {
      // phase-matched pair: identical moduli, phases redrawn
      b.theta = a.theta;
      b.beta = a.beta;
      b.delta = a.delta;
    }
    const PureState4 sa = state_from_angles(a);
    const PureState4 sb = state_from_angles(b);

    const double sd = state_dist(sa, sb);
    if (sd <= 1e-9) continue;  // effectively the same ray, not "distinct"

    const double id = l2_dist(intensity_vector(frame, sa),
                              intensity_vector(frame, sb));
    report.min_intensity_dist = std::min(report.min_intensity_dist, id);
    report.min_ratio = std::min(report.min_ratio, id / sd);
    if (id < 1e-9 && sd > 1e-6) ++report.n_flagged;
  }
  return report;
}

std::string frame_id_name(FrameId id) {
  switch (id) {
    case FrameId::kMub20:
      return "mub20";
    case FrameId::kVinzant11:
      return "vinzant11";
    case FrameId::kCustom:
      return "custom";
  }
  return "custom";
}

}  // namespace qst
