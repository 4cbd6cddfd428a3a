// SPDX-License-Identifier: Apache-2.0
#include "qst/states.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qst {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNormTol = 1e-12;

void check_polar(double v, const char* name) {
  if (!(v >= 0.0 && v <= kPi)) {
    std::ostringstream msg;
    msg << "angle " << name << " = " << v << " outside [0, pi]";
    throw std::invalid_argument(msg.str());
  }
}

void check_phase(double v, const char* name) {
  if (!(v >= 0.0 && v < 2.0 * kPi)) {
    std::ostringstream msg;
    msg << "angle " << name << " = " << v << " outside [0, 2*pi)";
    throw std::invalid_argument(msg.str());
  }
}

void check_count(int n, const char* name) {
  if (n < 1) {
    std::ostringstream msg;
    msg << "grid count " << name << " = " << n << " must be >= 1";
    throw std::invalid_argument(msg.str());
  }
}

// Closed grid over [0, pi] for polar angles, half-open over [0, 2*pi) for
// phases; a single-point grid sits at the origin.
double polar_point(int k, int n) {
  return n == 1 ? 0.0 : kPi * static_cast<double>(k) / (n - 1);
}

double phase_point(int k, int n) {
  return 2.0 * kPi * static_cast<double>(k) / n;
}

}  // namespace

bool angles_in_range(const StateAngles& a) {
  auto polar_ok = [](double v) { return v >= 0.0 && v <= kPi; };
  auto phase_ok = [](double v) { return v >= 0.0 && v < 2.0 * kPi; };
  return polar_ok(a.theta) && polar_ok(a.beta) && polar_ok(a.delta) &&
         phase_ok(a.phi12) && phase_ok(a.phi13) && phase_ok(a.phi14);
}

PureState4::PureState4(const Vec4& v) : vec_(v) {
  if (!v.allFinite())
    throw std::invalid_argument("PureState4: non-finite amplitude");
  const double norm = v.norm();
  if (std::abs(norm - 1.0) > kNormTol) {
    std::ostringstream msg;
    msg << "PureState4: norm " << norm << " deviates from 1 by more than "
        << kNormTol;
    throw std::invalid_argument(msg.str());
  }
}

PureState4 PureState4::normalized(const Vec4& v) {
  const double norm = v.norm();
  if (!(norm > 0.0))
    throw std::invalid_argument("PureState4: cannot normalize zero vector");
  return PureState4(Vec4(v / norm));
}

PureState4 state_from_angles(const StateAngles& a) {
  check_polar(a.theta, "theta");
  check_polar(a.beta, "beta");
  check_polar(a.delta, "delta");
  check_phase(a.phi12, "phi12");
  check_phase(a.phi13, "phi13");
  check_phase(a.phi14, "phi14");

  const double ct = std::cos(a.theta / 2), st = std::sin(a.theta / 2);
  const double cb = std::cos(a.beta / 2), sb = std::sin(a.beta / 2);
  const double cd = std::cos(a.delta / 2), sd = std::sin(a.delta / 2);
  Vec4 v;
  v(0) = Complex(ct * sb, 0.0);
  v(1) = st * sb * std::exp(Complex(0.0, a.phi12));
  v(2) = sd * cb * std::exp(Complex(0.0, a.phi13));
  v(3) = cd * cb * std::exp(Complex(0.0, a.phi14));
  return PureState4::normalized(v);
}

PureState4 phase_entangled(double phi) {
  check_phase(phi, "phi");
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Vec4 v = Vec4::Zero();
  v(0) = Complex(inv_sqrt2, 0.0);
  v(3) = std::exp(Complex(0.0, phi)) * inv_sqrt2;
  return PureState4(v);
}

long GridCounts::total() const {
  return static_cast<long>(theta) * beta * delta * phi12 * phi13 * phi14;
}

GridCounts GridCounts::desk() { return GridCounts{3, 7, 3, 2, 2, 2}; }

GridCounts GridCounts::full() { return GridCounts{7, 7, 7, 4, 4, 4}; }

std::vector<StateAngles> grid_angles(const GridCounts& c) {
  check_count(c.theta, "theta");
  check_count(c.beta, "beta");
  check_count(c.delta, "delta");
  check_count(c.phi12, "phi12");
  check_count(c.phi13, "phi13");
  check_count(c.phi14, "phi14");

  std::vector<StateAngles> out;
  out.reserve(static_cast<std::size_t>(c.total()));
  for (int it = 0; it < c.theta; ++it)
    for (int ib = 0; ib < c.beta; ++ib)
      for (int id = 0; id < c.delta; ++id)
        for (int i12 = 0; i12 < c.phi12; ++i12)
          for (int i13 = 0; i13 < c.phi13; ++i13)
            for (int i14 = 0; i14 < c.phi14; ++i14)
              out.push_back(StateAngles{
                  polar_point(it, c.theta), polar_point(ib, c.beta),
                  polar_point(id, c.delta), phase_point(i12, c.phi12),
                  phase_point(i13, c.phi13), phase_point(i14, c.phi14)});
  return out;
}

std::vector<PureState4> grid_sample(const GridCounts& c) {
  std::vector<PureState4> out;
  const auto angles = grid_angles(c);
  out.reserve(angles.size());
  for (const auto& a : angles) out.push_back(state_from_angles(a));
  return out;
}

std::vector<PureState4> phase_sample(int n) {
  if (n < 1) throw std::invalid_argument("phase_sample: n must be >= 1");
  std::vector<PureState4> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k)
    out.push_back(phase_entangled(2.0 * kPi * k / n));
  return out;
}

std::string format_angles(const StateAngles& a) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g %.17g %.17g %.17g",
                a.theta, a.beta, a.delta, a.phi12, a.phi13, a.phi14);
  return buf;
}

StateAngles parse_angles(const std::string& line) {
  std::istringstream in(line);
  StateAngles a;
  if (!(in >> a.theta >> a.beta >> a.delta >> a.phi12 >> a.phi13 >> a.phi14))
    throw std::invalid_argument("parse_angles: expected 6 reals");
  return a;
}

}  // namespace qst
