// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>

#include "qst/qmath.hpp"
#include "qst/states.hpp"

namespace qst {

std::uint64_t splitmix64(std::uint64_t x);

/// Seed derivation for auxiliary streams (estimator restarts etc.) so they
/// never collide with the measurement-noise streams.
std::uint64_t derived_seed(std::uint64_t master_seed, std::uint64_t index,
                           std::uint64_t salt = 0);

/// Deterministic pseudo-random stream addressed by (master_seed,
/// stream_index). The same pair always reproduces the identical sequence,
/// independently of platform: draws come from a mt19937_64 engine seeded via
/// splitmix64 mixing, and normals use a fixed Box-Muller recipe (two uniforms
/// per normal, cosine branch only).
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

  double uniform();                       // [0, 1)
  double uniform(double lo, double hi);   // [lo, hi)
  double normal(double sigma);            // N(0, sigma)

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_index() const { return stream_index_; }

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_index_;
  std::mt19937_64 gen_;
};

/// 2x2 unitary rotation
///   [ e^{i w1/2} cos w3      -i e^{i w2} sin w3 ]
///   [ -i e^{-i w2} sin w3     e^{-i w1/2} cos w3 ].
Mat2 rotation_unitary(double w1, double w2, double w3);

/// Perturbation U(w1, w2, w3/2) (x) U(w1', w2', w3'/2) with the six angles
/// drawn i.i.d. from N(0, sigma) in the fixed order w1, w2, w3, w1', w2',
/// w3'. The tilt angles enter via the half-angle convention.
Mat4 perturbation(double sigma, RngStream& rng);

/// Simulated noisy intensity |<P(sigma) xi | psi>|^2 with a fresh
/// perturbation per call; consumes exactly 6 normal draws from rng.
double noisy_intensity(const Vec4& frame_vector, const PureState4& state,
                       double sigma, RngStream& rng);

}  // namespace qst
