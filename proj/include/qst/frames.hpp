// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qst/qmath.hpp"
#include "qst/states.hpp"

namespace qst {

enum class FrameId { kMub20, kVinzant11, kCustom };

/// Ordered set of normalized measurement vectors in C^4.
struct Frame {
  FrameId id = FrameId::kCustom;
  std::string name = "custom";
  std::vector<Vec4> vectors;

  int size() const { return static_cast<int>(vectors.size()); }
};

/// The 20 vectors of the five mutually unbiased bases of C^4, hard-coded in
/// the paper's order. Groups {1-4}, {5-8}, {9-12}, {13-16}, {17-20} are the
/// five orthonormal bases.
Frame mub_frame();

/// The 11-vector minimal phase-retrieval frame, normalized at construction.
Frame vinzant_frame();

/// Raw (unnormalized) integer-literal vectors behind vinzant_frame(), exposed
/// so tests can pin the transcription.
std::vector<Vec4> vinzant_raw_vectors();

/// Frame from caller-supplied vectors; each vector is normalized. Throws on
/// an empty list or a zero vector.
Frame custom_frame(std::vector<Vec4> raw, std::string name = "custom");

/// Custom frame file format: one vector per line, 8 whitespace-separated
/// reals (re, im for each of the 4 components). '#' lines are skipped.
Frame parse_frame(std::istream& in, std::string name = "custom");
Frame load_frame(const std::string& path);

/// |<xi|psi>|^2. Throws when either argument's norm deviates from 1 by more
/// than 1e-9.
double intensity(const Vec4& frame_vector, const PureState4& state);

struct ProbeReport {
  int n_pairs = 0;
  int n_flagged = 0;
  // min over pairs of || I(a) - I(b) ||_2
  double min_intensity_dist = 0.0;
  // min over pairs of intensity distance / state distance (up to global phase)
  double min_ratio = 0.0;
};

/// Empirical injectivity diagnostic. Draws n_pairs pairs of random pure
/// states uniform over the angle box; even-indexed pairs are independent,
/// odd-indexed pairs share the polar angles and differ in phases only (a
/// non-injective frame reveals itself on those). A pair is flagged when its
/// intensity vectors are closer than 1e-9 while the states are farther apart
/// than 1e-6 up to a global phase.
ProbeReport injectivity_probe(const Frame& frame, int n_pairs,
                              std::uint64_t seed);

std::string frame_id_name(FrameId id);

}  // namespace qst
