// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "qst/qmath.hpp"

namespace qst {

/// Six-angle parametrization of a pure four-level state. Polar-type angles
/// theta, beta, delta live in [0, pi]; the relative phases in [0, 2*pi).
struct StateAngles {
  double theta = 0.0;
  double beta = 0.0;
  double delta = 0.0;
  double phi12 = 0.0;
  double phi13 = 0.0;
  double phi14 = 0.0;
};

bool angles_in_range(const StateAngles& a);

/// Unit vector in C^4. The constructor rejects vectors whose norm deviates
/// from 1 by more than 1e-12; use normalized() for raw input.
class PureState4 {
 public:
  explicit PureState4(const Vec4& v);
  static PureState4 normalized(const Vec4& v);
  const Vec4& vec() const { return vec_; }

 private:
  Vec4 vec_;
};

/// Builds the state with components
///   (cos(t/2) sin(b/2),
///    sin(t/2) sin(b/2) e^{i phi12},
///    sin(d/2) cos(b/2) e^{i phi13},
///    cos(d/2) cos(b/2) e^{i phi14}).
PureState4 state_from_angles(const StateAngles& a);

/// (|00> + e^{i phi} |11>) / sqrt(2); phi = 0 gives Phi+, phi = pi gives Phi-.
PureState4 phase_entangled(double phi);

/// Grid resolution per parameter. Polar angles use n points including both
/// endpoints of [0, pi]; phases use n points of [0, 2*pi) excluding 2*pi.
struct GridCounts {
  int theta = 3;
  int beta = 7;
  int delta = 3;
  int phi12 = 2;
  int phi13 = 2;
  int phi14 = 2;

  long total() const;

  // 3*7*3*2*2*2 = 504 states
  static GridCounts desk();
  // 7*7*7*4*4*4 = 21952 states
  static GridCounts full();
};

/// Cartesian product of the per-parameter grids, ordered lexicographically
/// over the index tuple (theta, beta, delta, phi12, phi13, phi14); the last
/// index varies fastest.
std::vector<StateAngles> grid_angles(const GridCounts& counts);
std::vector<PureState4> grid_sample(const GridCounts& counts);

/// n maximally entangled states phase_entangled(2*pi*k/n), k = 0..n-1.
std::vector<PureState4> phase_sample(int n);

// Plain-text angle record (6 values, 17 significant digits) for
// reproducibility files.
std::string format_angles(const StateAngles& a);
StateAngles parse_angles(const std::string& line);

}  // namespace qst
