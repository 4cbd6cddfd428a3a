// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

#include "qst/estimator.hpp"
#include "qst/metrics.hpp"
#include "qst/states.hpp"

using namespace qst;

namespace {
constexpr double kPi = std::numbers::pi;

Vec4 amplitudes(double a, double b, double c, double d) {
  Vec4 v;
  v << a, b, c, d;
  return v;
}
}  // namespace

TEST_CASE("state_from_angles matches the parametrization at corners") {
  // theta=0, beta=pi, delta=0 -> (1, 0, 0, 0)
  const PureState4 s1 = state_from_angles({0.0, kPi, 0.0, 0.0, 0.0, 0.0});
  CHECK((s1.vec() - amplitudes(1, 0, 0, 0)).norm() < 1e-15);

  // theta=pi, beta=pi, phi12=pi/2 -> (0, i, 0, 0)
  const PureState4 s2 =
      state_from_angles({kPi, kPi, 0.0, kPi / 2, 0.0, 0.0});
  Vec4 expect2 = Vec4::Zero();
  expect2(1) = Complex(0.0, 1.0);
  CHECK((s2.vec() - expect2).norm() < 1e-15);

  // beta=0, delta=0, phi14=pi -> (0, 0, 0, -1)
  const PureState4 s3 = state_from_angles({0.0, 0.0, 0.0, 0.0, 0.0, kPi});
  CHECK((s3.vec() - amplitudes(0, 0, 0, -1)).norm() < 1e-15);
}

TEST_CASE("state_from_angles rejects out-of-range angles") {
  CHECK_THROWS_AS(state_from_angles({-0.1, 0, 0, 0, 0, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(state_from_angles({0, kPi + 0.1, 0, 0, 0, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(state_from_angles({0, 0, 0, 2 * kPi, 0, 0}),
                  std::invalid_argument);
}

TEST_CASE("phase_entangled Bell states") {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const PureState4 plus = phase_entangled(0.0);
  CHECK((plus.vec() - amplitudes(inv_sqrt2, 0, 0, inv_sqrt2)).norm() < 1e-15);

  const PureState4 minus = phase_entangled(kPi);
  CHECK((minus.vec() - amplitudes(inv_sqrt2, 0, 0, -inv_sqrt2)).norm() <
        1e-15);

  const PureState4 quarter = phase_entangled(kPi / 2);
  Vec4 expect = Vec4::Zero();
  expect(0) = inv_sqrt2;
  expect(3) = Complex(0.0, inv_sqrt2);
  CHECK((quarter.vec() - expect).norm() < 1e-15);

  CHECK_THROWS_AS(phase_entangled(2 * kPi), std::invalid_argument);
}

TEST_CASE("degenerate single-point grid sits at the origin") {
  const auto states = grid_sample(GridCounts{1, 1, 1, 1, 1, 1});
  REQUIRE(states.size() == 1);
  // theta=beta=delta=0, phases 0 -> (0, 0, 0, 1)
  CHECK((states[0].vec() - amplitudes(0, 0, 0, 1)).norm() < 1e-15);
}

TEST_CASE("grid cardinality and rejection of zero counts") {
  CHECK(grid_sample(GridCounts{2, 1, 1, 1, 1, 1}).size() == 2);
  CHECK(GridCounts{4, 4, 4, 4, 4, 4}.total() == 4096);
  CHECK(GridCounts::desk().total() == 504);
  CHECK(GridCounts::full().total() == 21952);
  CHECK_THROWS_AS(grid_sample(GridCounts{0, 1, 1, 1, 1, 1}),
                  std::invalid_argument);
}

TEST_CASE("grid states are unit norm and parameter tuples unique") {
  const GridCounts counts{4, 4, 4, 4, 4, 4};
  const auto angles = grid_angles(counts);
  const auto states = grid_sample(counts);
  REQUIRE(states.size() == 4096);
  REQUIRE(angles.size() == 4096);
  for (const auto& s : states)
    CHECK(std::abs(s.vec().norm() - 1.0) < 1e-12);

  std::set<std::string> seen;
  for (const auto& a : angles) seen.insert(format_angles(a));
  CHECK(seen.size() == angles.size());
}

TEST_CASE("polar grids include endpoints, phase grids exclude 2*pi") {
  const auto angles = grid_angles(GridCounts{3, 1, 1, 4, 1, 1});
  REQUIRE(angles.size() == 12);
  CHECK(angles.front().theta == 0.0);
  CHECK(angles.back().theta == doctest::Approx(kPi));
  double max_phase = 0.0;
  for (const auto& a : angles) max_phase = std::max(max_phase, a.phi12);
  CHECK(max_phase == doctest::Approx(3.0 * kPi / 2));
}

TEST_CASE("phase_sample enumerates the phase circle") {
  const auto one = phase_sample(1);
  REQUIRE(one.size() == 1);
  CHECK((one[0].vec() - phase_entangled(0.0).vec()).norm() == 0.0);

  const auto two = phase_sample(2);
  REQUIRE(two.size() == 2);
  CHECK((two[0].vec() - phase_entangled(0.0).vec()).norm() == 0.0);
  CHECK((two[1].vec() - phase_entangled(kPi).vec()).norm() == 0.0);

  CHECK_THROWS_AS(phase_sample(0), std::invalid_argument);
}

TEST_CASE("every phase-sample state is maximally entangled") {
  for (const PureState4& s : phase_sample(200)) {
    CHECK(std::abs(s.vec().norm() - 1.0) < 1e-12);
    const DensityMatrix4 rho(Mat4(s.vec() * s.vec().adjoint()));
    CHECK(concurrence(rho) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("angle records round-trip at 17 significant digits") {
  const StateAngles a{0.1234567890123456, kPi, 1e-17, 5.9, 2.0 * kPi - 1e-9,
                      3.3333333333333335};
  const StateAngles b = parse_angles(format_angles(a));
  CHECK(b.theta == a.theta);
  CHECK(b.beta == a.beta);
  CHECK(b.delta == a.delta);
  CHECK(b.phi12 == a.phi12);
  CHECK(b.phi13 == a.phi13);
  CHECK(b.phi14 == a.phi14);
  CHECK_THROWS_AS(parse_angles("1 2 3"), std::invalid_argument);
}

TEST_CASE("PureState4 validates its norm") {
  CHECK_THROWS_AS(PureState4(amplitudes(1, 1, 0, 0)), std::invalid_argument);
  const PureState4 ok = PureState4::normalized(amplitudes(1, 1, 0, 0));
  CHECK(std::abs(ok.vec().norm() - 1.0) < 1e-12);
  CHECK_THROWS_AS(PureState4::normalized(amplitudes(0, 0, 0, 0)),
                  std::invalid_argument);
}
