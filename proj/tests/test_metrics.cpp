// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "qst/estimator.hpp"
#include "qst/metrics.hpp"
#include "qst/noise.hpp"
#include "qst/states.hpp"

using namespace qst;

namespace {

constexpr double kPi = std::numbers::pi;

DensityMatrix4 pure_rho(const PureState4& psi) {
  return DensityMatrix4(Mat4(psi.vec() * psi.vec().adjoint()));
}

DensityMatrix4 random_rho(RngStream& rng) {
  CholeskyParams p;
  for (double& t : p.t) t = rng.uniform(-1.0, 1.0);
  return density_from_params(p);
}

// Independent concurrence oracle: sqrt of the eigenvalues of the
// (non-Hermitian) product rho * rho_tilde, sorted descending. Eigenvalues
// inside the zero window [-kEigClipTol, kEigClipTol] are zero here exactly
// as in herm_sqrt; otherwise the sqrt turns 1e-12-scale round-off into
// 1e-6-scale disagreement.
double concurrence_oracle(const DensityMatrix4& rho) {
  const Mat4 product = rho.mat() * spin_flip(rho);
  const Eigen::ComplexEigenSolver<Mat4> solver(product);
  std::array<double, 4> alphas{};
  for (int i = 0; i < 4; ++i) {
    const double lambda = solver.eigenvalues()(i).real();
    alphas[i] = lambda <= kEigClipTol ? 0.0 : std::sqrt(lambda);
  }
  std::sort(alphas.begin(), alphas.end(), std::greater<>());
  return std::max(0.0, alphas[0] - alphas[1] - alphas[2] - alphas[3]);
}

// Full Uhlmann fidelity (Tr sqrt(sqrt(rho) |psi><psi| sqrt(rho)))^2.
double fidelity_full_route(const PureState4& psi, const DensityMatrix4& rho) {
  const Mat4 sr = herm_sqrt(rho.mat());
  const Mat4 inner = sr * (psi.vec() * psi.vec().adjoint()) * sr;
  const double tr = herm_sqrt(inner).trace().real();
  return tr * tr;
}

DensityMatrix4 werner(double p) {
  const PureState4 bell = phase_entangled(0.0);
  const Mat4 proj = bell.vec() * bell.vec().adjoint();
  return DensityMatrix4(Mat4(p * proj + (1.0 - p) * Mat4::Identity() / 4.0));
}

}  // namespace

TEST_CASE("fidelity against pure targets") {
  const PureState4 psi = state_from_angles({1.0, 2.0, 0.4, 0.7, 3.0, 5.1});
  CHECK(fidelity_pure(psi, pure_rho(psi)) ==
        doctest::Approx(1.0).epsilon(1e-12));

  const PureState4 e0 = state_from_angles({0.0, kPi, 0.0, 0.0, 0.0, 0.0});
  const PureState4 e1 = state_from_angles({kPi, kPi, 0.0, 0.0, 0.0, 0.0});
  CHECK(fidelity_pure(e0, pure_rho(e1)) ==
        doctest::Approx(0.0).epsilon(1e-12));

  CholeskyParams identity;
  identity.t = {1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0};
  CHECK(fidelity_pure(psi, density_from_params(identity)) ==
        doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("fidelity shortcut equals the full Uhlmann route") {
  RngStream rng(21, 0);
  for (int rep = 0; rep < 100; ++rep) {
    const DensityMatrix4 rho = random_rho(rng);
    const PureState4 psi = state_from_angles(
        {rng.uniform(0, kPi), rng.uniform(0, kPi), rng.uniform(0, kPi),
         rng.uniform(0, 2 * kPi), rng.uniform(0, 2 * kPi),
         rng.uniform(0, 2 * kPi)});
    CHECK(std::abs(fidelity_pure(psi, rho) - fidelity_full_route(psi, rho)) <
          1e-9);
  }
}

TEST_CASE("purity of pure, mixed and two-level-diagonal states") {
  CHECK(purity(pure_rho(phase_entangled(1.3))) ==
        doctest::Approx(1.0).epsilon(1e-12));

  CholeskyParams identity;
  identity.t = {1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0};
  CHECK(purity(density_from_params(identity)) ==
        doctest::Approx(0.25).epsilon(1e-12));

  Mat4 half = Mat4::Zero();
  half(0, 0) = 0.5;
  half(3, 3) = 0.5;
  CHECK(purity(DensityMatrix4(half)) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("purity stays within [1/4, 1] on random density matrices") {
  RngStream rng(22, 0);
  for (int rep = 0; rep < 200; ++rep) {
    const double val = purity(random_rho(rng));
    CHECK(val >= 0.25);
    CHECK(val <= 1.0);
  }
}

TEST_CASE("spin flip on canonical states") {
  const DensityMatrix4 bell = pure_rho(phase_entangled(0.0));
  CHECK((spin_flip(bell) - bell.mat()).cwiseAbs().maxCoeff() < 1e-15);

  Mat4 zero_proj = Mat4::Zero();
  zero_proj(0, 0) = 1.0;  // |00><00|
  Mat4 three_proj = Mat4::Zero();
  three_proj(3, 3) = 1.0;  // |11><11|
  CHECK((spin_flip(DensityMatrix4(zero_proj)) - three_proj)
            .cwiseAbs()
            .maxCoeff() < 1e-15);

  const Mat4 mixed = Mat4::Identity() / 4.0;
  CHECK((spin_flip(DensityMatrix4(mixed)) - mixed).cwiseAbs().maxCoeff() <
        1e-15);
}

TEST_CASE("concurrence of Bell, separable and Werner states") {
  CHECK(concurrence(pure_rho(phase_entangled(0.0))) ==
        doctest::Approx(1.0).epsilon(1e-9));

  Mat4 sep = Mat4::Zero();
  sep(0, 0) = 1.0;
  CHECK(concurrence(DensityMatrix4(sep)) < 1e-9);

  // Werner state: closed form max(0, (3p-1)/2), so 1/4 at p = 1/2
  CHECK(concurrence(werner(0.5)) == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(concurrence_oracle(werner(0.5)) ==
        doctest::Approx(0.25).epsilon(1e-9));
  for (double p : {0.0, 1.0 / 3.0, 0.5, 0.8, 1.0}) {
    const double expected = std::max(0.0, (3.0 * p - 1.0) / 2.0);
    CHECK(std::abs(concurrence(werner(p)) - expected) < 1e-8);
  }
}

TEST_CASE("R-matrix route agrees with the rho*rho_tilde eigenvalue route") {
  RngStream rng(23, 0);
  for (int rep = 0; rep < 300; ++rep) {
    const DensityMatrix4 rho = random_rho(rng);
    CHECK(std::abs(concurrence(rho) - concurrence_oracle(rho)) < 1e-8);
  }
}

TEST_CASE("phase-entangled family has unit concurrence for all phases") {
  for (int k = 0; k < 32; ++k) {
    const double phi = 2.0 * kPi * k / 32.0;
    CHECK(concurrence(pure_rho(phase_entangled(phi))) ==
          doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("purity is 1 exactly when the state is its top eigenvector") {
  RngStream rng(24, 0);
  for (int rep = 0; rep < 50; ++rep) {
    const DensityMatrix4 rho = random_rho(rng);
    const HermEig eig = herm_eig(rho.mat());
    const PureState4 top = PureState4::normalized(eig.vectors.col(0));
    const bool pure = std::abs(purity(rho) - 1.0) < 1e-9;
    const bool aligned = std::abs(fidelity_pure(top, rho) - 1.0) < 1e-9;
    CHECK(pure == aligned);
  }
}

TEST_CASE("evaluate_metrics bundles the three figures of merit") {
  const PureState4 bell = phase_entangled(0.0);
  const MetricsRecord rec = evaluate_metrics(bell, pure_rho(bell));
  CHECK(rec.fidelity == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rec.purity == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rec.concurrence == doctest::Approx(1.0).epsilon(1e-9));
}
