// SPDX-License-Identifier: Apache-2.0
#include "qst/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace qst {

double fidelity_pure(const PureState4& target, const DensityMatrix4& rho) {
  // <psi| rho |psi>; equals the Uhlmann fidelity for a rank-1 target
  const Complex val = target.vec().dot(rho.mat() * target.vec());
  return std::clamp(val.real(), 0.0, 1.0);
}

double purity(const DensityMatrix4& rho) {
  const double tr = (rho.mat() * rho.mat()).trace().real();
  return std::clamp(tr, 0.25, 1.0);
}

Mat4 spin_flip(const DensityMatrix4& rho) {
  const Mat4 yy = kron(pauli_y(), pauli_y());
  return yy * rho.mat().conjugate() * yy;
}

namespace {

// Raw PSD square root, sqrt(max(lambda, 0)) with no zero window. The inner
// factor of the R-matrix needs the unmodified spectrum: zeroing a 1e-11
// eigenvalue of rho here would shift above-window eigenvalues of
// sqrt(rho) rho_tilde sqrt(rho), and the outer square root amplifies that
// shift beyond the oracle-agreement tolerance.
Mat4 psd_sqrt_raw(const Mat4& m) {
  const HermEig eig = herm_eig(m);
  Eigen::Vector4d roots;
  for (int i = 0; i < 4; ++i)
    roots(i) = std::sqrt(std::max(eig.values(i), 0.0));
  return eig.vectors * roots.asDiagonal() * eig.vectors.adjoint();
}

}  // namespace

double concurrence(const DensityMatrix4& rho) {
  const Mat4 sqrt_rho = psd_sqrt_raw(rho.mat());
  const Mat4 inner = sqrt_rho * spin_flip(rho) * sqrt_rho;
  const Mat4 r_matrix = herm_sqrt(inner);
  const HermEig eig = herm_eig(r_matrix);  // descending
  const double c =
      eig.values(0) - eig.values(1) - eig.values(2) - eig.values(3);
  return std::clamp(c, 0.0, 1.0);
}

MetricsRecord evaluate_metrics(const PureState4& target,
                               const DensityMatrix4& rho) {
  return MetricsRecord{fidelity_pure(target, rho), purity(rho),
                       concurrence(rho)};
}

}  // namespace qst
