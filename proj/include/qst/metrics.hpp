// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "qst/estimator.hpp"
#include "qst/qmath.hpp"
#include "qst/states.hpp"

namespace qst {

struct MetricsRecord {
  double fidelity = 0.0;     // [0, 1]
  double purity = 0.0;       // [1/4, 1]
  double concurrence = 0.0;  // [0, 1]
};

/// Uhlmann fidelity against a pure target. For a rank-1 target this reduces
/// to <psi| rho |psi>, which is what is computed here; equality with the
/// full matrix-square-root expression is asserted in tests.
double fidelity_pure(const PureState4& target, const DensityMatrix4& rho);

/// Tr(rho^2).
double purity(const DensityMatrix4& rho);

/// (sigma_y (x) sigma_y) rho^* (sigma_y (x) sigma_y), with the conjugate
/// taken entrywise in the standard basis.
Mat4 spin_flip(const DensityMatrix4& rho);

/// Wootters concurrence max(0, a1 - a2 - a3 - a4) from the descending
/// eigenvalues of R = sqrt(sqrt(rho) rho_tilde sqrt(rho)).
double concurrence(const DensityMatrix4& rho);

MetricsRecord evaluate_metrics(const PureState4& target,
                               const DensityMatrix4& rho);

}  // namespace qst
