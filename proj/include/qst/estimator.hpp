// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "qst/frames.hpp"
#include "qst/qmath.hpp"

namespace qst {

/// The 16 real parameters t1..t16 of the Cholesky factor T (t[0] is t1).
struct CholeskyParams {
  std::array<double, 16> t{};
};

/// Hermitian, PSD, unit-trace 4x4 matrix. The constructor validates all
/// three invariants (tolerances 1e-10) and throws on violation.
class DensityMatrix4 {
 public:
  explicit DensityMatrix4(const Mat4& m);
  const Mat4& mat() const { return mat_; }

 private:
  Mat4 mat_;
};

/// Lower-triangular factor
///   [ t1                0                 0            0  ]
///   [ t5+i t6           t2                0            0  ]
///   [ t11+i t12         t7+i t8           t3           0  ]
///   [ t15+i t16         t13+i t14         t9+i t10     t4 ].
Mat4 cholesky_factor(const CholeskyParams& p);

/// rho = T^dag T / Tr(T^dag T); physical by construction for any nonzero p.
/// Throws "degenerate parametrization" when all parameters are zero.
DensityMatrix4 density_from_params(const CholeskyParams& p);

/// Born-rule prediction <xi| rho |xi>.
double predicted_probability(const Vec4& frame_vector,
                             const DensityMatrix4& rho);

/// Least-squares objective sum_k (p^E_k(p) - measured_k)^2. The measured
/// list must match the frame size.
double objective(const CholeskyParams& p, const Frame& frame,
                 const std::vector<double>& measured);

/// Analytic gradient of the objective via the chain rule through
/// rho = T^dag T / Tr(T^dag T).
std::array<double, 16> objective_gradient(const CholeskyParams& p,
                                          const Frame& frame,
                                          const std::vector<double>& measured);

struct ReconstructOptions {
  int restarts = 10;
  int max_iters = 2000;
  double grad_tol = 1e-8;
  double f_tol = 1e-14;    // stop when an accepted step improves f by less
  std::uint64_t seed = 0;  // restart starting points
};

struct FitResult {
  DensityMatrix4 rho;
  double residual = 0.0;
  int iterations = 0;
  int restarts_used = 0;
  bool converged = false;
};

/// Minimizes the objective by damped least squares (Levenberg-Marquardt on
/// the residuals) from multiple random starts, t ~ U[-1,1]^16. Returns the
/// best fit; ties broken by lowest residual, then lowest restart index.
/// Never throws on optimizer failure: the best point found is returned with
/// converged = false.
FitResult reconstruct(const Frame& frame, const std::vector<double>& measured,
                      const ReconstructOptions& options = {});

}  // namespace qst
