// SPDX-License-Identifier: Apache-2.0
#include "qst/qmath.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qst {

Mat2 pauli_y() {
  Mat2 y;
  y << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return y;
}

Mat4 kron(const Mat2& a, const Mat2& b) {
  Mat4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return out;
}

double hermiticity_violation(const Mat4& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

HermEig herm_eig(const Mat4& m) {
  const double viol = hermiticity_violation(m);
  if (!(viol <= kHermTol)) {
    std::ostringstream msg;
    msg << "herm_eig: input not Hermitian, max |m - m^dag| = " << viol;
    throw std::invalid_argument(msg.str());
  }
  Eigen::SelfAdjointEigenSolver<Mat4> solver(m);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("herm_eig: eigensolver failed");

  // Eigen sorts ascending; the contract is descending.
  HermEig result;
  for (int i = 0; i < 4; ++i) {
    result.values(i) = solver.eigenvalues()(3 - i);
    result.vectors.col(i) = solver.eigenvectors().col(3 - i);
  }
  return result;
}

Mat4 herm_sqrt(const Mat4& m) {
  HermEig eig = herm_eig(m);
  Eigen::Vector4d roots;
  for (int i = 0; i < 4; ++i) {
    double lambda = eig.values(i);
    if (lambda < -kEigClipTol) {
      std::ostringstream msg;
      msg << "herm_sqrt: not positive semi-definite, eigenvalue " << lambda;
      throw std::invalid_argument(msg.str());
    }
    // the whole window [-tol, tol] is indistinguishable from an exact zero;
    // keeping +1e-17 round-off would surface as sqrt ~ 1e-9 in the result
    roots(i) = lambda <= kEigClipTol ? 0.0 : std::sqrt(lambda);
  }
  return eig.vectors * roots.asDiagonal() * eig.vectors.adjoint();
}

}  // namespace qst
