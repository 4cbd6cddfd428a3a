// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <complex>

namespace qst {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Vec4 = Eigen::Vector4cd;

// Tolerance for Hermiticity checks (max entrywise |m - m^dag|).
inline constexpr double kHermTol = 1e-10;
// Eigenvalues above -kEigClipTol are clipped to zero before taking roots.
inline constexpr double kEigClipTol = 1e-10;

Mat2 pauli_y();

/// Kronecker product of two 2x2 matrices:
/// (a (x) b)[2i+k][2j+l] = a(i,j) * b(k,l).
Mat4 kron(const Mat2& a, const Mat2& b);

double hermiticity_violation(const Mat4& m);

struct HermEig {
  Eigen::Vector4d values;  // sorted descending
  Mat4 vectors;            // columns, unitary; m = V diag(values) V^dag
};

/// Eigendecomposition of a Hermitian 4x4 matrix. Throws std::invalid_argument
/// when the input deviates from Hermiticity by more than kHermTol.
HermEig herm_eig(const Mat4& m);

/// Principal square root of a Hermitian PSD matrix. Eigenvalues inside
/// [-kEigClipTol, kEigClipTol] are treated as round-off around an exact zero
/// and clipped; anything below -kEigClipTol throws.
Mat4 herm_sqrt(const Mat4& m);

}  // namespace qst
