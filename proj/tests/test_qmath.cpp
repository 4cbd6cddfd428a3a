// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <random>

#include "qst/qmath.hpp"

using namespace qst;

namespace {

Mat2 random_mat2(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat2 m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m(i, j) = Complex(u(gen), u(gen));
  return m;
}

Mat4 random_mat4(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat4 m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = Complex(u(gen), u(gen));
  return m;
}

Mat4 random_hermitian(std::mt19937_64& gen) {
  const Mat4 a = random_mat4(gen);
  return (a + a.adjoint()) / 2.0;
}

Mat4 random_psd(std::mt19937_64& gen) {
  const Mat4 a = random_mat4(gen);
  return a.adjoint() * a;
}

}  // namespace

TEST_CASE("kron of identities is the 4x4 identity") {
  CHECK((kron(Mat2::Identity(), Mat2::Identity()) - Mat4::Identity())
            .cwiseAbs()
            .maxCoeff() == 0.0);
}

TEST_CASE("kron(pauli_y, pauli_y) is the anti-diagonal (-1,1,1,-1)") {
  const Mat2 y = pauli_y();
  // brute-force index formula as the oracle
  Mat4 expected;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          expected(2 * i + k, 2 * j + l) = y(i, j) * y(k, l);
  const Mat4 got = kron(y, y);
  CHECK((got - expected).cwiseAbs().maxCoeff() == 0.0);

  // anti-diagonal -1, 1, 1, -1 read top-right to bottom-left
  CHECK(got(0, 3) == Complex(-1.0, 0.0));
  CHECK(got(1, 2) == Complex(1.0, 0.0));
  CHECK(got(2, 1) == Complex(1.0, 0.0));
  CHECK(got(3, 0) == Complex(-1.0, 0.0));
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      if (r + c != 3) CHECK(got(r, c) == Complex(0.0, 0.0));
}

TEST_CASE("kron of diagonal matrices") {
  Mat2 a = Mat2::Zero();
  a(0, 0) = 2.0;
  a(1, 1) = 3.0;
  const Mat4 got = kron(a, Mat2::Identity());
  Mat4 expected = Mat4::Zero();
  expected(0, 0) = 2.0;
  expected(1, 1) = 2.0;
  expected(2, 2) = 3.0;
  expected(3, 3) = 3.0;
  CHECK((got - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("kron mixed-product property") {
  std::mt19937_64 gen(42);
  for (int rep = 0; rep < 50; ++rep) {
    const Mat2 a = random_mat2(gen), b = random_mat2(gen);
    const Mat2 c = random_mat2(gen), d = random_mat2(gen);
    const Mat4 lhs = kron(a, b) * kron(c, d);
    const Mat4 rhs = kron(Mat2(a * c), Mat2(b * d));
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("herm_eig on diagonal and scalar matrices") {
  Mat4 d = Mat4::Zero();
  d(0, 0) = 1.0;
  const HermEig e1 = herm_eig(d);
  CHECK(e1.values(0) == doctest::Approx(1.0).epsilon(1e-12));
  for (int i = 1; i < 4; ++i)
    CHECK(std::abs(e1.values(i)) < 1e-12);

  const HermEig e2 = herm_eig(Mat4(Mat4::Identity() / 4.0));
  for (int i = 0; i < 4; ++i)
    CHECK(e2.values(i) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("herm_eig on a rank-1 projector") {
  Vec4 phi;  // |Phi+> = (1,0,0,1)/sqrt(2)
  phi << 1.0, 0.0, 0.0, 1.0;
  phi /= std::sqrt(2.0);
  const Mat4 proj = phi * phi.adjoint();
  const HermEig e = herm_eig(proj);
  CHECK(e.values(0) == doctest::Approx(1.0).epsilon(1e-12));
  for (int i = 1; i < 4; ++i) CHECK(std::abs(e.values(i)) < 1e-12);
  // top eigenvector spans the same ray
  const Complex overlap = e.vectors.col(0).dot(phi);
  CHECK(std::abs(overlap) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("herm_eig reconstructs random Hermitian matrices") {
  std::mt19937_64 gen(7);
  for (int rep = 0; rep < 100; ++rep) {
    const Mat4 m = random_hermitian(gen);
    const HermEig e = herm_eig(m);
    const Mat4 back =
        e.vectors * e.values.asDiagonal().toDenseMatrix().cast<Complex>() *
        e.vectors.adjoint();
    CHECK((back - m).cwiseAbs().maxCoeff() < 1e-9);
    // descending order
    for (int i = 1; i < 4; ++i) CHECK(e.values(i - 1) >= e.values(i));
    // unitary V
    CHECK((e.vectors.adjoint() * e.vectors - Mat4::Identity())
              .cwiseAbs()
              .maxCoeff() < 1e-10);
  }
}

TEST_CASE("herm_eig rejects non-Hermitian input with the violation size") {
  Mat4 m = Mat4::Zero();
  m(0, 1) = Complex(1.0, 0.0);  // m != m^dag by 1
  CHECK_THROWS_WITH_AS(herm_eig(m),
                       doctest::Contains("not Hermitian"),
                       std::invalid_argument);
}

TEST_CASE("herm_sqrt basics") {
  CHECK((herm_sqrt(Mat4::Identity()) - Mat4::Identity())
            .cwiseAbs()
            .maxCoeff() < 1e-12);

  Mat4 d = Mat4::Zero();
  d(0, 0) = 4.0;
  d(1, 1) = 1.0;
  Mat4 expected = Mat4::Zero();
  expected(0, 0) = 2.0;
  expected(1, 1) = 1.0;
  CHECK((herm_sqrt(d) - expected).cwiseAbs().maxCoeff() < 1e-12);

  Vec4 phi;
  phi << 1.0, 0.0, 0.0, 1.0;
  phi /= std::sqrt(2.0);
  const Mat4 proj = phi * phi.adjoint();
  CHECK((herm_sqrt(proj) - proj).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("herm_sqrt squares back to the input on random PSD matrices") {
  std::mt19937_64 gen(11);
  for (int rep = 0; rep < 100; ++rep) {
    const Mat4 m = random_psd(gen);
    const Mat4 s = herm_sqrt(m);
    CHECK((s * s - m).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(hermiticity_violation(s) < 1e-10);
  }
}

TEST_CASE("herm_sqrt rejects indefinite input") {
  Mat4 m = Mat4::Zero();
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  CHECK_THROWS_WITH_AS(herm_sqrt(m),
                       doctest::Contains("not positive semi-definite"),
                       std::invalid_argument);
}

TEST_CASE("herm_sqrt clips round-off negatives") {
  Mat4 m = Mat4::Identity();
  m(3, 3) = -5e-11;  // within the clipping tolerance
  const Mat4 s = herm_sqrt(m);
  CHECK(std::abs(s(3, 3)) < 1e-12);
}
