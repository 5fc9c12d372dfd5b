#include <doctest.h>

#include "czindex/forms.hpp"
#include "helpers.hpp"

using namespace czindex;
using testutil::inertiaOracle3;

TEST_SUITE("forms") {

TEST_CASE("inertia of diagonal and exchange matrices") {
  Matrix d = Matrix::Zero(3, 3);
  d.diagonal() << 2, -3, 0;
  CHECK(inertiaOf(d) == InertiaTriple{1, 1, 1});

  Matrix x(2, 2);
  x << 0, 1, 1, 0;  // eigenvalues +-1
  CHECK(inertiaOf(x) == InertiaTriple{1, 0, 1});
}

TEST_CASE("inertia of ab + bc - ca against the cubic oracle") {
  Matrix q(3, 3);
  q << 0, 0.5, -0.5, 0.5, 0, 0.5, -0.5, 0.5, 0;
  InertiaTriple oracle = inertiaOracle3(q);
  CHECK(oracle == InertiaTriple{1, 0, 2});
  CHECK(inertiaOf(q) == oracle);
  // trace 0 and det -1/4 force (+,+,-)
  CHECK(q.trace() == doctest::Approx(0.0));
  CHECK(q.determinant() == doctest::Approx(-0.25));
}

TEST_CASE("signature conventions") {
  SymmetricForm id2(Matrix::Identity(2, 2));
  CHECK(signature(id2, SignConvention::Paper) == -2);
  CHECK(signature(id2, SignConvention::Standard) == 2);
  SymmetricForm zero2 = SymmetricForm::zero(2);
  CHECK(signature(zero2, SignConvention::Paper) == 0);
  CHECK(signature(zero2, SignConvention::Standard) == 0);
}

TEST_CASE("non-finite entries are rejected") {
  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 1) = bad(1, 0) = std::nan("");
  CHECK_THROWS_AS(SymmetricForm{bad}, NonFiniteEntry);
  CHECK_THROWS_AS(inertiaOf(bad), NonFiniteEntry);
}

TEST_CASE("inverse-difference identity on fixed pairs") {
  SymmetricForm U(Matrix::Identity(2, 2));
  SymmetricForm Z(2.0 * Matrix::Identity(2, 2));
  for (auto conv : {SignConvention::Paper, SignConvention::Standard}) {
    CHECK(inverseDifferenceIdentityDefect(U, Z, conv) == 0);
  }
  Matrix u(2, 2), z(2, 2);
  u << 1, 0, 0, -1;
  z << 3, 0, 0, 1;
  CHECK(inverseDifferenceIdentityDefect(SymmetricForm(u), SymmetricForm(z),
                                        SignConvention::Paper) == 0);
  // U = -Z: the identity telescopes to zero by symmetry
  CHECK(inverseDifferenceIdentityDefect(SymmetricForm(-z), SymmetricForm(z),
                                        SignConvention::Standard) == 0);
}

TEST_CASE("inverse-difference identity rejects degenerate input") {
  Matrix u = Matrix::Identity(2, 2);
  Matrix z = Matrix::Zero(2, 2);
  CHECK_THROWS_AS(inverseDifferenceIdentityDefect(SymmetricForm(u), SymmetricForm(z),
                                                  SignConvention::Paper),
                  DegenerateInput);
  // U - Z degenerate even though both are invertible
  Matrix z2 = Matrix::Identity(2, 2);
  z2(1, 1) = 2.0;
  CHECK_THROWS_AS(inverseDifferenceIdentityDefect(SymmetricForm(u), SymmetricForm(z2),
                                                  SignConvention::Paper),
                  DegenerateInput);
}

TEST_CASE("congruence invariance and negation, randomized") {
  Rng rng(0x5eed1);
  ToleranceContext tol;
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + static_cast<int>(rng.below(6));
    Matrix A(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) A(i, j) = A(j, i) = 2.0 * rng.uniformSym();
    Matrix G;
    do {
      G = Matrix::NullaryExpr(n, n,
                              [&](Eigen::Index, Eigen::Index) { return rng.uniformSym(); });
    } while (smallestSingularValue(G) < 0.2);
    CHECK(inertiaOf(G.transpose() * A * G, tol) == inertiaOf(A, tol));
    CHECK(signatureOf(-A, SignConvention::Paper, tol) ==
          -signatureOf(A, SignConvention::Paper, tol));
    CHECK(signatureOf(A, SignConvention::Paper, tol) ==
          -signatureOf(A, SignConvention::Standard, tol));
  }
}

TEST_CASE("near-threshold eigenvalues count as zero") {
  ToleranceContext tol;
  Matrix a = Matrix::Identity(2, 2);
  a(1, 1) = 1e-15;  // below the default absolute floor
  auto in = inertiaOf(a, tol);
  CHECK(in.nZero == 1);
  CHECK(in.nPlus == 1);
}

}  // TEST_SUITE
