#include <doctest.h>

#include "czindex/cayley.hpp"
#include "czindex/lagr.hpp"
#include "helpers.hpp"

using namespace czindex;
using testutil::classicalTransformRotationOracle;
using testutil::psiTransformRotationOracle;
using testutil::rotation2;

TEST_SUITE("cayley") {

TEST_CASE("classical transform examples") {
  auto space = SymplecticSpace::standard(1);
  SymplecticMatrix minusId(space, -Matrix::Identity(2, 2));
  CHECK(cayley(minusId).matrix.entries().norm() == doctest::Approx(0.0));

  Matrix d(2, 2);
  d << 2, 0, 0, 0.5;
  Matrix expect(2, 2);
  expect << 0, -1.5, -1.5, 0;
  CHECK((cayley(SymplecticMatrix(space, d)).matrix.entries() - expect).norm() < 1e-12);

  SymplecticMatrix rot(space, rotation2(M_PI / 2));
  Matrix expectRot = -0.5 * Matrix::Identity(2, 2);
  CHECK((cayley(rot).matrix.entries() - expectRot).norm() < 1e-12);
  CHECK(classicalTransformRotationOracle(M_PI / 2) == doctest::Approx(-0.5));
}

TEST_CASE("classical transform matches the rotation oracle") {
  auto space = SymplecticSpace::standard(1);
  for (double theta : {0.3, 1.1, 2.0, 2.9, -0.8, -2.4}) {
    Matrix got = cayley(SymplecticMatrix(space, rotation2(theta))).matrix.entries();
    Matrix expect = classicalTransformRotationOracle(theta) * Matrix::Identity(2, 2);
    CHECK((got - expect).norm() < 1e-10 * (1.0 + expect.norm()));
  }
}

TEST_CASE("eigenvalue-one inputs are rejected") {
  auto space = SymplecticSpace::standard(1);
  SymplecticMatrix id(space, Matrix::Identity(2, 2));
  CHECK_THROWS_AS(cayley(id), EigenvalueOne);
}

TEST_CASE("generalized transform examples via the complex oracle") {
  auto space = SymplecticSpace::standard(1);
  SymplecticMatrix minusId(space, -Matrix::Identity(2, 2));
  SymplecticMatrix quarter(space, rotation2(M_PI / 2));
  // Phi = Id: the (Phi - Id) factor kills the product
  CHECK(psiCayley(minusId, SymplecticMatrix(space, Matrix::Identity(2, 2)))
            .matrix.entries()
            .norm() < 1e-14);
  // psi = -Id: 2 tan(theta/2) Id
  Matrix got = psiCayley(minusId, quarter).matrix.entries();
  CHECK((got - 2.0 * Matrix::Identity(2, 2)).norm() < 1e-12);
  CHECK(psiTransformRotationOracle(M_PI, M_PI / 2) == doctest::Approx(2.0));
  // psi = R(3pi/2), Phi = R(pi/2): the oracle gives exactly 1
  SymplecticMatrix psi32(space, rotation2(3 * M_PI / 2));
  Matrix got2 = psiCayley(psi32, quarter).matrix.entries();
  CHECK((got2 - Matrix::Identity(2, 2)).norm() < 1e-12);
  CHECK(psiTransformRotationOracle(3 * M_PI / 2, M_PI / 2) == doctest::Approx(1.0));
}

TEST_CASE("membership margins") {
  auto space = SymplecticSpace::standard(1);
  SymplecticMatrix quarter(space, rotation2(M_PI / 2));
  SymplecticMatrix minusId(space, -Matrix::Identity(2, 2));
  SymplecticMatrix id(space, Matrix::Identity(2, 2));
  CHECK_FALSE(inSpPsi(quarter, quarter).member);
  auto r = inSpPsi(id, minusId);
  CHECK(r.member);
  CHECK(r.margin == doctest::Approx(2.0));
  SymplecticMatrix nearQuarter(space, rotation2(M_PI / 2 + 1e-14));
  CHECK_FALSE(inSpPsi(quarter, nearQuarter).member);
}

TEST_CASE("symmetry, antisymmetry and kernel law on random inputs") {
  Rng rng(0xcab1e);
  ToleranceContext tol;
  int done = 0;
  for (int trial = 0; trial < 400 && done < 120; ++trial) {
    int n = 1 + static_cast<int>(rng.below(4));
    auto space = SymplecticSpace::standard(n);
    Matrix I = Matrix::Identity(2 * n, 2 * n);
    Matrix phi = randomSymplecticIn(space, rng, 3);
    if (smallestSingularValue(phi - I) < 0.05) continue;
    ++done;
    SymplecticMatrix Phi(space, phi);
    Matrix M = cayley(Phi, tol).matrix.entries();
    Matrix rawM = 0.5 * space.J() * (I + phi) * (I - phi).fullPivLu().solve(I);
    CHECK((rawM - rawM.transpose()).norm() <= 1e-8 * (1.0 + rawM.norm()));
    CHECK((cayley(inverse(Phi), tol).matrix.entries() + M).norm() <=
          1e-8 * (1.0 + M.norm()));
  }
  CHECK(done >= 120);
}

TEST_CASE("kernel equality with constructed eigenvalue-one blocks") {
  // n = 2, identity on the first mode plane: Ker(Phi - Id) is 2-dimensional.
  auto space = SymplecticSpace::standard(2);
  Matrix I = Matrix::Identity(4, 4);
  Matrix phi = I;
  Matrix sub = rotation2(0.9);
  phi(1, 1) = sub(0, 0);
  phi(1, 3) = sub(0, 1);
  phi(3, 1) = sub(1, 0);
  phi(3, 3) = sub(1, 1);
  Rng rng(0x5ee);
  Matrix psi;
  do {
    psi = randomSymplecticIn(space, rng, 3);
  } while (smallestSingularValue(psi - I) < 0.1 || smallestSingularValue(phi - psi) < 0.1);
  Matrix C = psiCayley(SymplecticMatrix(space, psi), SymplecticMatrix(space, phi))
                 .matrix.entries();
  auto sv = C.jacobiSvd().singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-9 * sv(0)) ++rank;
  CHECK(rank == 2);  // 2n - dim Ker(Phi - Id) = 4 - 2
}

TEST_CASE("chart consistency through the diagonal identification") {
  Rng rng(0xc0ffee);
  ToleranceContext tol;
  auto space = SymplecticSpace::standard(2);
  auto doubled = SymplecticSpace::doubled(space);
  Matrix I = Matrix::Identity(4, 4);
  int done = 0;
  for (int trial = 0; trial < 100 && done < 25; ++trial) {
    Matrix psi = randomSymplecticIn(space, rng, 3);
    Matrix phi = randomSymplecticIn(space, rng, 3);
    if (smallestSingularValue(psi - I) < 0.1 || smallestSingularValue(phi - psi) < 0.1)
      continue;
    ++done;
    Matrix C = psiCayley(SymplecticMatrix(space, psi), SymplecticMatrix(space, phi), tol)
                   .matrix.entries();
    Matrix chartVal = chart(diagonalLagrangian(doubled), graphLagrangian(doubled, psi),
                            graphLagrangian(doubled, phi))
                          .form.entries();
    CHECK((C - 2.0 * chartVal).norm() <= 1e-8 * (1.0 + C.norm()));
    CHECK(inertiaOf(C, tol) == inertiaOf(chartVal, tol));
  }
  CHECK(done >= 25);
}

TEST_CASE("psi = -Id relates to the classical transform by a J-congruent inverse") {
  Rng rng(0xfeed);
  auto space = SymplecticSpace::standard(2);
  Matrix I = Matrix::Identity(4, 4);
  SymplecticMatrix minusId(space, -I);
  int done = 0;
  for (int trial = 0; trial < 100 && done < 25; ++trial) {
    Matrix phi = randomSymplecticIn(space, rng, 3);
    if (smallestSingularValue(phi - I) < 0.1 || smallestSingularValue(phi + I) < 0.1)
      continue;
    ++done;
    SymplecticMatrix Phi(space, phi);
    Matrix C = psiCayley(minusId, Phi).matrix.entries();
    Matrix M = cayley(Phi).matrix.entries();
    const Matrix& J = space.J();
    Matrix expect = -(J.transpose() * M * J).fullPivLu().solve(I);
    CHECK((C - expect).norm() <= 1e-8 * (1.0 + C.norm()));
    CHECK(inertiaOf(C) == inertiaOf(Matrix(-M)));
  }
  CHECK(done >= 25);
}

}  // TEST_SUITE
