#include <doctest.h>

#include "czindex/lagr.hpp"
#include "czindex/sympl.hpp"
#include "helpers.hpp"

using namespace czindex;
using testutil::rotation2;

TEST_SUITE("sympl") {

TEST_CASE("membership checks") {
  auto space = SymplecticSpace::standard(1);
  CHECK(isSymplectic(space.J(), space).symplectic);
  Matrix d(2, 2);
  d << 2, 0, 0, 0.5;
  CHECK(isSymplectic(d, space).symplectic);
  Matrix bad(2, 2);
  bad << 2, 0, 0, 2;
  CHECK_FALSE(isSymplectic(bad, space).symplectic);
}

TEST_CASE("group inverse") {
  auto space = SymplecticSpace::standard(1);
  SymplecticMatrix id(space, Matrix::Identity(2, 2));
  CHECK((inverse(id).entries() - Matrix::Identity(2, 2)).norm() < 1e-14);
  SymplecticMatrix rot(space, rotation2(0.7));
  CHECK((inverse(rot).entries() - rotation2(-0.7)).norm() < 1e-12);
  Matrix d(2, 2);
  d << 2, 0, 0, 0.5;
  SymplecticMatrix diag(space, d);
  Matrix dinv(2, 2);
  dinv << 0.5, 0, 0, 2;
  CHECK((inverse(diag).entries() - dinv).norm() < 1e-12);
  Rng rng(0x1771);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 1 + static_cast<int>(rng.below(3));
    auto sp = SymplecticSpace::standard(n);
    Matrix phi = randomSymplecticIn(sp, rng, 3);
    SymplecticMatrix m(sp, phi);
    CHECK((inverse(m).entries() * phi - Matrix::Identity(2 * n, 2 * n)).norm() <= 1e-9);
  }
}

TEST_CASE("graphs of Id and -Id are the diagonals") {
  auto inner = SymplecticSpace::standard(1);
  auto doubled = SymplecticSpace::doubled(inner);
  auto grId = graphLagrangian(doubled, Matrix::Identity(2, 2));
  CHECK(grId.subspaceDistance(diagonalLagrangian(doubled)) < 1e-12);
  auto grMinus = graphLagrangian(doubled, -Matrix::Identity(2, 2));
  CHECK(grMinus.subspaceDistance(antidiagonalLagrangian(doubled)) < 1e-12);
}

TEST_CASE("graphs are Lagrangian in the doubled space") {
  Rng rng(0x99);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 1 + static_cast<int>(rng.below(3));
    auto inner = SymplecticSpace::standard(n);
    auto doubled = SymplecticSpace::doubled(inner);
    Matrix phi = randomSymplecticIn(inner, rng, 3);
    auto check = isLagrangian(doubled, graphLagrangian(doubled, phi).columns());
    CHECK(check.lagrangian);
  }
}

TEST_CASE("swap map properties") {
  auto inner = SymplecticSpace::standard(1);
  auto doubled = SymplecticSpace::doubled(inner);
  Matrix A = swapMap(doubled);
  CHECK((A * A - Matrix::Identity(4, 4)).norm() < 1e-14);
  // anti-symplectomorphism: pullback negates the doubled form
  CHECK((A.transpose() * doubled.J() * A + doubled.J()).norm() < 1e-14);
  auto delta = diagonalLagrangian(doubled);
  CHECK(delta.mappedBy(A).subspaceDistance(delta) < 1e-12);
  Matrix d(2, 2);
  d << 2, 0, 0, 0.5;
  Matrix dinv(2, 2);
  dinv << 0.5, 0, 0, 2;
  auto swapped = graphLagrangian(doubled, d).mappedBy(A);
  CHECK(swapped.subspaceDistance(graphLagrangian(doubled, dinv)) < 1e-12);
}

TEST_CASE("graph transversality tracks det(Phi - psi)") {
  auto inner = SymplecticSpace::standard(1);
  auto doubled = SymplecticSpace::doubled(inner);
  auto delta = diagonalLagrangian(doubled);
  // det(R(pi/2) - Id) = 2 != 0: transverse to the diagonal
  auto gr = graphLagrangian(doubled, rotation2(M_PI / 2));
  CHECK(transverse(gr, delta).transverse);
  CHECK(transverse(graphLagrangian(doubled, Matrix::Identity(2, 2)), delta).transverse ==
        false);
  Rng rng(0x7777);
  for (int trial = 0; trial < 40; ++trial) {
    Matrix phi = randomSymplecticIn(inner, rng, 3);
    Matrix psi = randomSymplecticIn(inner, rng, 3);
    bool detSays = std::abs((phi - psi).determinant()) > 1e-6;
    bool frameSays =
        transverse(graphLagrangian(doubled, phi), graphLagrangian(doubled, psi), 1e-8)
            .margin > 1e-4;
    if (detSays) CHECK(frameSays);
  }
}

TEST_CASE("random generation is deterministic and symplectic") {
  auto a = randomSymplectic(12345, 2, 3);
  auto b = randomSymplectic(12345, 2, 3);
  CHECK((a.entries() - b.entries()).norm() == 0.0);
  CHECK(isSymplectic(a.entries(), a.space()).symplectic);
  auto idLike = randomSymplectic(9, 2, 0);
  CHECK((idLike.entries() - Matrix::Identity(4, 4)).norm() == 0.0);

  auto p1 = randomSymplecticPath(777, 1, 33);
  auto p2 = randomSymplecticPath(777, 1, 33);
  CHECK(p1.size() == p2.size());
  CHECK(p1.maxStep() < 0.1);
  CHECK((p1.front() - Matrix::Identity(2, 2)).norm() < 1e-14);
}

TEST_CASE("path machinery: product, power, inverse, concatenation") {
  auto quarter = testutil::rotationPath(0.0, M_PI / 2, 41);
  auto prod = quarter.pointwiseProduct(quarter);
  CHECK((prod.back() - rotation2(M_PI)).norm() < 1e-10);
  auto sq = quarter.pointwisePower(2);
  CHECK((sq.back() - rotation2(M_PI)).norm() < 1e-10);
  auto inv = quarter.pointwiseInverse();
  CHECK((inv.back() - rotation2(-M_PI / 2)).norm() < 1e-12);
  auto second = testutil::rotationPath(M_PI / 2, M_PI, 41);
  auto glued = quarter.concatenated(second);
  CHECK(glued.size() == 81);
  CHECK((glued.back() - rotation2(M_PI)).norm() < 1e-12);
  auto refined = quarter.refined(2);
  CHECK(refined.size() == 81);
  CHECK(refined.maxStep() < quarter.maxStep());
}

TEST_CASE("polar interpolation reaches the endpoint inside the group") {
  Rng rng(0xabc);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 1 + static_cast<int>(rng.below(2));
    auto space = SymplecticSpace::standard(n);
    Matrix target = randomSymplecticIn(space, rng, 3);
    auto path = polarInterpolationPath(SymplecticMatrix(space, target), 33);
    CHECK((path.front() - Matrix::Identity(2 * n, 2 * n)).norm() < 1e-12);
    CHECK((path.back() - target).norm() < 1e-12);
    CHECK(path.maxStep() < 0.1);
  }
}

}  // TEST_SUITE
