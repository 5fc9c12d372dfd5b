#include <doctest.h>

#include "czindex/lagr.hpp"
#include "helpers.hpp"

using namespace czindex;
using testutil::lineFrame;
using testutil::rotation2;

TEST_SUITE("lagr") {

TEST_CASE("transversality basics") {
  auto space = SymplecticSpace::standard(2);
  auto vert = verticalLagrangian(space);
  auto horiz = horizontalLagrangian(space);
  CHECK(transverse(vert, horiz).transverse);
  CHECK(transverse(vert, horiz).margin == doctest::Approx(1.0));
  CHECK_FALSE(transverse(vert, vert).transverse);
}

TEST_CASE("chart on the standard line examples") {
  auto space = SymplecticSpace::standard(1);
  auto vert = verticalLagrangian(space);
  auto horiz = horizontalLagrangian(space);
  auto diag = lineFrame(space, 1, 1);
  auto anti = lineFrame(space, 1, -1);

  CHECK(chart(vert, horiz, diag).form.entries()(0, 0) == doctest::Approx(1.0));
  CHECK(chart(vert, horiz, anti).form.entries()(0, 0) == doctest::Approx(-1.0));
  CHECK(chart(vert, horiz, vert).form.entries().norm() == doctest::Approx(0.0));
}

TEST_CASE("chart of rotation graphs over the diagonal") {
  auto inner = SymplecticSpace::standard(1);
  auto doubled = SymplecticSpace::doubled(inner);
  auto delta = diagonalLagrangian(doubled);
  auto anti = antidiagonalLagrangian(doubled);
  for (double theta : {0.4, 1.0, 2.2, -0.9}) {
    auto gr = graphLagrangian(doubled, rotation2(theta));
    Matrix got = chart(delta, anti, gr).form.entries();
    // tan(theta/2) Id in the orthonormal diagonal frame, i.e. the (v, v)
    // value 2 tan(theta/2) Id scaled by the (v,v) -> (v,v)/sqrt2 congruence
    Matrix expect = std::tan(theta / 2.0) * Matrix::Identity(2, 2);
    CHECK((got - expect).norm() < 1e-9 * (1.0 + expect.norm()));
  }
}

TEST_CASE("chart value is frame-functional") {
  Rng rng(0xc4a7);
  auto space = SymplecticSpace::standard(2);
  for (int trial = 0; trial < 30; ++trial) {
    auto L0 = randomLagrangian(space, rng);
    auto L1 = randomLagrangian(space, rng);
    auto L = randomLagrangian(space, rng);
    if (transverse(L0, L1).margin < 0.2 || transverse(L, L1).margin < 0.2) continue;
    // Re-framing L or L1 must not change the chart value at all.
    Matrix g = Matrix::NullaryExpr(2, 2, [&](Eigen::Index, Eigen::Index) {
      return rng.uniformSym();
    });
    if (std::abs(g.determinant()) < 0.1) continue;
    LagrangianFrame Lre(space, L.columns() * g);
    LagrangianFrame L1re(space, L1.columns() * g);
    Matrix base = chart(L0, L1, L).form.entries();
    CHECK((chart(L0, L1, Lre).form.entries() - base).norm() < 1e-9);
    CHECK((chart(L0, L1re, L).form.entries() - base).norm() < 1e-9);
  }
}

TEST_CASE("chart swap identity and error paths") {
  auto space = SymplecticSpace::standard(1);
  auto vert = verticalLagrangian(space);
  auto horiz = horizontalLagrangian(space);
  auto diag = lineFrame(space, 1, 1);
  for (auto conv : {SignConvention::Paper, SignConvention::Standard})
    CHECK(chartSwapDefect(vert, horiz, diag, conv) == 0);
  // L nearly equal to L0 is rejected by the transversality margin
  auto nearVert = lineFrame(space, 1e-13, 1.0);
  CHECK_THROWS_AS(chart(nearVert, horiz, vert, 1e-9), NotTransverse);
}

TEST_CASE("Kashiwara index examples") {
  auto space = SymplecticSpace::standard(1);
  auto vert = verticalLagrangian(space);
  auto horiz = horizontalLagrangian(space);
  auto diag = lineFrame(space, 1, 1);
  CHECK(kashiwara(horiz, horiz, diag, SignConvention::Paper) == 0);
  CHECK(kashiwara(horiz, diag, vert, SignConvention::Paper) == -1);
  CHECK(kashiwara(horiz, diag, vert, SignConvention::Standard) == 1);
}

TEST_CASE("Kashiwara via projection") {
  auto space = SymplecticSpace::standard(1);
  auto vert = verticalLagrangian(space);
  auto horiz = horizontalLagrangian(space);
  auto diag = lineFrame(space, 1, 1);
  CHECK(kashiwaraViaProjection(horiz, diag, vert, SignConvention::Paper) == -1);
  // L' = L: vanishes by the decomposition criterion
  CHECK(kashiwaraViaProjection(horiz, horiz, vert, SignConvention::Paper) == 0);
  CHECK_THROWS_AS(kashiwaraViaProjection(horiz, diag, horiz, SignConvention::Paper),
                  NotTransverse);
  Rng rng(0x777);
  ToleranceContext tol;
  for (int trial = 0; trial < 60; ++trial) {
    int n = 1 + static_cast<int>(rng.below(3));
    auto sp = SymplecticSpace::standard(n);
    auto L = randomLagrangian(sp, rng);
    auto Lp = randomLagrangian(sp, rng);
    auto Lpp = randomLagrangian(sp, rng);
    if (transverse(L, Lpp).margin < 0.1) continue;
    CHECK(kashiwaraViaProjection(L, Lp, Lpp, SignConvention::Paper, tol) ==
          kashiwara(L, Lp, Lpp, SignConvention::Paper, tol));
  }
}

TEST_CASE("Lemma 5.7(ii)-style vanishing for split configurations") {
  // L = (L cap L') + (L cap L'') with nontrivial intersections on both sides:
  // n = 2, L = span{x1, p2}, L' = span{x1, x2}, L'' = span{p1, p2}.
  auto space = SymplecticSpace::standard(2);
  Matrix L(4, 2), Lp(4, 2), Lpp(4, 2);
  L.setZero();
  L(0, 0) = 1;  // x1
  L(3, 1) = 1;  // p2
  Lp.setZero();
  Lp(0, 0) = 1;  // x1
  Lp(1, 1) = 1;  // x2
  Lpp.setZero();
  Lpp(2, 0) = 1;  // p1
  Lpp(3, 1) = 1;  // p2
  LagrangianFrame fL(space, L), fLp(space, Lp), fLpp(space, Lpp);
  CHECK(kashiwaraViaProjection(fL, fLp, fLpp, SignConvention::Paper) == 0);
  CHECK(kashiwara(fL, fLp, fLpp, SignConvention::Paper) == 0);
}

TEST_CASE("frame intersections") {
  auto space = SymplecticSpace::standard(2);
  auto vert = verticalLagrangian(space);
  auto horiz = horizontalLagrangian(space);
  CHECK(intersectionDim(vert, vert) == 2);
  CHECK(intersectionDim(vert, horiz) == 0);
}

TEST_CASE("canonicalization keeps orthonormal inputs and fixes the rest") {
  auto space = SymplecticSpace::standard(1);
  Matrix col(2, 1);
  col << 0.0, 1.0;
  LagrangianFrame kept(space, col);
  CHECK((kept.columns() - col).norm() == 0.0);
  Matrix scaled = 3.7 * col;
  LagrangianFrame fixed(space, scaled);
  CHECK(fixed.columns().col(0).norm() == doctest::Approx(1.0));
  CHECK(fixed.subspaceDistance(kept) < 1e-14);
}

TEST_CASE("degenerate frames are rejected") {
  auto space = SymplecticSpace::standard(2);
  Matrix rankDeficient(4, 2);
  rankDeficient.setZero();
  rankDeficient(0, 0) = 1;
  rankDeficient(0, 1) = 1;  // same column twice
  CHECK_THROWS_AS(LagrangianFrame(space, rankDeficient), NotLagrangian);
  Matrix notIsotropic(4, 2);
  notIsotropic.setZero();
  notIsotropic(0, 0) = 1;  // x1
  notIsotropic(2, 1) = 1;  // p1: omega(x1, p1) = 1
  CHECK_THROWS_AS(LagrangianFrame(space, notIsotropic), NotLagrangian);
}

}  // TEST_SUITE
