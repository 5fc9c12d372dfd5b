#include <doctest.h>

#include <cmath>

#include "czindex/maslov.hpp"
#include "helpers.hpp"

using namespace czindex;
using testutil::lineFrame;
using testutil::rotation2;

namespace {

LagrangianPath lineRotationPath(const SymplecticSpace& space, double a, double b,
                                int count) {
  std::vector<LagrangianPath::Sample> s;
  s.reserve(count);
  for (int i = 0; i < count; ++i) {
    double t = a + (b - a) * i / (count - 1);
    Matrix col(2, 1);
    col << std::cos(t), std::sin(t);
    s.push_back({t, LagrangianFrame(space, col)});
  }
  return LagrangianPath(space, std::move(s));
}

}  // namespace

TEST_SUITE("maslov") {

TEST_CASE("constant path has index zero") {
  auto space = SymplecticSpace::standard(1);
  auto vert = verticalLagrangian(space);
  auto diag = lineFrame(space, 1, 1);
  std::vector<LagrangianPath::Sample> s;
  for (int i = 0; i < 5; ++i) s.push_back({i / 4.0, diag});
  LagrangianPath path(space, std::move(s));
  CHECK(maslovIndex(path, vert, SignConvention::Paper).twice == 0);
  CHECK(maslovIndex(path, vert, SignConvention::Standard).twice == 0);
}

TEST_CASE("line rotation across the vertical: the endpoint-formula oracle") {
  auto space = SymplecticSpace::standard(1);
  auto vert = verticalLagrangian(space);
  auto path = lineRotationPath(space, M_PI / 4, 3 * M_PI / 4, 21);
  // One chart with the horizontal auxiliary covers the whole path; the chart
  // value of span{(cos t, sin t)} in that chart is cot(t).
  auto signOf = [](double v, SignConvention c) {
    int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
    return c == SignConvention::Paper ? -s : s;
  };
  for (auto conv : {SignConvention::Paper, SignConvention::Standard}) {
    std::int64_t expectTwice =
        signOf(1.0 / std::tan(3 * M_PI / 4), conv) - signOf(1.0 / std::tan(M_PI / 4), conv);
    CHECK(maslovIndex(path, vert, conv).twice == expectTwice);
  }
  CHECK(maslovIndex(path, vert, SignConvention::Paper) == HalfInteger::whole(1));
  CHECK(maslovIndex(path, vert, SignConvention::Standard) == HalfInteger::whole(-1));
}

TEST_CASE("path away from the cycle has index zero") {
  auto space = SymplecticSpace::standard(1);
  auto vert = verticalLagrangian(space);
  // stays in the first quadrant: chart signature is constant
  auto path = lineRotationPath(space, 0.3, 1.2, 15);
  CHECK(maslovIndex(path, vert, SignConvention::Paper).twice == 0);
}

TEST_CASE("degenerate endpoints give half-integer values") {
  auto space = SymplecticSpace::standard(1);
  auto vert = verticalLagrangian(space);
  // ends exactly on the vertical: half-signature endpoint rule
  auto path = lineRotationPath(space, M_PI / 4, M_PI / 2, 15);
  HalfInteger v = maslovIndex(path, vert, SignConvention::Paper);
  CHECK(v.twice == 1);  // 1/2
  CHECK_FALSE(v.isInteger());
  CHECK(v.str() == "1/2");
}

TEST_CASE("undersampled input is refused with refinement advice") {
  auto space = SymplecticSpace::standard(1);
  auto vert = verticalLagrangian(space);
  auto path = lineRotationPath(space, 0.0, 3.0, 3);
  CHECK_THROWS_AS(maslovIndex(path, vert, SignConvention::Paper), ChartGapError);
  try {
    maslovIndex(path, vert, SignConvention::Paper);
  } catch (const ChartGapError& e) {
    CHECK(std::string(e.what()).find("refine") != std::string::npos);
  }
}

TEST_CASE("calibration vector: definitional value per convention") {
  // q(Delta, Gr(R(-pi/2)); Delta, Gr(R(pi/2))) along Gr(R(t)), t in [0, pi/2]:
  // the diagonal index is the quarter value, the Gr(R(-pi/2)) index vanishes.
  auto inner = SymplecticSpace::standard(1);
  auto doubled = SymplecticSpace::doubled(inner);
  auto delta = diagonalLagrangian(doubled);
  auto grMinus = graphLagrangian(doubled, rotation2(-M_PI / 2));
  auto grPlus = graphLagrangian(doubled, rotation2(M_PI / 2));
  CHECK(hormanderByDefinition(delta, grMinus, delta, grPlus, SignConvention::Paper) ==
        HalfInteger::whole(1));
  CHECK(hormanderByDefinition(delta, grMinus, delta, grPlus, SignConvention::Standard) ==
        HalfInteger::whole(-1));
}

TEST_CASE("calibration report magnitudes and recorded signs") {
  for (auto conv : {SignConvention::Paper, SignConvention::Standard}) {
    auto rep = calibrate(conv);
    CHECK(rep.definitional.abs() == HalfInteger::whole(1));
    CHECK(rep.epsilonClosedForm == kEpsilonClosedForm);
    CHECK(rep.epsilonTauRoute == kEpsilonTauRoute);
    CHECK(rep.epsilonGraphBracket == kEpsilonGraphBracket);
    CHECK(rep.epsilonCayleySum == kEpsilonCayleySum);
  }
  CHECK_THROWS_AS(calibrate(SignConvention::Paper, {}, 0xca11b, /*forceDegenerate=*/true),
                  CalibrationAmbiguous);
}

TEST_CASE("trivial Hoermander values") {
  auto space = SymplecticSpace::standard(1);
  auto vert = verticalLagrangian(space);
  auto horiz = horizontalLagrangian(space);
  auto diag = lineFrame(space, 1, 1);
  // identical reference Lagrangians subtract to zero
  CHECK(hormanderByDefinition(vert, vert, horiz, diag, SignConvention::Paper).twice == 0);
  // constant connecting path
  CHECK(hormanderByDefinition(vert, horiz, diag, diag, SignConvention::Paper).twice == 0);
}

TEST_CASE("closed-form route on the line family") {
  auto space = SymplecticSpace::standard(1);
  auto vert = verticalLagrangian(space);
  auto horiz = horizontalLagrangian(space);
  auto diag = lineFrame(space, 1, 1);
  auto anti = lineFrame(space, 1, -1);
  for (auto conv : {SignConvention::Paper, SignConvention::Standard}) {
    HalfInteger def = hormanderByDefinition(vert, diag, vert, anti, conv);
    CHECK(hormanderClosedForm(vert, diag, anti, horiz, conv) == def);
    CHECK(hormanderByKashiwara(vert, diag, vert, anti, conv) == def);
    // L = L': zero difference
    CHECK(hormanderClosedForm(vert, diag, diag, horiz, conv).twice == 0);
  }
}

TEST_CASE("route agreement on random quadruples") {
  Rng rng(0xd00d);
  ToleranceContext tol;
  int done = 0;
  for (int trial = 0; trial < 200 && done < 60; ++trial) {
    int n = 1 + static_cast<int>(rng.below(2));
    auto space = SymplecticSpace::standard(n);
    auto L0 = randomLagrangian(space, rng);
    auto L = randomLagrangian(space, rng);
    auto Lp = randomLagrangian(space, rng);
    auto aux = randomLagrangian(space, rng);
    if (transverse(L0, L).margin < 0.15 || transverse(L0, Lp).margin < 0.15 ||
        transverse(L0, aux).margin < 0.15)
      continue;
    ++done;
    HalfInteger def =
        hormanderByDefinition(L0, L, L0, Lp, SignConvention::Paper, tol, 0x1234 + trial);
    CHECK(hormanderClosedForm(L0, L, Lp, aux, SignConvention::Paper, tol) == def);
    CHECK(hormanderByKashiwara(L0, L, L0, Lp, SignConvention::Paper, tol) == def);
  }
  CHECK(done >= 60);
}

TEST_CASE("index additivity under concatenation") {
  Rng rng(0xadd);
  auto space = SymplecticSpace::standard(2);
  for (int trial = 0; trial < 10; ++trial) {
    auto a = randomLagrangian(space, rng);
    auto m = randomLagrangian(space, rng);
    auto b = randomLagrangian(space, rng);
    auto L0 = randomLagrangian(space, rng);
    auto p1 = synthesizeLagrangianPath(a, m);
    auto p2 = synthesizeLagrangianPath(m, b);
    CHECK(maslovIndex(p1.concatenated(p2), L0, SignConvention::Standard) ==
          maslovIndex(p1, L0, SignConvention::Standard) +
              maslovIndex(p2, L0, SignConvention::Standard));
  }
}

}  // TEST_SUITE
