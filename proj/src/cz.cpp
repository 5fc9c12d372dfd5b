#include "czindex/cz.hpp"

#include <algorithm>
#include <cmath>

namespace czindex {

LagrangianPath graphPath(const SymplecticPath& path) {
  auto doubled = SymplecticSpace::doubled(path.space());
  std::vector<LagrangianPath::Sample> samples;
  samples.reserve(path.samples().size());
  for (const auto& s : path.samples())
    samples.push_back({s.t, graphLagrangian(doubled, s.matrix)});
  return LagrangianPath(doubled, std::move(samples));
}

HalfInteger czIndex(const SymplecticPath& path, SignConvention conv,
                    const ToleranceContext& tol, const MaslovOptions& opts) {
  auto doubled = SymplecticSpace::doubled(path.space());
  return maslovIndex(graphPath(path), diagonalLagrangian(doubled), conv, tol, opts);
}

HalfInteger czInverseDefect(const SymplecticPath& path, SignConvention conv,
                            const ToleranceContext& tol) {
  return czIndex(path.pointwiseInverse(), conv, tol) + czIndex(path, conv, tol);
}

namespace {

SymplecticPath constantShift(const SymplecticPath& path, const Matrix& factor,
                             ShiftSide side) {
  std::vector<SymplecticPath::Sample> out;
  out.reserve(path.samples().size());
  for (const auto& s : path.samples())
    out.push_back({s.t, side == ShiftSide::Left ? Matrix(factor * s.matrix)
                                                : Matrix(s.matrix * factor)});
  return SymplecticPath(path.space(), std::move(out));
}

}  // namespace

ShiftedCzResult shiftedCz(const SymplecticMatrix& psiStar, const SymplecticPath& path,
                          ShiftSide side, SignConvention conv, const ToleranceContext& tol,
                          std::uint64_t seed) {
  if (!psiStar.space().sameAs(path.space())) throw DimensionMismatch("spaces differ");
  ShiftedCzResult out;
  SymplecticPath left = constantShift(path, psiStar.entries(), ShiftSide::Left);
  SymplecticPath right = constantShift(path, psiStar.entries(), ShiftSide::Right);
  out.direct = czIndex(side == ShiftSide::Left ? left : right, conv, tol);
  out.otherSide = czIndex(side == ShiftSide::Left ? right : left, conv, tol);
  out.base = czIndex(path, conv, tol);
  auto doubled = SymplecticSpace::doubled(path.space());
  LagrangianFrame delta = diagonalLagrangian(doubled);
  LagrangianFrame grPsiInv = graphLagrangian(inverse(psiStar));
  LagrangianFrame grA = graphLagrangian(doubled, path.front());
  LagrangianFrame grB = graphLagrangian(doubled, path.back());
  out.hormander = hormanderByDefinition(delta, grPsiInv, grA, grB, conv, tol, seed);
  out.predicted = out.base + out.hormander;
  return out;
}

ProductCzResult productCz(const SymplecticPath& p1, const SymplecticPath& p2,
                          SignConvention conv, const ToleranceContext& tol,
                          std::uint64_t seed) {
  if (!p1.space().sameAs(p2.space())) throw DimensionMismatch("spaces differ");
  ProductCzResult out;
  out.direct = czIndex(p1.pointwiseProduct(p2), conv, tol);
  out.i1 = czIndex(p1, conv, tol);
  out.i2 = czIndex(p2, conv, tol);
  auto doubled = SymplecticSpace::doubled(p1.space());
  LagrangianFrame delta = diagonalLagrangian(doubled);
  const Matrix& J = p1.space().J();
  auto invOf = [&](const Matrix& m) { return Matrix(-J * m.transpose() * J); };
  out.q1 = hormanderByDefinition(delta, graphLagrangian(doubled, invOf(p2.front())),
                                 graphLagrangian(doubled, p1.front()),
                                 graphLagrangian(doubled, p1.back()), conv, tol, seed);
  out.q2 = hormanderByDefinition(delta, graphLagrangian(doubled, invOf(p1.back())),
                                 graphLagrangian(doubled, p2.front()),
                                 graphLagrangian(doubled, p2.back()), conv, tol, seed + 1);
  return out;
}

namespace {

void requireStartsAtIdentity(const SymplecticPath& p, const char* which) {
  int d = p.space().dim();
  if ((p.front() - Matrix::Identity(d, d)).norm() > 1e-9)
    throw DegenerateEndpoint(std::string(which) + " must start at the identity");
}

}  // namespace

ProductNondegenerateResult productCzNondegenerate(const SymplecticPath& p1,
                                                  const SymplecticPath& p2,
                                                  SignConvention conv,
                                                  const ToleranceContext& tol) {
  if (!p1.space().sameAs(p2.space())) throw DimensionMismatch("spaces differ");
  requireStartsAtIdentity(p1, "first path");
  requireStartsAtIdentity(p2, "second path");
  SymplecticMatrix end1(p1.space(), p1.back());
  SymplecticMatrix end2(p2.space(), p2.back());
  auto m1 = inSp0(end1, tol);
  auto m2 = inSp0(end2, tol);
  if (!m1.member || !m2.member)
    throw DegenerateEndpoint("endpoints must have no eigenvalue 1 (margins " +
                             std::to_string(m1.margin) + ", " + std::to_string(m2.margin) + ")");
  ProductNondegenerateResult out;
  out.direct = czIndex(p1.pointwiseProduct(p2), conv, tol);
  out.directSwapped = czIndex(p2.pointwiseProduct(p1), conv, tol);
  out.i1 = czIndex(p1, conv, tol);
  out.i2 = czIndex(p2, conv, tol);
  Matrix sum = cayley(end1, tol).matrix.entries() + cayley(end2, tol).matrix.entries();
  out.cayleySumSignature = signatureOf(sum, conv, tol);
  out.predicted =
      out.i1 + out.i2 + HalfInteger{kEpsilonCayleySum * out.cayleySumSignature};
  return out;
}

HalfInteger hormanderViaGraphBracket(const SymplecticMatrix& phi1,
                                     const SymplecticMatrix& phi2,
                                     const SymplecticMatrix& psi, SignConvention conv,
                                     const ToleranceContext& tol) {
  Matrix C1 = psiCayley(psi, phi1, tol).matrix.entries();
  Matrix C2 = psiCayley(psi, phi2, tol).matrix.entries();
  int bracket = signatureOf(C2 - C1, conv, tol) - signatureOf(C2, conv, tol) +
                signatureOf(C1, conv, tol);
  return HalfInteger{kEpsilonGraphBracket * static_cast<std::int64_t>(bracket)};
}

ProductPsiResult productCzPsi(const SymplecticPath& p1, const SymplecticPath& p2,
                              const SymplecticMatrix& psi, SignConvention conv,
                              const ToleranceContext& tol) {
  if (!p1.space().sameAs(p2.space()) || !p1.space().sameAs(psi.space()))
    throw DimensionMismatch("spaces differ");
  requireStartsAtIdentity(p1, "first path");
  requireStartsAtIdentity(p2, "second path");
  SymplecticMatrix end1inv = inverse(SymplecticMatrix(p1.space(), p1.back()));
  SymplecticMatrix end2(p2.space(), p2.back());

  ProductPsiResult out;
  out.direct = czIndex(p1.pointwiseProduct(p2), conv, tol);
  out.i1 = czIndex(p1, conv, tol);
  out.i2 = czIndex(p2, conv, tol);
  out.correction = hormanderViaGraphBracket(end1inv, end2, psi, conv, tol);
  out.predicted = out.i1 + out.i2 + out.correction;

  // The same bracket evaluated verbatim at the forward endpoint, for the log.
  SymplecticMatrix end1(p1.space(), p1.back());
  out.displayedBracket = hormanderViaGraphBracket(end1, end2, psi, conv, tol);

  Matrix C1 = psiCayley(psi, end1inv, tol).matrix.entries();
  Matrix C2 = psiCayley(psi, end2, tol).matrix.entries();
  auto in1 = inertiaOf(C1, tol);
  auto in2 = inertiaOf(C2, tol);
  if (in1.nondegenerate() && in2.nondegenerate()) {
    out.shortcutEvaluated = true;
    SymmetricForm f1(C1), f2(C2);
    int shortcut =
        signatureOf(f1.inverse(tol).entries() - f2.inverse(tol).entries(), conv, tol);
    out.shortcutAgrees =
        HalfInteger{kEpsilonGraphBracket * static_cast<std::int64_t>(shortcut)} ==
        out.correction;
  }
  return out;
}

std::vector<IterateEntry> iterateCz(const SymplecticPath& path, int N, SignConvention conv,
                                    const ToleranceContext& tol) {
  if (N < 1) throw DimensionMismatch("iteration count must be >= 1");
  requireStartsAtIdentity(path, "path");
  const int n = path.space().halfDim();
  std::vector<IterateEntry> out;
  out.reserve(N);
  HalfInteger prev{0};
  HalfInteger first{0};
  for (int k = 1; k <= N; ++k) {
    // Refine so the powered path still honors the sampling contract.
    double step = path.maxStep();
    int factor = std::max(1, static_cast<int>(std::ceil(step * k / 0.08)));
    SymplecticPath powered = path.refined(factor).pointwisePower(k);
    IterateEntry e;
    e.k = k;
    e.index = czIndex(powered, conv, tol);
    if (k == 1) first = e.index;
    e.perStepHormander = (k == 1) ? HalfInteger{0} : e.index - prev - first;
    std::int64_t devTwice = std::llabs(std::llabs(e.index.twice) - k * std::llabs(first.twice));
    e.deviationTwice = devTwice;
    e.halfBound = 0.5 * n * (k - 1);
    e.fullBound = static_cast<double>(n) * (k - 1);
    e.halfBoundViolated = static_cast<double>(devTwice) / 2.0 > e.halfBound + 1e-12;
    e.fullBoundViolated = static_cast<double>(devTwice) / 2.0 > e.fullBound + 1e-12;
    prev = e.index;
    out.push_back(e);
  }
  return out;
}

SymplecticMatrix findAdmissiblePsi(const SymplecticMatrix& endpoint, int N,
                                   std::uint64_t seed, double margin, int maxTrials) {
  if (N < 1) throw DimensionMismatch("N must be >= 1");
  const SymplecticSpace& space = endpoint.space();
  int d = space.dim();
  Rng rng(seed);
  std::vector<Matrix> powers;
  powers.reserve(N);
  Matrix acc = Matrix::Identity(d, d);
  for (int j = 1; j <= N; ++j) {
    acc = acc * endpoint.entries();
    powers.push_back(acc);
  }
  for (int trial = 0; trial < maxTrials; ++trial) {
    Matrix psi = randomSymplecticIn(space, rng, 3);
    double worst = smallestSingularValue(psi - Matrix::Identity(d, d));
    for (const Matrix& p : powers)
      worst = std::min(worst, smallestSingularValue(p - psi));
    if (worst >= margin) return SymplecticMatrix(space, psi);
  }
  throw SearchExhausted("no admissible psi found in " + std::to_string(maxTrials) +
                        " trials (margin " + std::to_string(margin) + ")");
}

}  // namespace czindex
