#include "czindex/meta.hpp"

#include <cmath>
#include <string>

namespace czindex {

GeneratingFunction::GeneratingFunction(SymmetricForm P, Matrix K, SymmetricForm Q,
                                       double detMargin)
    : P_(std::move(P)), K_(std::move(K)), Q_(std::move(Q)) {
  if (P_.dim() != K_.rows() || Q_.dim() != K_.rows() || K_.rows() != K_.cols())
    throw DimensionMismatch("generating function blocks must share one size");
  if (!K_.allFinite()) throw NonFiniteEntry("K has non-finite entries");
  if (smallestSingularValue(K_) <= detMargin)
    throw SingularK("K is singular under the margin " + std::to_string(detMargin));
}

MetaplecticElement::MetaplecticElement(GeneratingFunction W, int m) : W_(std::move(W)) {
  m_ = ((m % 4) + 4) % 4;
  double detK = W_.K().fullPivLu().determinant();
  bool even = (m_ % 2 == 0);
  if ((detK > 0) != even)
    throw DegenerateInput("parity of m must match sign det K (det K = " +
                          std::to_string(detK) + ", m = " + std::to_string(m_) + ")");
}

SymplecticMatrix freeMatrix(const GeneratingFunction& W) {
  const int n = W.n();
  Matrix Kinv = W.K().fullPivLu().solve(Matrix::Identity(n, n));
  Matrix out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = Kinv * W.Q().entries();
  out.topRightCorner(n, n) = Kinv;
  out.bottomLeftCorner(n, n) =
      W.P().entries() * Kinv * W.Q().entries() - W.K().transpose();
  out.bottomRightCorner(n, n) = W.P().entries() * Kinv;
  SymplecticMatrix phi(SymplecticSpace::standard(n), out);
  if (smallestSingularValue(Kinv) <= 1e-12)
    throw SingularK("upper-right block of the generated matrix is singular");
  return phi;
}

GeneratingFunction matrixToW(const SymplecticMatrix& phi, const ToleranceContext& tol) {
  const int n = phi.space().halfDim();
  Matrix B = phi.entries().topRightCorner(n, n);
  double margin = smallestSingularValue(B);
  if (margin <= tol.zeroThreshold(spectralNorm(B) > 1.0 ? spectralNorm(B) : 1.0, n))
    throw NotFree("upper-right block is singular (margin " + std::to_string(margin) + ")");
  Matrix K = B.fullPivLu().solve(Matrix::Identity(n, n));
  Matrix A = phi.entries().topLeftCorner(n, n);
  Matrix D = phi.entries().bottomRightCorner(n, n);
  Matrix P = D * K;  // symmetric by symplecticity
  Matrix Q = K * A;
  return GeneratingFunction(SymmetricForm(P), K, SymmetricForm(Q));
}

SymmetricForm wxx(const GeneratingFunction& W) {
  Matrix w = W.P().entries() + W.Q().entries() - W.K() - W.K().transpose();
  SymmetricForm form(w);
  // det(Phi_W - Id) = (-1)^n det(K^-1) det(Wxx), asserted each call.
  const int n = W.n();
  Matrix phi = freeMatrix(W).entries();
  double lhs = (phi - Matrix::Identity(2 * n, 2 * n)).fullPivLu().determinant();
  double detK = W.K().fullPivLu().determinant();
  double rhs = ((n % 2 == 0) ? 1.0 : -1.0) / detK * w.fullPivLu().determinant();
  double scale = std::abs(lhs) > 1.0 ? std::abs(lhs) : 1.0;
  if (std::abs(lhs - rhs) > 1e-8 * scale)
    throw DegenerateInput("determinant identity violated: " + std::to_string(lhs) +
                          " vs " + std::to_string(rhs));
  return form;
}

bool isFreeSp0(const GeneratingFunction& W, const ToleranceContext& tol) {
  SymmetricForm w = wxx(W);
  return inertia(w, tol).nondegenerate();
}

Mod4Value nu(const MetaplecticElement& element, const ToleranceContext& tol) {
  if (!isFreeSp0(element.W(), tol))
    throw NotInSp0("nu needs an eigenvalue-1-free element (det Wxx != 0)");
  int nminus = inertia(wxx(element.W()), tol).nMinus;
  return mod4(element.m() - nminus);
}

int inert(const LagrangianFrame& L, const LagrangianFrame& Lp, const LagrangianFrame& Lpp,
          SignConvention conv, const ToleranceContext& tol) {
  int n = L.space().halfDim();
  int tau = kashiwara(L, Lp, Lpp, conv, tol);
  int ddim = intersectionDim(L, Lp) - intersectionDim(L, Lpp) + intersectionDim(Lp, Lpp);
  int total = tau + n + ddim;
  if (total % 2 != 0)
    throw NonIntegerResult("(tau + n + ddim) is odd: tau=" + std::to_string(tau) +
                           " n=" + std::to_string(n) + " ddim=" + std::to_string(ddim) +
                           "; convention or tolerance inconsistency");
  return total / 2;
}

Mod4Value composeMaslov(const MetaplecticElement& e1, const MetaplecticElement& e2,
                        const ToleranceContext& tol) {
  SymplecticMatrix phi1 = freeMatrix(e1.W());
  SymplecticMatrix phi2 = freeMatrix(e2.W());
  const SymplecticSpace& space = phi1.space();
  LagrangianFrame L0 = verticalLagrangian(space);
  LagrangianFrame a = L0.mappedBy(phi1.entries());
  LagrangianFrame b = L0.mappedBy(phi1.entries() * phi2.entries());
  // The factorization-independent value of Def-5.4 type pins the cocycle term
  // to minus the standard-convention inert value.
  int term = inert(L0, a, b, SignConvention::Standard, tol);
  return mod4(e1.m() + e2.m() - term);
}

Mod4Value composeMaslovDirect(const MetaplecticElement& e1, const MetaplecticElement& e2,
                              const ToleranceContext& tol) {
  Matrix sum = e2.W().P().entries() + e1.W().Q().entries();
  auto in = inertiaOf(sum, tol);
  if (!in.nondegenerate())
    throw DegenerateInput("P' + Q is degenerate; the product is not free");
  return mod4(e1.m() + e2.m() - in.nMinus);
}

MetaplecticElement inverseElement(const MetaplecticElement& e) {
  // W*(x, x') = -W(x', x): swaps and negates the outer blocks, transposes K.
  SymmetricForm P = -e.W().Q();
  SymmetricForm Q = -e.W().P();
  Matrix K = -e.W().K().transpose();
  return MetaplecticElement(GeneratingFunction(P, K, Q), e.W().n() - e.m());
}

Mod4Value nuCompose(const MetaplecticElement& e1, const MetaplecticElement& e2,
                    const ToleranceContext& tol) {
  SymplecticMatrix phi1 = freeMatrix(e1.W());
  SymplecticMatrix phi2 = freeMatrix(e2.W());
  if (!isFreeSp0(e1.W(), tol) || !isFreeSp0(e2.W(), tol))
    throw DegenerateEndpoint("nu composition needs eigenvalue-1-free factors");
  Mod4Value n1 = nu(e1, tol);
  Mod4Value n2 = nu(e2, tol);
  Matrix sum = cayley(phi1, tol).matrix.entries() + cayley(phi2, tol).matrix.entries();
  int sig = signatureOf(sum, SignConvention::Standard, tol);
  if (sig % 2 != 0)
    throw DegenerateEndpoint("sign(M1 + M2) is odd; transform sum too degenerate");
  // Correction +sign_std/2 = -sign_paper/2; provenance shared with the
  // product-formula calibration (it is minus that correction).
  return mod4(n1.value + n2.value + sig / 2);
}

namespace {

HalfInteger loopIndexValue(const SymplecticSpace& space, SignConvention conv,
                           const ToleranceContext& tol) {
  SymplecticPath loop = unitaryLoopPath(space, 1, 65);
  return czIndex(loop, conv, tol);
}

std::optional<int> matchLegalM(const GeneratingFunction& W, Mod4Value target,
                               const int legal[2], const ToleranceContext& tol) {
  std::optional<int> matched;
  for (int i = 0; i < 2; ++i) {
    Mod4Value v = nu(MetaplecticElement(W, legal[i]), tol);
    if (v == target) {
      if (matched) return std::nullopt;  // ambiguous; must be unique
      matched = legal[i];
    }
  }
  return matched;
}

}  // namespace

NuVsCzReport nuVsCz(const GeneratingFunction& W, int m, std::uint64_t pathSynthesisSeed,
                    SignConvention conv, const ToleranceContext& tol) {
  (void)pathSynthesisSeed;  // synthesis is deterministic; kept for interface stability
  if (!isFreeSp0(W, tol)) throw NotInSp0("bridge check needs det Wxx != 0");
  MetaplecticElement anchor(W, m);  // validates parity of the requested m
  NuVsCzReport report;
  report.convention = conv;
  int m0 = anchor.m() % 2 == 0 ? 0 : 1;
  report.legalMs[0] = m0;
  report.legalMs[1] = m0 + 2;

  SymplecticMatrix phi = freeMatrix(W);
  SymplecticPath plain = polarInterpolationPath(phi, 65);
  SymplecticPath looped = unitaryLoopPath(phi.space(), 1, 65).concatenated(plain);

  report.plain.czIndex = czIndex(plain, conv, tol);
  report.looped.czIndex = czIndex(looped, conv, tol);
  if (!report.plain.czIndex.isInteger() || !report.looped.czIndex.isInteger())
    throw NonIntegerResult("generating-path index is not an integer; endpoint degenerate");
  report.plain.minusCzMod4 = mod4(-report.plain.czIndex.asInteger());
  report.looped.minusCzMod4 = mod4(-report.looped.czIndex.asInteger());
  report.loopIndexTwice =
      static_cast<int>(loopIndexValue(phi.space(), conv, tol).twice);

  report.plain.matchedM = matchLegalM(W, report.plain.minusCzMod4, report.legalMs, tol);
  report.looped.matchedM = matchLegalM(W, report.looped.minusCzMod4, report.legalMs, tol);
  report.uniqueMatchPerClass =
      report.plain.matchedM.has_value() && report.looped.matchedM.has_value();

  if (report.uniqueMatchPerClass) {
    // The matched m must shift by the loop's index contribution mod 4.
    int shift = ((report.looped.matchedM.value() - report.plain.matchedM.value()) % 4 + 4) % 4;
    int expected = ((-report.loopIndexTwice / 2) % 4 + 4) % 4;
    report.loopShiftConsistent = shift == expected;
  }
  return report;
}

FreeFactorization factorFree(const SymplecticMatrix& phi, std::uint64_t seed,
                             const ToleranceContext& tol, int maxTrials) {
  const int n = phi.space().halfDim();
  Rng rng(seed);
  for (int trial = 0; trial < maxTrials; ++trial) {
    // Seeded family of free W with Phi_W and Phi_W^-1 Phi both free.
    Matrix P(n, n), Q(n, n), K(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        K(i, j) = rng.uniformSym();
        double p = rng.uniformSym(), q = rng.uniformSym();
        P(i, j) = p;
        Q(i, j) = q;
      }
    P = 0.5 * (P + P.transpose()).eval();
    Q = 0.5 * (Q + Q.transpose()).eval();
    if (smallestSingularValue(K) < 0.2) continue;
    GeneratingFunction W(SymmetricForm(P), K, SymmetricForm(Q));
    SymplecticMatrix phiW = freeMatrix(W);
    Matrix rest = inverse(phiW).entries() * phi.entries();
    Matrix B = rest.topRightCorner(n, n);
    if (smallestSingularValue(B) < 0.05) continue;
    try {
      GeneratingFunction Wp = matrixToW(SymplecticMatrix(phi.space(), rest), tol);
      return FreeFactorization{W, Wp};
    } catch (const Error&) {
      continue;
    }
  }
  throw SearchExhausted("no free factorization found in " + std::to_string(maxTrials) +
                        " trials");
}

}  // namespace czindex
