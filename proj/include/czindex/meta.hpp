#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "czindex/cayley.hpp"
#include "czindex/cz.hpp"
#include "czindex/forms.hpp"
#include "czindex/lagr.hpp"

namespace czindex {

/// Quadratic generating function W(x, x') = <Px,x>/2 - <Kx,x'> + <Qx',x'>/2
/// with P, Q symmetric and K invertible.
class GeneratingFunction {
 public:
  GeneratingFunction(SymmetricForm P, Matrix K, SymmetricForm Q,
                     double detMargin = 1e-9);

  int n() const { return static_cast<int>(K_.rows()); }
  const SymmetricForm& P() const { return P_; }
  const Matrix& K() const { return K_; }
  const SymmetricForm& Q() const { return Q_; }

 private:
  SymmetricForm P_;
  Matrix K_;
  SymmetricForm Q_;
};

/// Pair (W, m mod 4) with the parity of m tied to sign det K:
/// det K > 0 requires m even, det K < 0 requires m odd.
class MetaplecticElement {
 public:
  MetaplecticElement(GeneratingFunction W, int m);

  const GeneratingFunction& W() const { return W_; }
  int m() const { return m_; }

 private:
  GeneratingFunction W_;
  int m_;  // in {0,1,2,3}
};

struct Mod4Value {
  int value = 0;  // in {0,1,2,3}
  bool operator==(const Mod4Value&) const = default;
};

inline Mod4Value mod4(std::int64_t v) {
  return Mod4Value{static_cast<int>(((v % 4) + 4) % 4)};
}

/// The symplectic matrix generated by W, in blocks
/// [[K^-1 Q, K^-1], [P K^-1 Q - K^T, P K^-1]]. Its upper-right block is
/// invertible (it maps the vertical Lagrangian off itself).
SymplecticMatrix freeMatrix(const GeneratingFunction& W);

/// Inversion of freeMatrix: K = B^-1, Q = B^-1 A, P = D B^-1, with the
/// symmetry of P and Q coming from symplecticity. Throws NotFree when the
/// upper-right block is singular under tolerance.
GeneratingFunction matrixToW(const SymplecticMatrix& phi, const ToleranceContext& tol = {});

/// Hessian of x -> W(x, x): P + Q - K - K^T. The determinant identity
/// det(Phi_W - Id) = (-1)^n det(K^-1) det(Wxx) is asserted numerically.
SymmetricForm wxx(const GeneratingFunction& W);

/// True iff Phi_W has no eigenvalue 1, i.e. det(Wxx) != 0.
bool isFreeSp0(const GeneratingFunction& W, const ToleranceContext& tol = {});

/// nu = (m - n-(Wxx)) mod 4. Requires isFreeSp0.
Mod4Value nu(const MetaplecticElement& element, const ToleranceContext& tol = {});

/// Inert cocycle (tau(L,L',L'') + n + ddim)/2 where ddim is the coboundary of
/// dim(. cap .). Integer-valued; a non-integer value signals a convention or
/// tolerance inconsistency and throws NonIntegerResult.
int inert(const LagrangianFrame& L, const LagrangianFrame& Lp, const LagrangianFrame& Lpp,
          SignConvention conv, const ToleranceContext& tol = {});

/// Maslov-class composition on elements. The composed class is pinned by the
/// factorization-independent value m + m' - n-(P' + Q), which forces the
/// cocycle term to enter as -Inert in the standard convention; the value is
/// convention-free. (See inert() for the raw cocycle.)
Mod4Value composeMaslov(const MetaplecticElement& e1, const MetaplecticElement& e2,
                        const ToleranceContext& tol = {});

/// Factorization-defined value m + m' - n-(P' + Q) mod 4; valid when the
/// product matrix is itself free (det(P' + Q) != 0).
Mod4Value composeMaslovDirect(const MetaplecticElement& e1, const MetaplecticElement& e2,
                              const ToleranceContext& tol = {});

/// Inverse element: W*(x, x') = -W(x', x) and m* = n - m.
MetaplecticElement inverseElement(const MetaplecticElement& e);

/// nu of the product element: nu1 + nu2 + sign_std(M_{Phi_W} + M_{Phi_W'})/2
/// mod 4 (equivalently minus half the paper-convention signature). Both
/// factors and the correction need eigenvalue-1-free matrices.
Mod4Value nuCompose(const MetaplecticElement& e1, const MetaplecticElement& e2,
                    const ToleranceContext& tol = {});

/// Report of the bridge between nu and the Conley-Zehnder index of generating
/// paths: for each path class (plain polar path, and the same with one extra
/// full loop), -czIndex mod 4 must match nu(W, m) for exactly one parity-legal
/// m in {m0, m0 + 2}.
struct NuVsCzReport {
  SignConvention convention;
  int legalMs[2] = {0, 0};
  struct PathClass {
    HalfInteger czIndex;
    Mod4Value minusCzMod4;
    std::optional<int> matchedM;  // the unique parity-legal m, if any
  };
  PathClass plain;
  PathClass looped;
  int loopIndexTwice = 0;  // index contribution of the inserted loop (times 2)
  bool uniqueMatchPerClass = false;
  bool loopShiftConsistent = false;  // matched m shifts by the loop index mod 4
};

NuVsCzReport nuVsCz(const GeneratingFunction& W, int m, std::uint64_t pathSynthesisSeed,
                    SignConvention conv, const ToleranceContext& tol = {});

/// Randomized free-pair factorization: Phi = Phi_W Phi_W' with both factors
/// free and eigenvalue-1-free. Bounded retries, seeded.
struct FreeFactorization {
  GeneratingFunction W;
  GeneratingFunction Wp;
};
FreeFactorization factorFree(const SymplecticMatrix& phi, std::uint64_t seed,
                             const ToleranceContext& tol = {}, int maxTrials = 200);

}  // namespace czindex
