#pragma once

#include <cstdint>
#include <vector>

#include "czindex/cayley.hpp"
#include "czindex/half_integer.hpp"
#include "czindex/maslov.hpp"
#include "czindex/sympl.hpp"

namespace czindex {

/// Graph path t -> Gr(Phi(t)) in the doubled space.
LagrangianPath graphPath(const SymplecticPath& path);

/// Conley-Zehnder index: the diagonal-Maslov index of the graph path in the
/// doubled space. Additive under concatenation, invariant under fixed-endpoint
/// refinement, and negated by pointwise inversion.
HalfInteger czIndex(const SymplecticPath& path, SignConvention conv,
                    const ToleranceContext& tol = {}, const MaslovOptions& opts = {});

/// czIndex(pointwise inverse) + czIndex(path); identically zero.
HalfInteger czInverseDefect(const SymplecticPath& path, SignConvention conv,
                            const ToleranceContext& tol = {});

enum class ShiftSide { Left, Right };

struct ShiftedCzResult {
  HalfInteger direct;      // index of the shifted path (requested side)
  HalfInteger otherSide;   // index with the shift on the opposite side
  HalfInteger base;        // index of the unshifted path
  HalfInteger hormander;   // q(Delta, Gr(psi*^-1); Gr(Phi(a)), Gr(Phi(b)))
  HalfInteger predicted;   // base + hormander
};

/// Left/right constant shifts change the index by a Hoermander term between
/// the endpoint graphs; both sides give the same value.
ShiftedCzResult shiftedCz(const SymplecticMatrix& psiStar, const SymplecticPath& path,
                          ShiftSide side, SignConvention conv,
                          const ToleranceContext& tol = {}, std::uint64_t seed = 0x5117);

struct ProductCzResult {
  HalfInteger direct;  // index of the pointwise product path
  HalfInteger i1;
  HalfInteger i2;
  HalfInteger q1;  // q(Delta, Gr(Phi2(0)^-1); Gr(Phi1(0)), Gr(Phi1(1)))
  HalfInteger q2;  // q(Delta, Gr(Phi1(1)^-1); Gr(Phi2(0)), Gr(Phi2(1)))
  HalfInteger decomposed() const { return i1 + i2 + q1 + q2; }
  bool exact() const { return direct == decomposed(); }
};

/// Product decomposition with definitional Hoermander terms; holds exactly in
/// every convention, no calibration involved.
ProductCzResult productCz(const SymplecticPath& p1, const SymplecticPath& p2,
                          SignConvention conv, const ToleranceContext& tol = {},
                          std::uint64_t seed = 0x9a0d);

struct ProductNondegenerateResult {
  HalfInteger direct;         // index of Phi1 * Phi2
  HalfInteger directSwapped;  // index of Phi2 * Phi1 (equal by the formula)
  HalfInteger i1;
  HalfInteger i2;
  int cayleySumSignature = 0;  // sign(M_{Phi1(1)} + M_{Phi2(1)}) in the convention
  HalfInteger predicted;       // i1 + i2 + epsilonCayleySum * sig/2
};

/// Closed-form product correction through the classical transform. Both paths
/// must start at the identity with nondegenerate endpoints (no eigenvalue 1).
ProductNondegenerateResult productCzNondegenerate(const SymplecticPath& p1,
                                                  const SymplecticPath& p2,
                                                  SignConvention conv,
                                                  const ToleranceContext& tol = {});

struct ProductPsiResult {
  HalfInteger direct;
  HalfInteger i1;
  HalfInteger i2;
  /// Three-signature bracket at (Phi1(1)^-1, Phi2(1)), already carrying the
  /// calibrated sign; the prediction is i1 + i2 + correction.
  HalfInteger correction;
  HalfInteger predicted;
  /// The bracket evaluated verbatim at (Phi1(1), Phi2(1)), logged for the
  /// record; not used in the prediction.
  HalfInteger displayedBracket;
  /// When both transforms are invertible, the inverse-difference shortcut is
  /// evaluated too; it must equal the bracket.
  bool shortcutEvaluated = false;
  bool shortcutAgrees = true;
};

/// Generalized product correction: q(Delta, Gr(Phi1(1)^-1); Delta, Gr(Phi2(1)))
/// through the psi-Cayley three-signature bracket. psi must avoid eigenvalue 1
/// and both Phi1(1)^-1, Phi2(1) must lie in its domain.
ProductPsiResult productCzPsi(const SymplecticPath& p1, const SymplecticPath& p2,
                              const SymplecticMatrix& psi, SignConvention conv,
                              const ToleranceContext& tol = {});

/// The bracket route for q(Delta, Gr(phi1); Delta, Gr(phi2)) on its own:
/// epsilonGraphBracket/2 * [sign(C(phi2)-C(phi1)) - sign(C(phi2)) + sign(C(phi1))].
HalfInteger hormanderViaGraphBracket(const SymplecticMatrix& phi1,
                                     const SymplecticMatrix& phi2,
                                     const SymplecticMatrix& psi, SignConvention conv,
                                     const ToleranceContext& tol = {});

struct IterateEntry {
  int k = 0;
  HalfInteger index;            // index of the k-th pointwise power
  HalfInteger perStepHormander; // i_k - i_{k-1} - i_1 (|.| <= n)
  std::int64_t deviationTwice = 0;  // | |i_k| - k |i_1| | (times 2)
  double halfBound = 0.0;           // n (k - 1) / 2
  double fullBound = 0.0;           // n (k - 1)
  bool halfBoundViolated = false;
  bool fullBoundViolated = false;
};

/// Indices of the pointwise powers Phi^k for 1 <= k <= N with deviation
/// bounds. The n(k-1) bound is the acceptance bound; violations of the
/// tighter n(k-1)/2 bound are flagged, not failed.
std::vector<IterateEntry> iterateCz(const SymplecticPath& path, int N,
                                    SignConvention conv, const ToleranceContext& tol = {});

/// Seeded random search for psi with det(psi - Id) and det(endpoint^j - psi)
/// bounded away from zero for all 1 <= j <= N.
SymplecticMatrix findAdmissiblePsi(const SymplecticMatrix& endpoint, int N,
                                   std::uint64_t seed, double margin = 1e-6,
                                   int maxTrials = 10000);

}  // namespace czindex
