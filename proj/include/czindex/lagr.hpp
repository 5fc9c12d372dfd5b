#pragma once

#include "czindex/forms.hpp"
#include "czindex/sympl.hpp"
#include "czindex/types.hpp"

namespace czindex {

/// Lagrangian subspace represented by a 2n x n frame. Frames are canonicalized
/// to orthonormal columns on construction (inputs that are already orthonormal
/// are kept bit-for-bit, so callers control the visible basis); subspace
/// equality is projector distance, removing representative-dependence from
/// downstream tolerances.
class LagrangianFrame {
 public:
  LagrangianFrame(const SymplecticSpace& space, const Matrix& columns,
                  double isotropyTolerance = 1e-9, double rankTolerance = 1e-9);

  const SymplecticSpace& space() const { return space_; }
  const Matrix& columns() const { return columns_; }
  int n() const { return static_cast<int>(columns_.cols()); }

  Matrix projector() const { return columns_ * columns_.transpose(); }

  /// || P_this - P_other ||_2; zero iff equal subspaces.
  double subspaceDistance(const LagrangianFrame& other) const;

  /// Same subspace with the frame transported by a linear map of the ambient
  /// space (columns = map * columns, re-canonicalized).
  LagrangianFrame mappedBy(const Matrix& map) const;

 private:
  SymplecticSpace space_;
  Matrix columns_;
};

struct IsotropyCheck {
  bool lagrangian = false;
  double isotropyDefect = 0.0;
  double smallestSingularValue = 0.0;
};

IsotropyCheck isLagrangian(const SymplecticSpace& space, const Matrix& columns,
                           double isotropyTolerance = 1e-9,
                           double rankTolerance = 1e-9);

struct TransversalityResult {
  bool transverse = false;
  /// Smallest singular value of [L | L'].
  double margin = 0.0;
};

TransversalityResult transverse(const LagrangianFrame& a, const LagrangianFrame& b,
                                double threshold = 1e-9);

/// Chart value phi_{L0,L1}(L): the symmetric form omega(T., .) on L0, where L
/// is the graph of T: L0 -> L1. Expressed in the basis given by L0's visible
/// columns; changing the L0 frame by G maps the form by G^T (.) G, so
/// comparisons across charts must share the base frame object.
struct ChartValue {
  LagrangianFrame base;
  SymmetricForm form;
};

ChartValue chart(const LagrangianFrame& L0, const LagrangianFrame& L1,
                 const LagrangianFrame& L, double margin = 1e-12);

/// sign(chart(L,L1,L0)) + sign(chart(L0,L1,L)); zero in every convention by
/// the chart swap identity.
int chartSwapDefect(const LagrangianFrame& L0, const LagrangianFrame& L1,
                    const LagrangianFrame& L, SignConvention conv = SignConvention::Paper,
                    const ToleranceContext& tol = {});

/// Triple index: the signature (in the chosen convention) of the quadratic
/// form (z0,z1,z2) -> omega(z0,z1) + omega(z1,z2) + omega(z2,z0) on the direct
/// sum of the three subspaces. Totally antisymmetric and Sp-invariant.
int kashiwara(const LagrangianFrame& L0, const LagrangianFrame& L1,
              const LagrangianFrame& L2, SignConvention conv,
              const ToleranceContext& tol = {});

/// Same index computed as the signature of z' -> omega(Pr_{L along L''} z', z')
/// on L'. Requires L transverse to L''. Vanishes whenever
/// L = (L cap L') + (L cap L'').
int kashiwaraViaProjection(const LagrangianFrame& L, const LagrangianFrame& Lp,
                           const LagrangianFrame& Lpp, SignConvention conv,
                           const ToleranceContext& tol = {});

/// dim(A cap B) via the rank of the concatenated frame.
int intersectionDim(const LagrangianFrame& a, const LagrangianFrame& b,
                    double rankTolerance = 1e-8);

/// Canonical frames.
LagrangianFrame verticalLagrangian(const SymplecticSpace& space);    // {0} + R^n*
LagrangianFrame horizontalLagrangian(const SymplecticSpace& space);  // R^n + {0}
LagrangianFrame diagonalLagrangian(const SymplecticSpace& doubled);  // (v, v)/sqrt2
LagrangianFrame antidiagonalLagrangian(const SymplecticSpace& doubled);  // (v,-v)/sqrt2

/// Random Lagrangian via a seeded unitary frame in adapted coordinates.
LagrangianFrame randomLagrangian(const SymplecticSpace& space, Rng& rng);

}  // namespace czindex
