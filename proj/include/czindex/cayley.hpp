#pragma once

#include <optional>

#include "czindex/forms.hpp"
#include "czindex/sympl.hpp"

namespace czindex {

/// Symmetric matrix produced by a Cayley-type transform of a symplectic map.
struct CayleyValue {
  enum class SourceKind { Classical, Psi };

  SymmetricForm matrix;
  SourceKind sourceKind;
  std::optional<SymplecticMatrix> psi;
};

/// Classical transform M_Phi = 1/2 J (Id + Phi)(Id - Phi)^{-1}. Requires
/// Id - Phi invertible with margin; satisfies M_{Phi^{-1}} = -M_Phi.
CayleyValue cayley(const SymplecticMatrix& phi, const ToleranceContext& tol = {});

/// Generalized transform C_psi(Phi) = J (psi - Id)(Phi - psi)^{-1}(Phi - Id)
/// for psi with no eigenvalue 1 and Phi - psi invertible. Its kernel equals
/// Ker(Phi - Id), and it coincides with the chart of Gr(Phi) taken at
/// (Delta, Gr(psi)) under v -> (v, v):  chart = C_psi(Phi) / 2 in the
/// orthonormal diagonal frame.
CayleyValue psiCayley(const SymplecticMatrix& psi, const SymplecticMatrix& phi,
                      const ToleranceContext& tol = {});

/// Membership margin for Phi - psi invertibility.
struct MembershipResult {
  bool member = false;
  double margin = 0.0;
};

MembershipResult inSpPsi(const SymplecticMatrix& phi, const SymplecticMatrix& psi,
                         const ToleranceContext& tol = {});

/// Margin of det(phi - Id) != 0, i.e. membership in the eigenvalue-1-free set.
MembershipResult inSp0(const SymplecticMatrix& phi, const ToleranceContext& tol = {});

}  // namespace czindex
