#include "czindex/cayley.hpp"

#include <cmath>
#include <string>

namespace czindex {

namespace {

// Products are formed with one linear solve; large asymmetry is diagnosed
// rather than silently symmetrized.
SymmetricForm symmetrizeChecked(const Matrix& raw, const char* what) {
  double defect = (raw - raw.transpose()).norm();
  if (defect > 1e-8 * (1.0 + raw.norm()))
    throw DegenerateInput(std::string(what) + " is not symmetric (defect " +
                          std::to_string(defect) + ")");
  return SymmetricForm(0.5 * (raw + raw.transpose()));
}

}  // namespace

MembershipResult inSp0(const SymplecticMatrix& phi, const ToleranceContext& tol) {
  int d = phi.space().dim();
  Matrix gap = phi.entries() - Matrix::Identity(d, d);
  double margin = smallestSingularValue(gap);
  return {margin > tol.zeroThreshold(spectralNorm(gap), d), margin};
}

MembershipResult inSpPsi(const SymplecticMatrix& phi, const SymplecticMatrix& psi,
                         const ToleranceContext& tol) {
  if (!phi.space().sameAs(psi.space())) throw DimensionMismatch("spaces differ");
  Matrix gap = phi.entries() - psi.entries();
  double margin = smallestSingularValue(gap);
  return {margin > tol.zeroThreshold(spectralNorm(gap), phi.space().dim()), margin};
}

CayleyValue cayley(const SymplecticMatrix& phi, const ToleranceContext& tol) {
  auto membership = inSp0(phi, tol);
  if (!membership.member)
    throw EigenvalueOne("transform needs Id - Phi invertible (margin " +
                        std::to_string(membership.margin) + ")");
  int d = phi.space().dim();
  Matrix I = Matrix::Identity(d, d);
  Matrix M = 0.5 * phi.space().J() * (I + phi.entries()) *
             (I - phi.entries()).fullPivLu().solve(I);
  return CayleyValue{symmetrizeChecked(M, "classical transform"),
                     CayleyValue::SourceKind::Classical, std::nullopt};
}

CayleyValue psiCayley(const SymplecticMatrix& psi, const SymplecticMatrix& phi,
                      const ToleranceContext& tol) {
  if (!phi.space().sameAs(psi.space())) throw DimensionMismatch("spaces differ");
  auto psiOk = inSp0(psi, tol);
  if (!psiOk.member)
    throw PsiNotInSp0("psi has eigenvalue 1 (margin " + std::to_string(psiOk.margin) + ")");
  auto phiOk = inSpPsi(phi, psi, tol);
  if (!phiOk.member)
    throw PhiNotInSpPsi("Phi - psi is singular (margin " + std::to_string(phiOk.margin) + ")");
  int d = phi.space().dim();
  Matrix I = Matrix::Identity(d, d);
  Matrix C = phi.space().J() * (psi.entries() - I) *
             (phi.entries() - psi.entries()).fullPivLu().solve(Matrix(phi.entries() - I));
  return CayleyValue{symmetrizeChecked(C, "generalized transform"),
                     CayleyValue::SourceKind::Psi, psi};
}

}  // namespace czindex
