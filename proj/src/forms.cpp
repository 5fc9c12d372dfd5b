#include "czindex/forms.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace czindex {

namespace {

void requireFinite(const Matrix& m) {
  if (!m.allFinite()) throw NonFiniteEntry("matrix has NaN or infinite entries");
}

}  // namespace

SymmetricForm::SymmetricForm(const Matrix& entries, double symmetryTolerance) {
  requireFinite(entries);
  if (entries.rows() != entries.cols())
    throw DimensionMismatch("symmetric form must be square");
  double scale = entries.cwiseAbs().maxCoeff();
  double defect = (entries - entries.transpose()).cwiseAbs().maxCoeff();
  if (defect > symmetryTolerance * (scale > 1.0 ? scale : 1.0))
    throw DegenerateInput("matrix asymmetry " + std::to_string(defect) +
                          " exceeds symmetry tolerance");
  entries_ = 0.5 * (entries + entries.transpose());
}

SymmetricForm SymmetricForm::inverse(const ToleranceContext& tol) const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(entries_);
  const Vector& ev = es.eigenvalues();
  double thr = tol.zeroThreshold(ev.cwiseAbs().maxCoeff(), dim());
  Vector inv(ev.size());
  for (int i = 0; i < ev.size(); ++i) {
    if (std::abs(ev(i)) <= thr)
      throw DegenerateInput("cannot invert a degenerate symmetric form");
    inv(i) = 1.0 / ev(i);
  }
  Matrix out = es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
  return SymmetricForm(0.5 * (out + out.transpose()));
}

SymmetricForm SymmetricForm::operator+(const SymmetricForm& o) const {
  if (dim() != o.dim()) throw DimensionMismatch("form dimensions differ");
  return SymmetricForm(entries_ + o.entries_);
}

SymmetricForm SymmetricForm::operator-(const SymmetricForm& o) const {
  if (dim() != o.dim()) throw DimensionMismatch("form dimensions differ");
  return SymmetricForm(entries_ - o.entries_);
}

InertiaTriple inertiaOf(const Matrix& symmetric, const ToleranceContext& tol) {
  requireFinite(symmetric);
  if (symmetric.rows() != symmetric.cols())
    throw DimensionMismatch("inertia needs a square matrix");
  const int n = static_cast<int>(symmetric.rows());
  if (n == 0) return {};
  Matrix sym = 0.5 * (symmetric + symmetric.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  const Vector& ev = es.eigenvalues();
  double thr = tol.zeroThreshold(ev.cwiseAbs().maxCoeff(), n);
  InertiaTriple out;
  for (int i = 0; i < n; ++i) {
    if (ev(i) < -thr)
      ++out.nMinus;
    else if (ev(i) > thr)
      ++out.nPlus;
    else
      ++out.nZero;
  }
  return out;
}

InertiaTriple inertia(const SymmetricForm& form, const ToleranceContext& tol) {
  return inertiaOf(form.entries(), tol);
}

int signature(const SymmetricForm& form, SignConvention conv, const ToleranceContext& tol) {
  return inertia(form, tol).signature(conv);
}

int signatureOf(const Matrix& symmetric, SignConvention conv, const ToleranceContext& tol) {
  return inertiaOf(symmetric, tol).signature(conv);
}

int inverseDifferenceIdentityDefect(const SymmetricForm& U, const SymmetricForm& Z,
                                    SignConvention conv, const ToleranceContext& tol) {
  if (U.dim() != Z.dim()) throw DimensionMismatch("form dimensions differ");
  InertiaTriple iu = inertia(U, tol);
  InertiaTriple iz = inertia(Z, tol);
  InertiaTriple idiff = inertiaOf(U.entries() - Z.entries(), tol);
  if (!iu.nondegenerate() || !iz.nondegenerate() || !idiff.nondegenerate())
    throw DegenerateInput("inverse-difference identity requires U, Z, U-Z nondegenerate");
  int lhs = iz.signature(conv) - iu.signature(conv);
  int rhs = signatureOf(Z.inverse(tol).entries() - U.inverse(tol).entries(), conv, tol) -
            idiff.signature(conv);
  return lhs - rhs;
}

}  // namespace czindex
