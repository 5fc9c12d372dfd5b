#pragma once

#include <limits>

#include "czindex/errors.hpp"
#include "czindex/types.hpp"

namespace czindex {

/// Sign convention for the signature of a symmetric form.
///
/// Paper:    sign(B) = n-(B) - n+(B)
/// Standard: sign(B) = n+(B) - n-(B)
///
/// Every index operation takes the convention explicitly; the two outputs are
/// exact negatives of each other on every input.
enum class SignConvention { Paper, Standard };

inline const char* conventionName(SignConvention c) {
  return c == SignConvention::Paper ? "paper" : "standard";
}

/// Thresholding policy for deciding which eigenvalues count as zero.
struct ToleranceContext {
  double rankRelative = 64.0 * std::numeric_limits<double>::epsilon();
  double rankAbsoluteFloor = 1e-12;

  double zeroThreshold(double spectralNorm, int dim) const {
    double rel = rankRelative * static_cast<double>(dim) * spectralNorm;
    return rel > rankAbsoluteFloor ? rel : rankAbsoluteFloor;
  }
};

/// Eigenvalue counts of a symmetric form: (negative, zero, positive).
struct InertiaTriple {
  int nMinus = 0;
  int nZero = 0;
  int nPlus = 0;

  int total() const { return nMinus + nZero + nPlus; }
  bool nondegenerate() const { return nZero == 0; }
  int signature(SignConvention conv) const {
    int s = nMinus - nPlus;
    return conv == SignConvention::Paper ? s : -s;
  }
  bool operator==(const InertiaTriple&) const = default;
};

/// Dense symmetric bilinear form. The stored matrix is the exact
/// symmetrization (A + A^T)/2 of the input; construction rejects non-finite
/// entries and asymmetry beyond the given tolerance.
class SymmetricForm {
 public:
  explicit SymmetricForm(const Matrix& entries, double symmetryTolerance = 1e-8);

  static SymmetricForm zero(int dim) { return SymmetricForm(Matrix::Zero(dim, dim)); }

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& entries() const { return entries_; }

  /// Symmetric inverse, reconstructed from the eigen-decomposition so the
  /// result is exactly symmetric. Throws DegenerateInput on singular forms.
  SymmetricForm inverse(const ToleranceContext& tol = {}) const;

  SymmetricForm operator+(const SymmetricForm& o) const;
  SymmetricForm operator-(const SymmetricForm& o) const;
  SymmetricForm operator-() const { return SymmetricForm(-entries_); }

 private:
  Matrix entries_;
};

/// Eigenvalue inertia of a symmetric matrix under the tolerance context.
InertiaTriple inertiaOf(const Matrix& symmetric, const ToleranceContext& tol = {});

InertiaTriple inertia(const SymmetricForm& form, const ToleranceContext& tol = {});

int signature(const SymmetricForm& form, SignConvention conv,
              const ToleranceContext& tol = {});

/// Signature of a raw symmetric matrix (symmetrized defensively).
int signatureOf(const Matrix& symmetric, SignConvention conv,
                const ToleranceContext& tol = {});

/// Defect of the identity
///   sign(Z) - sign(U) = sign(Z^-1 - U^-1) - sign(U - Z)
/// for nondegenerate U, Z, U-Z. Returns
///   [sign(Z) - sign(U)] - [sign(Z^-1 - U^-1) - sign(U - Z)],
/// which is zero whenever the preconditions hold. Throws DegenerateInput if
/// U, Z or U-Z has a zero eigenvalue under the tolerance.
int inverseDifferenceIdentityDefect(const SymmetricForm& U, const SymmetricForm& Z,
                                    SignConvention conv, const ToleranceContext& tol = {});

}  // namespace czindex
