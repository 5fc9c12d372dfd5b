#pragma once

#include <cstdint>
#include <vector>

#include "czindex/forms.hpp"
#include "czindex/types.hpp"

namespace czindex {

class LagrangianFrame;

/// A real symplectic vector space presented as R^{2n} with a compatible
/// complex structure J: omega(u, v) = <Ju, v>, J^2 = -Id, J orthogonal.
///
/// standard(n) carries the block structure [[0, -I], [I, 0]]. doubled(inner)
/// is inner + inner with the difference form omega (+) (-omega), whose J is
/// diag(J_inner, -J_inner). adaptedBasis() returns an orthogonal O with
/// O^T J O = J_standard, used to move frames into coordinates where J acts as
/// multiplication by i.
class SymplecticSpace {
 public:
  static SymplecticSpace standard(int n);
  static SymplecticSpace doubled(const SymplecticSpace& inner);

  int halfDim() const { return n_; }
  int dim() const { return 2 * n_; }
  const Matrix& J() const { return J_; }
  const Matrix& adaptedBasis() const { return adapted_; }

  double omega(const Vector& u, const Vector& v) const { return (J_ * u).dot(v); }

  /// Gram matrix of omega on two column frames: Om(i,j) = omega(a_i, b_j).
  Matrix omegaGram(const Matrix& A, const Matrix& B) const {
    return A.transpose() * J_.transpose() * B;
  }

  bool sameAs(const SymplecticSpace& other) const {
    return n_ == other.n_ && (J_ - other.J_).norm() <= 1e-12;
  }

 private:
  SymplecticSpace(int n, Matrix J, Matrix adapted);
  int n_;
  Matrix J_;
  Matrix adapted_;
};

/// 2n x 2n real matrix preserving omega within tolerance.
class SymplecticMatrix {
 public:
  SymplecticMatrix(const SymplecticSpace& space, const Matrix& entries,
                   double toleranceScale = 1e-9);

  const SymplecticSpace& space() const { return space_; }
  const Matrix& entries() const { return entries_; }

  SymplecticMatrix operator*(const SymplecticMatrix& o) const;

 private:
  SymplecticSpace space_;
  Matrix entries_;
};

struct SymplecticCheck {
  bool symplectic = false;
  double defect = 0.0;
};

/// || M^T J M - J || against the tolerance 1e-9 * ||M||^2.
SymplecticCheck isSymplectic(const Matrix& m, const SymplecticSpace& space,
                             double toleranceScale = 1e-9);

/// Group inverse -J Phi^T J; exact up to one matrix product.
SymplecticMatrix inverse(const SymplecticMatrix& phi);

/// Time-stamped sample sequence of symplectic matrices, strictly increasing
/// in t. Continuity is a sampling-adequacy contract: consecutive samples are
/// expected to differ by < 0.1 in operator norm, and the index machinery
/// raises ChartGapError on paths too coarse to evaluate safely.
class SymplecticPath {
 public:
  struct Sample {
    double t;
    Matrix matrix;
  };

  SymplecticPath(const SymplecticSpace& space, std::vector<Sample> samples,
                 double toleranceScale = 1e-9);

  const SymplecticSpace& space() const { return space_; }
  const std::vector<Sample>& samples() const { return samples_; }
  int size() const { return static_cast<int>(samples_.size()); }
  const Matrix& front() const { return samples_.front().matrix; }
  const Matrix& back() const { return samples_.back().matrix; }

  /// Largest operator-norm difference between consecutive samples.
  double maxStep() const;

  /// Pointwise inverse path on the same grid.
  SymplecticPath pointwiseInverse() const;

  /// Path with each sample raised to the k-th power (on this grid).
  SymplecticPath pointwisePower(int k) const;

  /// Pointwise product with another path on the union grid; samples missing
  /// from either grid are filled by geodesic interpolation.
  SymplecticPath pointwiseProduct(const SymplecticPath& other) const;

  /// Matrix at time t by local geodesic interpolation Phi_k exp(s log(Phi_k^-1 Phi_{k+1})).
  Matrix at(double t) const;

  /// Inserts `factor - 1` interpolated samples into every segment.
  SymplecticPath refined(int factor) const;

  /// This path followed by `next`, whose first sample must match this path's
  /// last; `next` is time-shifted to start where this path ends.
  SymplecticPath concatenated(const SymplecticPath& next) const;

 private:
  SymplecticSpace space_;
  std::vector<Sample> samples_;
};

/// Graph of Phi as a Lagrangian of the doubled space: columns (e_i, Phi e_i),
/// orthonormalized.
LagrangianFrame graphLagrangian(const SymplecticMatrix& phi);
LagrangianFrame graphLagrangian(const SymplecticSpace& doubled, const Matrix& phi);

/// The swap (v1, v2) -> (v2, v1) on the doubled space; an anti-symplectomorphism
/// with swap^2 = Id that carries Gr(S) to Gr(S^-1).
Matrix swapMap(const SymplecticSpace& doubled);

/// Product of `steps` factors exp(J S_i) with random symmetric ||S_i|| <= 1.
/// Deterministic per seed; steps = 0 yields the identity.
SymplecticMatrix randomSymplectic(std::uint64_t seed, int n, int steps);
Matrix randomSymplecticIn(const SymplecticSpace& space, Rng& rng, int steps,
                          double normBound = 1.0);

/// Samples of t -> prod_i exp(t J S_i) on [0, 1], refined until consecutive
/// samples differ by < 0.1 in operator norm. Starts at the identity.
SymplecticPath randomSymplecticPath(std::uint64_t seed, int n, int samples);

/// Path from Id to `target` through the polar decomposition: geodesic in the
/// unitary factor, exp-linear in the positive factor. Stays in the group
/// exactly (up to roundoff) and reaches any endpoint.
SymplecticPath polarInterpolationPath(const SymplecticMatrix& target, int samples);

/// Loop t -> exp(2 pi t J)^turns on [0, 1]; a generator of pi_1 of the group.
SymplecticPath unitaryLoopPath(const SymplecticSpace& space, int turns, int samples);

/// exp(J S) for this space's J; symplectic for any symmetric S.
Matrix hamiltonianExp(const SymplecticSpace& space, const Matrix& symmetric);

}  // namespace czindex
