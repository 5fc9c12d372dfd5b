#include "czindex/lagr.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>

namespace czindex {

namespace {

Matrix orthonormalized(const Matrix& cols) {
  Eigen::HouseholderQR<Matrix> qr(cols);
  Matrix Q = qr.householderQ() * Matrix::Identity(cols.rows(), cols.cols());
  Matrix R = qr.matrixQR().topRows(cols.cols());
  for (int j = 0; j < cols.cols(); ++j)
    if (R(j, j) < 0) Q.col(j) = -Q.col(j);
  return Q;
}

}  // namespace

IsotropyCheck isLagrangian(const SymplecticSpace& space, const Matrix& columns,
                           double isotropyTolerance, double rankTolerance) {
  if (!columns.allFinite()) throw NonFiniteEntry("frame has NaN or infinite entries");
  if (columns.rows() != space.dim() || columns.cols() != space.halfDim())
    throw DimensionMismatch("Lagrangian frame must be 2n x n for the space");
  IsotropyCheck out;
  out.smallestSingularValue = smallestSingularValue(columns);
  double scale = spectralNorm(columns);
  out.isotropyDefect = (columns.transpose() * space.J() * columns).norm();
  out.lagrangian = out.smallestSingularValue > rankTolerance * (scale > 1.0 ? scale : 1.0) &&
                   out.isotropyDefect <= isotropyTolerance * scale * scale;
  return out;
}

LagrangianFrame::LagrangianFrame(const SymplecticSpace& space, const Matrix& columns,
                                 double isotropyTolerance, double rankTolerance)
    : space_(space) {
  auto check = isLagrangian(space, columns, isotropyTolerance, rankTolerance);
  if (check.smallestSingularValue <= rankTolerance)
    throw NotLagrangian("frame is rank deficient (smallest singular value " +
                        std::to_string(check.smallestSingularValue) + ")");
  // Keep caller-visible orthonormal frames untouched; canonicalize the rest.
  if ((columns.transpose() * columns - Matrix::Identity(columns.cols(), columns.cols()))
          .norm() <= 1e-10) {
    columns_ = columns;
  } else {
    columns_ = orthonormalized(columns);
  }
  auto canonical = isLagrangian(space, columns_, isotropyTolerance, rankTolerance);
  if (!canonical.lagrangian)
    throw NotLagrangian("frame is not isotropic (defect " +
                        std::to_string(canonical.isotropyDefect) + ")");
}

double LagrangianFrame::subspaceDistance(const LagrangianFrame& other) const {
  if (!space_.sameAs(other.space_)) throw DimensionMismatch("spaces differ");
  return spectralNorm(projector() - other.projector());
}

LagrangianFrame LagrangianFrame::mappedBy(const Matrix& map) const {
  return LagrangianFrame(space_, map * columns_);
}

TransversalityResult transverse(const LagrangianFrame& a, const LagrangianFrame& b,
                                double threshold) {
  if (!a.space().sameAs(b.space())) throw DimensionMismatch("spaces differ");
  Matrix joint(a.space().dim(), 2 * a.n());
  joint.leftCols(a.n()) = a.columns();
  joint.rightCols(b.n()) = b.columns();
  double margin = smallestSingularValue(joint);
  return {margin > threshold, margin};
}

ChartValue chart(const LagrangianFrame& L0, const LagrangianFrame& L1,
                 const LagrangianFrame& L, double margin) {
  const SymplecticSpace& space = L0.space();
  if (!space.sameAs(L1.space()) || !space.sameAs(L.space()))
    throw DimensionMismatch("chart arguments live in different spaces");
  const int n = L0.n();
  Matrix basis(space.dim(), 2 * n);
  basis.leftCols(n) = L0.columns();
  basis.rightCols(n) = L1.columns();
  if (smallestSingularValue(basis) <= margin)
    throw NotTransverse("chart base and complement are not transverse");
  // Decompose the columns of L against L0 + L1, then normalize so the L0
  // component is the visible base frame: T maps L0 into L1 along L.
  Matrix AB = basis.fullPivLu().solve(L.columns());
  Matrix A = AB.topRows(n);
  Matrix B = AB.bottomRows(n);
  if (std::abs(A.fullPivLu().determinant()) <= margin ||
      smallestSingularValue(A) <= margin)
    throw NotTransverse("argument is not transverse to the chart complement");
  Matrix T = B * A.inverse();
  Matrix form = T.transpose() * space.omegaGram(L1.columns(), L0.columns());
  double asymmetry = (form - form.transpose()).norm();
  if (asymmetry > 1e-6 * (1.0 + form.norm()))
    throw NotLagrangian("chart value is not symmetric; inputs are not Lagrangian enough");
  return ChartValue{L0, SymmetricForm(0.5 * (form + form.transpose()))};
}

int chartSwapDefect(const LagrangianFrame& L0, const LagrangianFrame& L1,
                    const LagrangianFrame& L, SignConvention conv,
                    const ToleranceContext& tol) {
  int a = signature(chart(L, L1, L0).form, conv, tol);
  int b = signature(chart(L0, L1, L).form, conv, tol);
  return a + b;
}

int kashiwara(const LagrangianFrame& L0, const LagrangianFrame& L1,
              const LagrangianFrame& L2, SignConvention conv, const ToleranceContext& tol) {
  const SymplecticSpace& space = L0.space();
  if (!space.sameAs(L1.space()) || !space.sameAs(L2.space()))
    throw DimensionMismatch("triple index arguments live in different spaces");
  const int n = space.halfDim();
  Matrix M = Matrix::Zero(3 * n, 3 * n);
  Matrix O01 = space.omegaGram(L0.columns(), L1.columns());
  Matrix O12 = space.omegaGram(L1.columns(), L2.columns());
  Matrix O20 = space.omegaGram(L2.columns(), L0.columns());
  M.block(0, n, n, n) = 0.5 * O01;
  M.block(n, 0, n, n) = 0.5 * O01.transpose();
  M.block(n, 2 * n, n, n) = 0.5 * O12;
  M.block(2 * n, n, n, n) = 0.5 * O12.transpose();
  M.block(2 * n, 0, n, n) = 0.5 * O20;
  M.block(0, 2 * n, n, n) = 0.5 * O20.transpose();
  return signatureOf(M, conv, tol);
}

int kashiwaraViaProjection(const LagrangianFrame& L, const LagrangianFrame& Lp,
                           const LagrangianFrame& Lpp, SignConvention conv,
                           const ToleranceContext& tol) {
  const SymplecticSpace& space = L.space();
  if (!space.sameAs(Lp.space()) || !space.sameAs(Lpp.space()))
    throw DimensionMismatch("triple index arguments live in different spaces");
  const int n = space.halfDim();
  Matrix basis(space.dim(), 2 * n);
  basis.leftCols(n) = L.columns();
  basis.rightCols(n) = Lpp.columns();
  if (smallestSingularValue(basis) <= 1e-9)
    throw NotTransverse("projection route needs L transverse to L''");
  auto lu = basis.fullPivLu();
  Matrix form = Matrix::Zero(n, n);
  Matrix coords = lu.solve(Lp.columns());    // columns: [a; b] with z' = L a + L'' b
  Matrix projected = L.columns() * coords.topRows(n);  // Pr_{L along L''} z'
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      form(i, j) = space.omega(projected.col(i), Lp.columns().col(j));
  Matrix sym = 0.5 * (form + form.transpose());
  return signatureOf(sym, conv, tol);
}

int intersectionDim(const LagrangianFrame& a, const LagrangianFrame& b,
                    double rankTolerance) {
  Matrix joint(a.space().dim(), a.n() + b.n());
  joint.leftCols(a.n()) = a.columns();
  joint.rightCols(b.n()) = b.columns();
  auto sv = joint.jacobiSvd().singularValues();
  double top = sv(0) > 1.0 ? sv(0) : 1.0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > rankTolerance * top) ++rank;
  return a.n() + b.n() - rank;
}

LagrangianFrame verticalLagrangian(const SymplecticSpace& space) {
  int n = space.halfDim();
  Matrix cols = Matrix::Zero(2 * n, n);
  cols.bottomRows(n) = Matrix::Identity(n, n);
  return LagrangianFrame(space, cols);
}

LagrangianFrame horizontalLagrangian(const SymplecticSpace& space) {
  int n = space.halfDim();
  Matrix cols = Matrix::Zero(2 * n, n);
  cols.topRows(n) = Matrix::Identity(n, n);
  return LagrangianFrame(space, cols);
}

LagrangianFrame diagonalLagrangian(const SymplecticSpace& doubled) {
  int d = doubled.halfDim();
  Matrix cols(2 * d, d);
  cols.topRows(d) = Matrix::Identity(d, d) / std::sqrt(2.0);
  cols.bottomRows(d) = Matrix::Identity(d, d) / std::sqrt(2.0);
  return LagrangianFrame(doubled, cols);
}

LagrangianFrame antidiagonalLagrangian(const SymplecticSpace& doubled) {
  int d = doubled.halfDim();
  Matrix cols(2 * d, d);
  cols.topRows(d) = Matrix::Identity(d, d) / std::sqrt(2.0);
  cols.bottomRows(d) = -Matrix::Identity(d, d) / std::sqrt(2.0);
  return LagrangianFrame(doubled, cols);
}

LagrangianFrame randomLagrangian(const SymplecticSpace& space, Rng& rng) {
  const int n = space.halfDim();
  // A random unitary frame in adapted coordinates is a uniform-ish Lagrangian.
  ComplexMatrix Z(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      Z(i, j) = std::complex<double>(rng.uniformSym(), rng.uniformSym());
  Eigen::HouseholderQR<ComplexMatrix> qr(Z);
  ComplexMatrix Q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  Matrix cols(2 * n, n);
  cols.topRows(n) = Q.real();
  cols.bottomRows(n) = Q.imag();
  return LagrangianFrame(space, space.adaptedBasis() * cols);
}

}  // namespace czindex
