#include "czindex/sympl.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>

#include "czindex/lagr.hpp"

namespace czindex {

namespace {

Matrix standardJ(int n) {
  Matrix J = Matrix::Zero(2 * n, 2 * n);
  J.topRightCorner(n, n) = -Matrix::Identity(n, n);
  J.bottomLeftCorner(n, n) = Matrix::Identity(n, n);
  return J;
}

}  // namespace

SymplecticSpace::SymplecticSpace(int n, Matrix J, Matrix adapted)
    : n_(n), J_(std::move(J)), adapted_(std::move(adapted)) {}

SymplecticSpace SymplecticSpace::standard(int n) {
  if (n < 1) throw DimensionMismatch("half-dimension must be positive");
  return SymplecticSpace(n, standardJ(n), Matrix::Identity(2 * n, 2 * n));
}

SymplecticSpace SymplecticSpace::doubled(const SymplecticSpace& inner) {
  int d = inner.dim();
  Matrix J = Matrix::Zero(2 * d, 2 * d);
  J.topLeftCorner(d, d) = inner.J();
  J.bottomRightCorner(d, d) = -inner.J();
  // Adapted basis [F | JF] built from the diagonal Lagrangian (v, v)/sqrt2;
  // any orthonormal Lagrangian frame works.
  Matrix F(2 * d, d);
  F.topRows(d) = Matrix::Identity(d, d) / std::sqrt(2.0);
  F.bottomRows(d) = Matrix::Identity(d, d) / std::sqrt(2.0);
  Matrix O(2 * d, 2 * d);
  O.leftCols(d) = F;
  O.rightCols(d) = J * F;
  return SymplecticSpace(d, std::move(J), std::move(O));
}

SymplecticCheck isSymplectic(const Matrix& m, const SymplecticSpace& space,
                             double toleranceScale) {
  if (!m.allFinite()) throw NonFiniteEntry("matrix has NaN or infinite entries");
  if (m.rows() != space.dim() || m.cols() != space.dim())
    throw DimensionMismatch("matrix size does not match the space");
  double defect = (m.transpose() * space.J() * m - space.J()).norm();
  double scale = m.norm();
  return {defect <= toleranceScale * scale * scale, defect};
}

SymplecticMatrix::SymplecticMatrix(const SymplecticSpace& space, const Matrix& entries,
                                   double toleranceScale)
    : space_(space), entries_(entries) {
  auto check = isSymplectic(entries, space, toleranceScale);
  if (!check.symplectic)
    throw DegenerateInput("matrix is not symplectic (defect " +
                          std::to_string(check.defect) + ")");
}

SymplecticMatrix SymplecticMatrix::operator*(const SymplecticMatrix& o) const {
  if (!space_.sameAs(o.space_)) throw DimensionMismatch("spaces differ");
  return SymplecticMatrix(space_, entries_ * o.entries_);
}

SymplecticMatrix inverse(const SymplecticMatrix& phi) {
  const Matrix& J = phi.space().J();
  return SymplecticMatrix(phi.space(), -J * phi.entries().transpose() * J);
}

SymplecticPath::SymplecticPath(const SymplecticSpace& space, std::vector<Sample> samples,
                               double toleranceScale)
    : space_(space), samples_(std::move(samples)) {
  if (samples_.size() < 2) throw DimensionMismatch("path needs at least 2 samples");
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    auto check = isSymplectic(samples_[i].matrix, space_, toleranceScale);
    if (!check.symplectic)
      throw DegenerateInput("path sample " + std::to_string(i) +
                            " is not symplectic (defect " + std::to_string(check.defect) + ")");
    if (i > 0 && samples_[i].t <= samples_[i - 1].t)
      throw DimensionMismatch("path times must be strictly increasing");
  }
}

double SymplecticPath::maxStep() const {
  double worst = 0.0;
  for (std::size_t i = 1; i < samples_.size(); ++i)
    worst = std::max(worst, spectralNorm(samples_[i].matrix - samples_[i - 1].matrix));
  return worst;
}

SymplecticPath SymplecticPath::pointwiseInverse() const {
  std::vector<Sample> out;
  out.reserve(samples_.size());
  const Matrix& J = space_.J();
  for (const auto& s : samples_)
    out.push_back({s.t, -J * s.matrix.transpose() * J});
  return SymplecticPath(space_, std::move(out));
}

SymplecticPath SymplecticPath::pointwisePower(int k) const {
  if (k < 1) throw DimensionMismatch("power must be >= 1");
  std::vector<Sample> out;
  out.reserve(samples_.size());
  for (const auto& s : samples_) {
    Matrix m = Matrix::Identity(space_.dim(), space_.dim());
    for (int j = 0; j < k; ++j) m = m * s.matrix;
    out.push_back({s.t, std::move(m)});
  }
  return SymplecticPath(space_, std::move(out));
}

Matrix SymplecticPath::at(double t) const {
  if (t <= samples_.front().t) return samples_.front().matrix;
  if (t >= samples_.back().t) return samples_.back().matrix;
  std::size_t hi = 1;
  while (samples_[hi].t < t) ++hi;
  const Sample& a = samples_[hi - 1];
  const Sample& b = samples_[hi];
  if (std::abs(a.t - t) < 1e-14 * (std::abs(t) + 1.0)) return a.matrix;
  if (std::abs(b.t - t) < 1e-14 * (std::abs(t) + 1.0)) return b.matrix;
  double s = (t - a.t) / (b.t - a.t);
  const Matrix& J = space_.J();
  Matrix step = -J * a.matrix.transpose() * J * b.matrix;  // a^-1 b, in-group
  Matrix logStep = step.log();
  return a.matrix * (s * logStep).exp();
}

SymplecticPath SymplecticPath::pointwiseProduct(const SymplecticPath& other) const {
  if (!space_.sameAs(other.space_)) throw DimensionMismatch("spaces differ");
  std::vector<double> grid;
  for (const auto& s : samples_) grid.push_back(s.t);
  for (const auto& s : other.samples_) grid.push_back(s.t);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-12; }),
             grid.end());
  std::vector<Sample> out;
  out.reserve(grid.size());
  for (double t : grid) out.push_back({t, at(t) * other.at(t)});
  return SymplecticPath(space_, std::move(out));
}

SymplecticPath SymplecticPath::refined(int factor) const {
  if (factor < 2) return *this;
  std::vector<Sample> out;
  out.push_back(samples_.front());
  for (std::size_t i = 1; i < samples_.size(); ++i) {
    double t0 = samples_[i - 1].t, t1 = samples_[i].t;
    for (int j = 1; j < factor; ++j) {
      double t = t0 + (t1 - t0) * static_cast<double>(j) / factor;
      out.push_back({t, at(t)});
    }
    out.push_back(samples_[i]);
  }
  return SymplecticPath(space_, std::move(out));
}

SymplecticPath SymplecticPath::concatenated(const SymplecticPath& next) const {
  if (!space_.sameAs(next.space_)) throw DimensionMismatch("spaces differ");
  if ((next.samples_.front().matrix - samples_.back().matrix).norm() > 1e-8)
    throw DimensionMismatch("concatenation endpoints do not match");
  std::vector<Sample> out = samples_;
  double shift = samples_.back().t - next.samples_.front().t;
  for (std::size_t i = 1; i < next.samples_.size(); ++i)
    out.push_back({next.samples_[i].t + shift, next.samples_[i].matrix});
  return SymplecticPath(space_, std::move(out));
}

LagrangianFrame graphLagrangian(const SymplecticSpace& doubled, const Matrix& phi) {
  int d = static_cast<int>(phi.rows());
  if (doubled.dim() != 2 * d) throw DimensionMismatch("doubled space does not match");
  Matrix cols(2 * d, d);
  cols.topRows(d) = Matrix::Identity(d, d);
  cols.bottomRows(d) = phi;
  return LagrangianFrame(doubled, cols);
}

LagrangianFrame graphLagrangian(const SymplecticMatrix& phi) {
  return graphLagrangian(SymplecticSpace::doubled(phi.space()), phi.entries());
}

Matrix swapMap(const SymplecticSpace& doubled) {
  int d = doubled.halfDim();  // dimension of each summand
  Matrix A = Matrix::Zero(2 * d, 2 * d);
  A.topRightCorner(d, d) = Matrix::Identity(d, d);
  A.bottomLeftCorner(d, d) = Matrix::Identity(d, d);
  return A;
}

Matrix hamiltonianExp(const SymplecticSpace& space, const Matrix& symmetric) {
  return Matrix((space.J() * symmetric).exp());
}

Matrix randomSymplecticIn(const SymplecticSpace& space, Rng& rng, int steps,
                          double normBound) {
  int d = space.dim();
  Matrix out = Matrix::Identity(d, d);
  for (int k = 0; k < steps; ++k) {
    Matrix S(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) {
        double v = rng.uniformSym();
        S(i, j) = v;
        S(j, i) = v;
      }
    double norm = spectralNorm(S);
    if (norm > normBound) S *= normBound / norm;
    out = hamiltonianExp(space, S) * out;
  }
  return out;
}

SymplecticMatrix randomSymplectic(std::uint64_t seed, int n, int steps) {
  auto space = SymplecticSpace::standard(n);
  Rng rng(seed);
  return SymplecticMatrix(space, randomSymplecticIn(space, rng, steps));
}

SymplecticPath randomSymplecticPath(std::uint64_t seed, int n, int samples) {
  if (samples < 2) samples = 2;
  auto space = SymplecticSpace::standard(n);
  Rng rng(seed);
  const int factors = 3;
  std::vector<Matrix> S(factors);
  int d = space.dim();
  for (int k = 0; k < factors; ++k) {
    S[k] = Matrix(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) {
        double v = rng.uniformSym();
        S[k](i, j) = v;
        S[k](j, i) = v;
      }
    double norm = spectralNorm(S[k]);
    if (norm > 1.0) S[k] *= 1.0 / norm;
  }
  auto evaluate = [&](double t) {
    Matrix out = Matrix::Identity(d, d);
    for (int k = 0; k < factors; ++k) out = hamiltonianExp(space, t * S[k]) * out;
    return out;
  };
  int count = samples;
  for (;;) {
    std::vector<SymplecticPath::Sample> pts;
    pts.reserve(count);
    for (int i = 0; i < count; ++i) {
      double t = static_cast<double>(i) / (count - 1);
      pts.push_back({t, evaluate(t)});
    }
    SymplecticPath path(space, std::move(pts));
    if (path.maxStep() < 0.1 || count > 4096) return path;
    count = 2 * count - 1;
  }
}

SymplecticPath polarInterpolationPath(const SymplecticMatrix& target, int samples) {
  const SymplecticSpace& space = target.space();
  int d = space.dim();
  const Matrix& M = target.entries();
  // Polar factors: M = U P with U in the unitary subgroup, P positive
  // symplectic. Both factors stay symplectic, so the whole path does.
  Eigen::SelfAdjointEigenSolver<Matrix> es(M.transpose() * M);
  Vector lam = es.eigenvalues();
  Matrix V = es.eigenvectors();
  Matrix logP = V * lam.array().log().matrix().asDiagonal() * V.transpose() * 0.5;
  Matrix Pinvsqrt =
      V * lam.array().pow(-0.5).matrix().asDiagonal() * V.transpose();
  Matrix U = M * Pinvsqrt;

  // The unitary factor commutes with J; move to adapted coordinates and take
  // the complex logarithm eigenvalue-wise.
  const Matrix& O = space.adaptedBasis();
  Matrix Ustd = O.transpose() * U * O;
  int n = space.halfDim();
  ComplexMatrix Uc(n, n);
  Uc.real() = Ustd.topLeftCorner(n, n);
  Uc.imag() = Ustd.bottomLeftCorner(n, n);
  Eigen::ComplexEigenSolver<ComplexMatrix> ces(Uc);
  ComplexMatrix D = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    std::complex<double> ev = ces.eigenvalues()(i);
    D(i, i) = std::complex<double>(0.0, std::arg(ev));
  }
  ComplexMatrix logUc = ces.eigenvectors() * D * ces.eigenvectors().inverse();
  logUc = 0.5 * (logUc - logUc.adjoint().eval());  // anti-Hermitian part

  if ((logUc.exp() - Uc).norm() > 1e-8 * (1.0 + Uc.norm()))
    throw PathSynthesisError("unitary logarithm failed to reproduce the factor");

  auto unitaryAt = [&](double t) {
    ComplexMatrix Ut = (t * logUc).exp();
    Matrix real(d, d);
    real.topLeftCorner(n, n) = Ut.real();
    real.topRightCorner(n, n) = -Ut.imag();
    real.bottomLeftCorner(n, n) = Ut.imag();
    real.bottomRightCorner(n, n) = Ut.real();
    return Matrix(O * real * O.transpose());
  };

  if (samples < 2) samples = 2;
  int count = samples;
  for (;;) {
    std::vector<SymplecticPath::Sample> pts;
    pts.reserve(count);
    for (int i = 0; i < count; ++i) {
      double t = static_cast<double>(i) / (count - 1);
      Matrix Pt = (t * logP).exp();
      pts.push_back({t, unitaryAt(t) * Pt});
    }
    // Endpoint is met exactly up to roundoff; snap it.
    pts.back().matrix = M;
    SymplecticPath path(space, std::move(pts));
    if (path.maxStep() < 0.1 || count > 4096) return path;
    count = 2 * count - 1;
  }
}

SymplecticPath unitaryLoopPath(const SymplecticSpace& space, int turns, int samples) {
  if (turns == 0) throw DimensionMismatch("loop needs turns != 0");
  int d = space.dim();
  int count = std::max(samples, 2);
  for (;;) {
    std::vector<SymplecticPath::Sample> pts;
    pts.reserve(count);
    for (int i = 0; i < count; ++i) {
      double t = static_cast<double>(i) / (count - 1);
      Matrix gen = 2.0 * M_PI * turns * t * Matrix::Identity(d, d);
      pts.push_back({t, hamiltonianExp(space, gen)});
    }
    SymplecticPath path(space, std::move(pts));
    if (path.maxStep() < 0.1 || count > 8192) return path;
    count = 2 * count - 1;
  }
}

}  // namespace czindex
