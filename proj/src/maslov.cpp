#include "czindex/maslov.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <complex>

namespace czindex {

namespace {

ComplexMatrix frameToUnitary(const LagrangianFrame& frame) {
  const SymplecticSpace& space = frame.space();
  const int n = space.halfDim();
  Matrix std = space.adaptedBasis().transpose() * frame.columns();
  ComplexMatrix Z(n, n);
  Z.real() = std.topRows(n);
  Z.imag() = std.bottomRows(n);
  return Z;
}

LagrangianFrame unitaryToFrame(const SymplecticSpace& space, const ComplexMatrix& Z) {
  const int n = space.halfDim();
  Matrix cols(2 * n, n);
  cols.topRows(n) = Z.real();
  cols.bottomRows(n) = Z.imag();
  return LagrangianFrame(space, space.adaptedBasis() * cols);
}

ComplexMatrix unitaryLog(const ComplexMatrix& W) {
  Eigen::ComplexEigenSolver<ComplexMatrix> ces(W);
  const int n = static_cast<int>(W.rows());
  ComplexMatrix D = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    D(i, i) = std::complex<double>(0.0, std::arg(ces.eigenvalues()(i)));
  ComplexMatrix A = ces.eigenvectors() * D * ces.eigenvectors().inverse();
  A = 0.5 * (A - A.adjoint().eval());
  if ((A.exp() - W).norm() > 1e-8 * (1.0 + W.norm()))
    throw PathSynthesisError("unitary logarithm failed to reproduce the endpoint");
  return A;
}

}  // namespace

LagrangianPath::LagrangianPath(const SymplecticSpace& space, std::vector<Sample> samples)
    : space_(space), samples_(std::move(samples)) {
  if (samples_.size() < 2) throw DimensionMismatch("path needs at least 2 samples");
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (!space_.sameAs(samples_[i].frame.space()))
      throw DimensionMismatch("path sample in a different space");
    if (i > 0 && samples_[i].t <= samples_[i - 1].t)
      throw DimensionMismatch("path times must be strictly increasing");
  }
}

double LagrangianPath::maxStep() const {
  double worst = 0.0;
  for (std::size_t i = 1; i < samples_.size(); ++i)
    worst = std::max(worst, samples_[i].frame.subspaceDistance(samples_[i - 1].frame));
  return worst;
}

LagrangianPath LagrangianPath::mappedBy(const Matrix& map) const {
  std::vector<Sample> out;
  out.reserve(samples_.size());
  for (const auto& s : samples_) out.push_back({s.t, s.frame.mappedBy(map)});
  return LagrangianPath(space_, std::move(out));
}

LagrangianPath LagrangianPath::reversed() const {
  std::vector<Sample> out;
  out.reserve(samples_.size());
  double t0 = samples_.front().t, t1 = samples_.back().t;
  for (auto it = samples_.rbegin(); it != samples_.rend(); ++it)
    out.push_back({t0 + (t1 - it->t), it->frame});
  return LagrangianPath(space_, std::move(out));
}

LagrangianPath LagrangianPath::concatenated(const LagrangianPath& next) const {
  if (!space_.sameAs(next.space_)) throw DimensionMismatch("spaces differ");
  if (samples_.back().frame.subspaceDistance(next.samples_.front().frame) > 1e-8)
    throw DimensionMismatch("concatenation endpoints do not match");
  std::vector<Sample> out = samples_;
  double shift = samples_.back().t - next.samples_.front().t;
  for (std::size_t i = 1; i < next.samples_.size(); ++i)
    out.push_back({next.samples_[i].t + shift, next.samples_[i].frame});
  return LagrangianPath(space_, std::move(out));
}

namespace {

std::vector<LagrangianFrame> auxiliaryCandidates(const LagrangianFrame& L0,
                                                 const MaslovOptions& opts) {
  const SymplecticSpace& space = L0.space();
  std::vector<LagrangianFrame> out;
  Matrix companion = space.J() * L0.columns();  // always transverse to L0
  out.emplace_back(space, companion);
  for (int k = 1; k < opts.thetaGridSize; ++k) {
    double theta = M_PI * static_cast<double>(k) / opts.thetaGridSize;
    Matrix rot = hamiltonianExp(space, theta * Matrix::Identity(space.dim(), space.dim()));
    out.emplace_back(space, rot * companion);
    out.emplace_back(space, rot * L0.columns());
  }
  Rng rng(opts.auxiliarySeed);
  for (int k = 0; k < opts.randomCandidates; ++k) {
    Matrix push = randomSymplecticIn(space, rng, 2);
    out.emplace_back(space, push * companion);
  }
  return out;
}

}  // namespace

HalfInteger maslovIndex(const LagrangianPath& path, const LagrangianFrame& L0,
                        SignConvention conv, const ToleranceContext& tol,
                        const MaslovOptions& opts) {
  if (!path.space().sameAs(L0.space()))
    throw DimensionMismatch("path and reference Lagrangian live in different spaces");
  if (path.maxStep() > opts.maxSampleStep)
    throw ChartGapError(
        "consecutive path samples are too far apart (step " +
        std::to_string(path.maxStep()) + "); refine the sampling of the path");

  const auto& samples = path.samples();
  const int last = static_cast<int>(samples.size()) - 1;

  auto candidates = auxiliaryCandidates(L0, opts);
  std::vector<double> marginToL0(candidates.size());
  for (std::size_t c = 0; c < candidates.size(); ++c)
    marginToL0[c] = transverse(candidates[c], L0).margin;

  auto sampleMargin = [&](std::size_t c, int i) {
    return transverse(candidates[c], samples[i].frame).margin;
  };

  // Margins must dominate the local step so a transversality crossing cannot
  // slip between two accepted samples.
  std::vector<double> step(samples.size(), 0.0);
  for (int i = 1; i <= last; ++i)
    step[i] = samples[i].frame.subspaceDistance(samples[i - 1].frame);
  auto required = [&](int j) {  // requirement for the pair (j, j+1)
    double r = opts.marginSafety * step[j + 1];
    return r > opts.chartMargin ? r : opts.chartMargin;
  };

  std::int64_t twice = 0;
  int i = 0;
  while (i < last) {
    // Pick the auxiliary with the best worst-case margin over the pair
    // (i, i+1); grow the window while the margin survives.
    std::size_t best = 0;
    double bestMargin = -1.0;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      double m = std::min({marginToL0[c], sampleMargin(c, i), sampleMargin(c, i + 1)});
      if (m > bestMargin) {
        bestMargin = m;
        best = c;
      }
    }
    if (bestMargin < required(i))
      throw ChartGapError(
          "no auxiliary Lagrangian covers consecutive samples with margin " +
          std::to_string(required(i)) + " near sample " + std::to_string(i) +
          "; refine the sampling of the path");
    int j = i + 1;
    while (j + 1 <= last && sampleMargin(best, j + 1) >= required(j)) ++j;
    const LagrangianFrame& aux = candidates[best];
    int signEnd = signature(chart(L0, aux, samples[j].frame).form, conv, tol);
    int signBegin = signature(chart(L0, aux, samples[i].frame).form, conv, tol);
    twice += signEnd - signBegin;
    i = j;
  }
  return HalfInteger{twice};
}

LagrangianPath synthesizeLagrangianPath(const LagrangianFrame& from,
                                        const LagrangianFrame& to, int samples) {
  const SymplecticSpace& space = from.space();
  if (!space.sameAs(to.space())) throw DimensionMismatch("spaces differ");
  ComplexMatrix Zs = frameToUnitary(from);
  ComplexMatrix Ze = frameToUnitary(to);
  ComplexMatrix A = unitaryLog(Ze * Zs.adjoint());
  if (samples < 2) samples = 2;
  int count = samples;
  for (;;) {
    std::vector<LagrangianPath::Sample> pts;
    pts.reserve(count);
    for (int k = 0; k < count; ++k) {
      double t = static_cast<double>(k) / (count - 1);
      if (k == 0) {
        pts.push_back({t, from});
      } else if (k == count - 1) {
        pts.push_back({t, to});
      } else {
        pts.push_back({t, unitaryToFrame(space, (t * A).exp() * Zs)});
      }
    }
    LagrangianPath path(space, std::move(pts));
    if (path.maxStep() < 0.05 || count > 8193) return path;
    count = 2 * count - 1;
  }
}

namespace {

HalfInteger hormanderAlongPath(const LagrangianPath& gamma, const LagrangianFrame& L0,
                               const LagrangianFrame& L1, SignConvention conv,
                               const ToleranceContext& tol, const MaslovOptions& opts) {
  return maslovIndex(gamma, L1, conv, tol, opts) - maslovIndex(gamma, L0, conv, tol, opts);
}

}  // namespace

HalfInteger hormanderByDefinition(const LagrangianFrame& L0, const LagrangianFrame& L1,
                                  const LagrangianFrame& L0p, const LagrangianFrame& L1p,
                                  SignConvention conv, const ToleranceContext& tol,
                                  std::uint64_t seed, const MaslovOptions& opts) {
  Rng rng(seed);
  std::string lastFailure;
  for (int attempt = 0; attempt < 6; ++attempt) {
    try {
      int samples = 65 << std::min(attempt, 3);
      LagrangianPath direct = synthesizeLagrangianPath(L0p, L1p, samples);
      HalfInteger v1 = hormanderAlongPath(direct, L0, L1, conv, tol, opts);
      Rng sub = rng.fork(attempt);
      LagrangianFrame mid = randomLagrangian(L0.space(), sub);
      LagrangianPath viaMid = synthesizeLagrangianPath(L0p, mid, samples)
                                  .concatenated(synthesizeLagrangianPath(mid, L1p, samples));
      HalfInteger v2 = hormanderAlongPath(viaMid, L0, L1, conv, tol, opts);
      if (v1 == v2) return v1;
      lastFailure = "independent connecting paths disagree (" + v1.str() + " vs " + v2.str() + ")";
    } catch (const ChartGapError& e) {
      lastFailure = e.what();
    } catch (const PathSynthesisError& e) {
      lastFailure = e.what();
    }
  }
  throw PathSynthesisError("no adequate connecting path found: " + lastFailure);
}

HalfInteger hormanderByKashiwara(const LagrangianFrame& L0, const LagrangianFrame& L1,
                                 const LagrangianFrame& L0p, const LagrangianFrame& L1p,
                                 SignConvention conv, const ToleranceContext& tol) {
  int a = kashiwara(L1, L0p, L1p, conv, tol);
  int b = kashiwara(L0, L0p, L1p, conv, tol);
  return HalfInteger{kEpsilonTauRoute * static_cast<std::int64_t>(a - b)};
}

HalfInteger hormanderClosedForm(const LagrangianFrame& L0, const LagrangianFrame& L,
                                const LagrangianFrame& Lp, const LagrangianFrame& L1aux,
                                SignConvention conv, const ToleranceContext& tol) {
  ChartValue cL = chart(L1aux, L0, L);
  ChartValue cLp = chart(L1aux, L0, Lp);
  int s = signatureOf(cL.form.entries() - cLp.form.entries(), conv, tol);
  return HalfInteger{kEpsilonClosedForm * static_cast<std::int64_t>(s)};
}

namespace {

int signOf(HalfInteger definitional, HalfInteger raw) {
  if (raw.twice == 0 || definitional.twice == 0)
    throw CalibrationAmbiguous("calibration vector degenerated to zero");
  if (raw.abs() == definitional.abs())
    return definitional.twice * raw.twice > 0 ? +1 : -1;
  throw CalibrationAmbiguous("calibration vector magnitudes differ (" + definitional.str() +
                             " vs " + raw.str() + ")");
}

}  // namespace

CalibrationReport calibrate(SignConvention conv, const ToleranceContext& tol,
                            std::uint64_t seed, bool forceDegenerate) {
  auto inner = SymplecticSpace::standard(1);
  auto space = SymplecticSpace::doubled(inner);
  Matrix rotPlus = hamiltonianExp(inner, (M_PI / 2) * Matrix::Identity(2, 2));
  Matrix rotMinus = hamiltonianExp(inner, (-M_PI / 2) * Matrix::Identity(2, 2));
  LagrangianFrame delta = diagonalLagrangian(space);
  LagrangianFrame antidelta = antidiagonalLagrangian(space);
  LagrangianFrame grMinus = graphLagrangian(space, rotMinus);
  LagrangianFrame grPlus = forceDegenerate ? delta : graphLagrangian(space, rotPlus);

  CalibrationReport report;
  report.convention = conv;
  report.definitional = hormanderByDefinition(delta, grMinus, delta, grPlus, conv, tol, seed);
  if (report.definitional.abs().twice != 2)
    throw CalibrationAmbiguous("calibration vector magnitude is " +
                               report.definitional.str() + ", expected 1");

  // Raw (sign-free) values of each closed-form route on the same vector.
  ChartValue cL = chart(antidelta, delta, grMinus);
  ChartValue cLp = chart(antidelta, delta, grPlus);
  report.rawClosedForm =
      HalfInteger{signatureOf(cL.form.entries() - cLp.form.entries(), conv, tol)};

  int a = kashiwara(grMinus, delta, grPlus, conv, tol);
  int b = kashiwara(delta, delta, grPlus, conv, tol);
  report.rawTauRoute = HalfInteger{static_cast<std::int64_t>(a - b)};

  // Generalized-Cayley bracket with psi = -Id: C_psi(R(theta)) = 2 tan(theta/2) Id.
  Matrix I2 = Matrix::Identity(2, 2);
  auto cPsi = [&](const Matrix& phi) {
    Matrix C = inner.J() * (-I2 - I2) * (phi + I2).inverse() * (phi - I2);
    return Matrix(0.5 * (C + C.transpose()));
  };
  Matrix C1 = cPsi(rotMinus);
  Matrix C2 = cPsi(rotPlus);
  report.rawGraphBracket = HalfInteger{static_cast<std::int64_t>(
      signatureOf(C2 - C1, conv, tol) - signatureOf(C2, conv, tol) +
      signatureOf(C1, conv, tol))};

  // Classical-transform sum for the same endpoints (phi1 = R(pi/2) inverse).
  auto classicalM = [&](const Matrix& phi) {
    Matrix M = 0.5 * inner.J() * (I2 + phi) * (I2 - phi).inverse();
    return Matrix(0.5 * (M + M.transpose()));
  };
  report.rawCayleySum = HalfInteger{
      static_cast<std::int64_t>(signatureOf(classicalM(rotPlus) + classicalM(rotPlus), conv, tol))};

  report.epsilonClosedForm = signOf(report.definitional, report.rawClosedForm);
  report.epsilonTauRoute = signOf(report.definitional, report.rawTauRoute);
  report.epsilonGraphBracket = signOf(report.definitional, report.rawGraphBracket);
  report.epsilonCayleySum = signOf(report.definitional, report.rawCayleySum);

  if (report.epsilonClosedForm != kEpsilonClosedForm ||
      report.epsilonTauRoute != kEpsilonTauRoute ||
      report.epsilonGraphBracket != kEpsilonGraphBracket ||
      report.epsilonCayleySum != kEpsilonCayleySum)
    throw CalibrationAmbiguous("derived calibration signs disagree with the recorded constants");
  return report;
}

}  // namespace czindex
