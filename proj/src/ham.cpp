#include "czindex/ham.hpp"

#include <cmath>
#include <utility>

namespace czindex {

LinearHamiltonianSystem::LinearHamiltonianSystem(int n, double period, HessianFn hessian,
                                                 std::string name)
    : n_(n), T_(period), hessian_(std::move(hessian)), name_(std::move(name)) {
  if (n_ < 1) throw DimensionMismatch("half-dimension must be positive");
  if (T_ <= 0.0) throw DimensionMismatch("period must be positive");
  // Spot-check symmetry and T-periodicity on a coarse grid.
  for (int k = 0; k <= 16; ++k) {
    double t = T_ * k / 16.0;
    Matrix S = hessian_(t);
    if (S.rows() != 2 * n_ || S.cols() != 2 * n_)
      throw DimensionMismatch("coefficient matrix has the wrong size");
    if (!S.allFinite()) throw NonFiniteEntry("coefficient matrix is not finite");
    double scale = 1.0 + S.norm();
    if ((S - S.transpose()).norm() > 1e-9 * scale)
      throw DegenerateInput("coefficient matrix is not symmetric at t=" + std::to_string(t));
    if ((hessian_(t + T_) - S).norm() > 1e-8 * scale)
      throw DegenerateInput("coefficient matrix is not T-periodic at t=" + std::to_string(t));
  }
}

LinearHamiltonianSystem LinearHamiltonianSystem::constant(const Matrix& S, double period,
                                                          std::string name) {
  Matrix copy = S;
  int n = static_cast<int>(S.rows()) / 2;
  return LinearHamiltonianSystem(
      n, period, [copy](double) { return copy; }, std::move(name));
}

LinearHamiltonianSystem LinearHamiltonianSystem::harmonicOscillator() {
  return constant(Matrix::Identity(2, 2), M_PI / 2, "harmonic-oscillator");
}

LinearHamiltonianSystem LinearHamiltonianSystem::anisotropicOscillator(double w1, double w2,
                                                                       double period) {
  Matrix S = Matrix::Zero(4, 4);
  S(0, 0) = w1;
  S(1, 1) = w2;
  S(2, 2) = w1;
  S(3, 3) = w2;
  return constant(S, period, "anisotropic-oscillator");
}

LinearHamiltonianSystem LinearHamiltonianSystem::hyperbolicSaddle(double period) {
  Matrix S = Matrix::Zero(2, 2);
  S(0, 0) = 1.0;
  S(1, 1) = -1.0;
  return constant(S, period, "hyperbolic-saddle");
}

LinearHamiltonianSystem LinearHamiltonianSystem::kicked(double amplitude, double period) {
  return LinearHamiltonianSystem(
      1, period,
      [amplitude, period](double t) {
        Matrix S = Matrix::Identity(2, 2);
        double c = amplitude * std::cos(2.0 * M_PI * t / period);
        S(0, 0) += c;
        S(1, 1) -= c;
        return S;
      },
      "kicked-oscillator");
}

std::vector<LinearHamiltonianSystem> LinearHamiltonianSystem::catalog() {
  return {harmonicOscillator(), anisotropicOscillator(), hyperbolicSaddle(), kicked()};
}

FundamentalSolution integrateFundamental(const LinearHamiltonianSystem& system, int steps) {
  if (steps < 8) throw DimensionMismatch("integration needs at least 8 steps");
  auto space = SymplecticSpace::standard(system.n());
  const int d = space.dim();
  const double h = system.period() / steps;
  std::vector<SymplecticPath::Sample> samples;
  samples.reserve(steps + 1);
  Matrix phi = Matrix::Identity(d, d);
  samples.push_back({0.0, phi});
  for (int k = 0; k < steps; ++k) {
    double mid = (k + 0.5) * h;
    Matrix stepM = hamiltonianExp(space, h * system.hessianAt(mid));
    Matrix next = stepM * phi;
    if (spectralNorm(next - phi) > 0.1)
      throw StepTooLarge("step " + std::to_string(k) +
                         " moves more than 0.1 in norm; increase the step count");
    double defect = (next.transpose() * space.J() * next - space.J()).norm();
    double scale = next.norm();
    if (defect > 1e-10 * scale * scale)
      throw DegenerateInput("integration lost symplecticity at step " + std::to_string(k));
    phi = std::move(next);
    samples.push_back({(k + 1) * h, phi});
  }
  return FundamentalSolution{system, SymplecticPath(space, std::move(samples), 1e-10)};
}

SymplecticPath extendPeriodic(const FundamentalSolution& sol, int N) {
  if (N < 1) throw DimensionMismatch("N must be >= 1");
  const SymplecticPath& base = sol.path;
  const double T = sol.system.period();
  Matrix monodromy = base.back();
  std::vector<SymplecticPath::Sample> samples;
  samples.reserve(static_cast<std::size_t>(base.size()) * N);
  Matrix power = Matrix::Identity(monodromy.rows(), monodromy.cols());
  for (int k = 0; k < N; ++k) {
    for (std::size_t i = (k == 0 ? 0 : 1); i < base.samples().size(); ++i) {
      const auto& s = base.samples()[i];
      samples.push_back({s.t + k * T, s.matrix * power});
    }
    power = monodromy * power;
  }
  return SymplecticPath(base.space(), std::move(samples));
}

std::vector<IterateReportRow> iterateIndexReport(const LinearHamiltonianSystem& system,
                                                 int N, SignConvention conv, int steps,
                                                 const ToleranceContext& tol) {
  FundamentalSolution sol = integrateFundamental(system, steps);
  const int n = system.n();
  auto doubled = SymplecticSpace::doubled(sol.path.space());
  // L0 + L0 with L0 the vertical Lagrangian of the base space.
  Matrix vertPairCols = Matrix::Zero(4 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    vertPairCols(n + i, i) = 1.0;
    vertPairCols(3 * n + i, n + i) = 1.0;
  }
  LagrangianFrame vertPair(doubled, vertPairCols);

  std::vector<IterateReportRow> out;
  out.reserve(N);
  HalfInteger first{0};
  for (int k = 1; k <= N; ++k) {
    SymplecticPath extended = extendPeriodic(sol, k);
    IterateReportRow row;
    row.k = k;
    row.index = czIndex(extended, conv, tol);
    double step = sol.path.maxStep();
    int factor = std::max(1, static_cast<int>(std::ceil(step * k / 0.08)));
    row.pointwisePower = czIndex(sol.path.refined(factor).pointwisePower(k), conv, tol);
    row.muVertical = maslovIndex(graphPath(extended), vertPair, conv, tol);
    if (k == 1) first = row.index;
    row.deviationTwice =
        std::llabs(std::llabs(row.index.twice) - k * std::llabs(first.twice));
    row.halfBound = 0.5 * n * (k - 1);
    row.fullBound = static_cast<double>(n) * (k - 1);
    row.halfBoundViolated = static_cast<double>(row.deviationTwice) / 2.0 > row.halfBound + 1e-12;
    row.fullBoundViolated = static_cast<double>(row.deviationTwice) / 2.0 > row.fullBound + 1e-12;
    row.muAboveSevenHalvesN = row.muVertical.asDouble() > 3.5 * n;
    out.push_back(row);
  }
  return out;
}

}  // namespace czindex
