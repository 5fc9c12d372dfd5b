#pragma once

#include <functional>
#include <string>
#include <vector>

#include "czindex/cz.hpp"
#include "czindex/sympl.hpp"

namespace czindex {

/// Linear Hamiltonian system v'(t) = J S(t) v(t) on the standard space, with
/// T-periodic symmetric coefficient S(t).
class LinearHamiltonianSystem {
 public:
  using HessianFn = std::function<Matrix(double)>;

  LinearHamiltonianSystem(int n, double period, HessianFn hessian,
                          std::string name = "system");

  int n() const { return n_; }
  double period() const { return T_; }
  const std::string& name() const { return name_; }
  Matrix hessianAt(double t) const { return hessian_(t); }

  static LinearHamiltonianSystem constant(const Matrix& S, double period,
                                          std::string name = "constant");

  /// S = Id on n = 1, T = pi/2: quarter rotation per period.
  static LinearHamiltonianSystem harmonicOscillator();
  /// Two decoupled modes with frequencies w1, w2 (n = 2).
  static LinearHamiltonianSystem anisotropicOscillator(double w1 = 1.0, double w2 = 2.0,
                                                       double period = 3.1);
  /// S = diag(1, -1) on n = 1: hyperbolic flow, no interior crossings.
  static LinearHamiltonianSystem hyperbolicSaddle(double period = 1.0);
  /// Time-periodic modulation around the harmonic oscillator.
  static LinearHamiltonianSystem kicked(double amplitude = 0.3, double period = 3.0);

  static std::vector<LinearHamiltonianSystem> catalog();

 private:
  int n_;
  double T_;
  HessianFn hessian_;
  std::string name_;
};

/// Fundamental solution Phi(0) = Id, Phi' = J S Phi as a sampled path on
/// [0, T]. Every sample passes the symplectic check at 1e-10 ||Phi||^2.
struct FundamentalSolution {
  LinearHamiltonianSystem system;
  SymplecticPath path;
};

/// Midpoint-frozen exponential stepping Phi <- exp(h J S(mid)) Phi;
/// second-order accurate and symplectic per step. Throws StepTooLarge when
/// consecutive samples violate the 0.1-norm sampling contract.
FundamentalSolution integrateFundamental(const LinearHamiltonianSystem& system, int steps);

/// Extension to [0, NT] by the group law Phi(t + kT) = Phi(t) Phi(T)^k.
SymplecticPath extendPeriodic(const FundamentalSolution& sol, int N);

struct IterateReportRow {
  int k = 0;
  HalfInteger index;            // index of the [0, kT] extension
  HalfInteger pointwisePower;   // index of the pointwise k-th power (equal)
  HalfInteger muVertical;       // L0-Maslov of the graph path, L0 = vert + vert
  std::int64_t deviationTwice = 0;
  double halfBound = 0.0;
  double fullBound = 0.0;
  bool halfBoundViolated = false;
  bool fullBoundViolated = false;
  bool muAboveSevenHalvesN = false;  // informational only
};

/// Index table of the iterates: extension index per k, checked against the
/// pointwise-power index, with deviation bounds.
std::vector<IterateReportRow> iterateIndexReport(const LinearHamiltonianSystem& system,
                                                 int N, SignConvention conv,
                                                 int steps = 512,
                                                 const ToleranceContext& tol = {});

}  // namespace czindex
