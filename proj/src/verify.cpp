#include "czindex/verify.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <sstream>
#include <thread>

#include "czindex/cz.hpp"
#include "czindex/ham.hpp"
#include "czindex/maslov.hpp"
#include "czindex/meta.hpp"

namespace czindex {

namespace {

using TrialFn = std::function<std::optional<std::string>(Rng&, int)>;

InvariantResult runTrials(const std::string& name, std::uint64_t seed, int trials,
                          int threads, const TrialFn& fn) {
  InvariantResult result;
  result.name = name;
  result.trials = trials;
  std::vector<std::optional<std::string>> failures(trials);
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= trials) return;
      Rng rng = trialRng(seed, static_cast<std::uint64_t>(i));
      try {
        failures[i] = fn(rng, i);
      } catch (const std::exception& e) {
        failures[i] = std::string("exception: ") + e.what();
      }
    }
  };
  int workerCount = threads > 0 ? threads
                                : static_cast<int>(std::thread::hardware_concurrency());
  if (workerCount < 1) workerCount = 1;
  if (workerCount > trials) workerCount = trials;
  std::vector<std::thread> pool;
  pool.reserve(workerCount);
  for (int w = 0; w < workerCount; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (int i = 0; i < trials; ++i) {
    if (failures[i]) {
      ++result.failures;
      if (result.firstCounterexample.empty())
        result.firstCounterexample = "trial " + std::to_string(i) + ": " + *failures[i];
    }
  }
  return result;
}

Matrix randomSymmetric(Rng& rng, int dim, double scale = 1.0) {
  Matrix S(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      double v = scale * rng.uniformSym();
      S(i, j) = v;
      S(j, i) = v;
    }
  return S;
}

Matrix randomNondegenerateSymmetric(Rng& rng, int dim, double margin,
                                    const ToleranceContext& tol) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    Matrix S = randomSymmetric(rng, dim, 2.0);
    Eigen::SelfAdjointEigenSolver<Matrix> es(S, Eigen::EigenvaluesOnly);
    double thr = tol.zeroThreshold(es.eigenvalues().cwiseAbs().maxCoeff(), dim);
    if (es.eigenvalues().cwiseAbs().minCoeff() > margin * thr + 1e-3) return S;
  }
  throw Error("could not draw a nondegenerate symmetric matrix");
}

std::string matStr(const Matrix& m) {
  std::ostringstream out;
  out << m;
  std::string s = out.str();
  for (auto& c : s)
    if (c == '\n') c = ';';
  return s;
}

// ---------------------------------------------------------------------------
// forms
// ---------------------------------------------------------------------------

SuiteResult formsSuite(std::uint64_t seed, int trials, SignConvention conv,
                       const ToleranceContext& tol, int threads) {
  SuiteResult out;

  out.invariants.push_back(runTrials(
      "forms.inertia-congruence-invariance", seed ^ 0xf001, trials, threads,
      [&](Rng& rng, int) -> std::optional<std::string> {
        int n = 1 + static_cast<int>(rng.below(6));
        Matrix A = randomSymmetric(rng, n, 2.0);
        Matrix G;
        do {
          G = Matrix::NullaryExpr(n, n, [&](Eigen::Index, Eigen::Index) {
            return rng.uniformSym();
          });
        } while (smallestSingularValue(G) < 0.2);
        InertiaTriple a = inertiaOf(A, tol);
        InertiaTriple b = inertiaOf(G.transpose() * A * G, tol);
        if (a.nZero != b.nZero || a.nMinus != b.nMinus || a.nPlus != b.nPlus)
          return "inertia changed under congruence: A=" + matStr(A);
        return std::nullopt;
      }));

  out.invariants.push_back(runTrials(
      "forms.signature-negation", seed ^ 0xf002, trials, threads,
      [&](Rng& rng, int) -> std::optional<std::string> {
        int n = 1 + static_cast<int>(rng.below(6));
        Matrix A = randomSymmetric(rng, n, 2.0);
        for (auto c : {SignConvention::Paper, SignConvention::Standard})
          if (signatureOf(-A, c, tol) != -signatureOf(A, c, tol))
            return "sign(-A) != -sign(A): A=" + matStr(A);
        if (signatureOf(A, SignConvention::Paper, tol) !=
            -signatureOf(A, SignConvention::Standard, tol))
          return "conventions are not exact negatives: A=" + matStr(A);
        return std::nullopt;
      }));

  out.invariants.push_back(runTrials(
      "forms.inverse-difference-identity", seed ^ 0xf003, trials, threads,
      [&](Rng& rng, int) -> std::optional<std::string> {
        int n = 1 + static_cast<int>(rng.below(5));
        for (int attempt = 0; attempt < 100; ++attempt) {
          Matrix U = randomSymmetric(rng, n, 2.0);
          Matrix Z = randomSymmetric(rng, n, 2.0);
          auto margin = [&](const Matrix& M) {
            Eigen::SelfAdjointEigenSolver<Matrix> es(M, Eigen::EigenvaluesOnly);
            double thr = tol.zeroThreshold(es.eigenvalues().cwiseAbs().maxCoeff(), n);
            return es.eigenvalues().cwiseAbs().minCoeff() - 10.0 * thr;
          };
          if (margin(U) <= 0 || margin(Z) <= 0 || margin(U - Z) <= 0) continue;
          int defect = inverseDifferenceIdentityDefect(SymmetricForm(U), SymmetricForm(Z),
                                                       conv, tol);
          if (defect != 0)
            return "defect " + std::to_string(defect) + " for U=" + matStr(U) +
                   " Z=" + matStr(Z);
          return std::nullopt;
        }
        return "could not draw a margin-safe pair";
      }));

  out.invariants.push_back(runTrials(
      "forms.signature-difference-bound", seed ^ 0xf004, trials, threads,
      [&](Rng& rng, int) -> std::optional<std::string> {
        int n = 1 + static_cast<int>(rng.below(6));
        Matrix B1 = randomNondegenerateSymmetric(rng, n, 10.0, tol);
        Matrix B2 = randomNondegenerateSymmetric(rng, n, 10.0, tol);
        int v = std::abs(signatureOf(B2 - B1, conv, tol) - signatureOf(B2, conv, tol) -
                         signatureOf(B1, conv, tol));
        if (v > n)
          return "bound violated: |...| = " + std::to_string(v) + " > n = " +
                 std::to_string(n);
        return std::nullopt;
      }));

  return out;
}

// ---------------------------------------------------------------------------
// lagr
// ---------------------------------------------------------------------------

LagrangianFrame randomTransverseTo(const SymplecticSpace& space, Rng& rng,
                                   const std::vector<const LagrangianFrame*>& others,
                                   double margin = 0.1, int maxTries = 200) {
  for (int i = 0; i < maxTries; ++i) {
    LagrangianFrame cand = randomLagrangian(space, rng);
    bool ok = true;
    for (const auto* o : others)
      if (transverse(cand, *o).margin < margin) ok = false;
    if (ok) return cand;
  }
  throw Error("could not draw a transverse Lagrangian");
}

SuiteResult lagrSuite(std::uint64_t seed, int trials, SignConvention conv,
                      const ToleranceContext& tol, int threads) {
  SuiteResult out;

  out.invariants.push_back(runTrials(
      "lagr.kashiwara-antisymmetry", seed ^ 0x1a01, trials, threads,
      [&](Rng& rng, int) -> std::optional<std::string> {
        int n = 1 + static_cast<int>(rng.below(3));
        auto space = SymplecticSpace::standard(n);
        auto L0 = randomLagrangian(space, rng);
        auto L1 = randomLagrangian(space, rng);
        auto L2 = randomLagrangian(space, rng);
        int base = kashiwara(L0, L1, L2, conv, tol);
        if (kashiwara(L1, L0, L2, conv, tol) != -base ||
            kashiwara(L0, L2, L1, conv, tol) != -base ||
            kashiwara(L2, L1, L0, conv, tol) != -base)
          return "swap did not negate the index";
        return std::nullopt;
      }));

  out.invariants.push_back(runTrials(
      "lagr.kashiwara-symplectic-invariance", seed ^ 0x1a02, trials, threads,
      [&](Rng& rng, int) -> std::optional<std::string> {
        int n = 1 + static_cast<int>(rng.below(3));
        auto space = SymplecticSpace::standard(n);
        auto L0 = randomLagrangian(space, rng);
        auto L1 = randomLagrangian(space, rng);
        auto L2 = randomLagrangian(space, rng);
        Matrix phi = randomSymplecticIn(space, rng, 3);
        int a = kashiwara(L0, L1, L2, conv, tol);
        int b = kashiwara(L0.mappedBy(phi), L1.mappedBy(phi), L2.mappedBy(phi), conv, tol);
        if (a != b)
          return "not invariant: " + std::to_string(a) + " vs " + std::to_string(b);
        return std::nullopt;
      }));

  out.invariants.push_back(runTrials(
      "lagr.kashiwara-cocycle", seed ^ 0x1a03, trials, threads,
      [&](Rng& rng, int) -> std::optional<std::string> {
        int n = 1 + static_cast<int>(rng.below(3));
        auto space = SymplecticSpace::standard(n);
        auto L0 = randomLagrangian(space, rng);
        auto L1 = randomLagrangian(space, rng);
        auto L2 = randomLagrangian(space, rng);
        auto L3 = randomLagrangian(space, rng);
        int v = kashiwara(L1, L2, L3, conv, tol) - kashiwara(L0, L2, L3, conv, tol) +
                kashiwara(L0, L1, L3, conv, tol) - kashiwara(L0, L1, L2, conv, tol);
        if (v != 0) return "cocycle sum " + std::to_string(v);
        return std::nullopt;
      }));

  out.invariants.push_back(runTrials(
      "lagr.kashiwara-projection-agreement", seed ^ 0x1a04, trials, threads,
      [&](Rng& rng, int) -> std::optional<std::string> {
        int n = 1 + static_cast<int>(rng.below(3));
        auto space = SymplecticSpace::standard(n);
        auto L = randomLagrangian(space, rng);
        auto Lpp = randomTransverseTo(space, rng, {&L});
        auto Lp = randomLagrangian(space, rng);
        int a = kashiwara(L, Lp, Lpp, conv, tol);
        int b = kashiwaraViaProjection(L, Lp, Lpp, conv, tol);
        if (a != b)
          return "projection route " + std::to_string(b) + " != " + std::to_string(a);
        return std::nullopt;
      }));

  out.invariants.push_back(runTrials(
      "lagr.chart-swap-identity", seed ^ 0x1a05, trials, threads,
      [&](Rng& rng, int) -> std::optional<std::string> {
        int n = 1 + static_cast<int>(rng.below(3));
        auto space = SymplecticSpace::standard(n);
        auto L0 = randomLagrangian(space, rng);
        auto L1 = randomTransverseTo(space, rng, {&L0});
        auto L = randomTransverseTo(space, rng, {&L0, &L1});
        int defect = chartSwapDefect(L0, L1, L, conv, tol);
        if (defect != 0) return "swap defect " + std::to_string(defect);
        return std::nullopt;
      }));

  out.invariants.push_back(runTrials(
      "lagr.chart-base-change", seed ^ 0x1a06, trials, threads,
      [&](Rng& rng, int) -> std::optional<std::string> {
        int n = 1 + static_cast<int>(rng.below(3));
        auto space = SymplecticSpace::standard(n);
        auto L1 = randomLagrangian(space, rng);
        auto L0 = randomTransverseTo(space, rng, {&L1});
        auto L = randomTransverseTo(space, rng, {&L1, &L0});
        auto Lp = randomTransverseTo(space, rng, {&L1});
        int lhs = signature(chart(L, L1, Lp).form, conv, tol);
        Matrix diff = chart(L0, L1, Lp).form.entries() - chart(L0, L1, L).form.entries();
        int rhs = signatureOf(diff, conv, tol);
        if (lhs != rhs)
          return "base change: " + std::to_string(lhs) + " vs " + std::to_string(rhs);
        return std::nullopt;
      }));

  out.invariants.push_back(runTrials(
      "lagr.graph-chart-diagonal", seed ^ 0x1a07, trials, threads,
      [&](Rng& rng, int) -> std::optional<std::string> {
        int n = 1 + static_cast<int>(rng.below(3));
        auto inner = SymplecticSpace::standard(n);
        auto doubled = SymplecticSpace::doubled(inner);
        Matrix I = Matrix::Identity(2 * n, 2 * n);
        Matrix phi;
        do {
          phi = randomSymplecticIn(inner, rng, 3);
        } while (smallestSingularValue(I - phi) < 0.1 ||
                 smallestSingularValue(I + phi) < 0.1);
        auto delta = diagonalLagrangian(doubled);
        auto antidelta = antidiagonalLagrangian(doubled);
        auto gr = graphLagrangian(doubled, phi);
        // Base diagonal: generator (Id+Phi)^{-1}(Id-Phi); base antidiagonal:
        // twice the classical transform.
        Matrix H = (I + phi).fullPivLu().solve(Matrix(I - phi));
        Matrix expectDelta = inner.J() * H;
        expectDelta = 0.5 * (expectDelta + expectDelta.transpose()).eval();
        Matrix got = chart(delta, antidelta, gr).form.entries();
        if ((got - expectDelta).norm() > 1e-7 * (1.0 + expectDelta.norm()))
          return "diagonal-based chart mismatch, phi=" + matStr(phi);
        Matrix M = 0.5 * inner.J() * (I + phi) * (I - phi).fullPivLu().solve(I);
        Matrix expectAnti = (M + M.transpose()).eval();  // 2 M, symmetrized
        Matrix got2 = chart(antidelta, delta, gr).form.entries();
        if ((got2 - expectAnti).norm() > 1e-7 * (1.0 + expectAnti.norm()))
          return "antidiagonal-based chart mismatch, phi=" + matStr(phi);
        return std::nullopt;
      }));

  return out;
}

// ---------------------------------------------------------------------------
// maslov
// ---------------------------------------------------------------------------

SuiteResult maslovSuite(std::uint64_t seed, int trials, SignConvention conv,
                        const ToleranceContext& tol, int threads) {
  SuiteResult out;

  out.invariants.push_back(runTrials(
      "maslov.chart-choice-independence", seed ^ 0x3a01, trials, threads,
      [&](Rng& rng, int trial) -> std::optional<std::string> {
        int n = 1 + static_cast<int>(rng.below(2));
        auto space = SymplecticSpace::standard(n);
        auto from = randomLagrangian(space, rng);
        auto to = randomLagrangian(space, rng);
        auto L0 = randomLagrangian(space, rng);
        auto path = synthesizeLagrangianPath(from, to, 65);
        MaslovOptions a, b, c;
        b.auxiliarySeed = 0xabcdef01 + trial;
        c.thetaGridSize = 11;
        c.auxiliarySeed = 0x12345 + trial;
        HalfInteger va = maslovIndex(path, L0, conv, tol, a);
        HalfInteger vb = maslovIndex(path, L0, conv, tol, b);
        HalfInteger vc = maslovIndex(path, L0, conv, tol, c);
        if (!(va == vb && vb == vc))
          return "chart choice changed the index: " + va.str() + "," + vb.str() + "," +
                 vc.str();
        return std::nullopt;
      }));

  out.invariants.push_back(runTrials(
      "maslov.concatenation-additivity", seed ^ 0x3a02, trials, threads,
      [&](Rng& rng, int) -> std::optional<std::string> {
        int n = 1 + static_cast<int>(rng.below(2));
        auto space = SymplecticSpace::standard(n);
        auto a = randomLagrangian(space, rng);
        auto mid = randomLagrangian(space, rng);
        auto b = randomLagrangian(space, rng);
        auto L0 = randomLagrangian(space, rng);
        auto p1 = synthesizeLagrangianPath(a, mid, 65);
        auto p2 = synthesizeLagrangianPath(mid, b, 65);
        HalfInteger whole = maslovIndex(p1.concatenated(p2), L0, conv, tol);
        HalfInteger parts =
            maslovIndex(p1, L0, conv, tol) + maslovIndex(p2, L0, conv, tol);
        if (!(whole == parts))
          return "concatenation: " + whole.str() + " != " + parts.str();
        return std::nullopt;
      }));

  out.invariants.push_back(runTrials(
      "maslov.symplectic-invariance", seed ^ 0x3a03, trials, threads,
      [&](Rng& rng, int) -> std::optional<std::string> {
        int n = 1 + static_cast<int>(rng.below(2));
        auto space = SymplecticSpace::standard(n);
        auto from = randomLagrangian(space, rng);
        auto to = randomLagrangian(space, rng);
        auto L0 = randomLagrangian(space, rng);
        Matrix phi = randomSymplecticIn(space, rng, 3);
        // The pushforward stretches subspace distances, so densify until the
        // mapped path also honors the sampling contract.
        int samples = 65;
        auto path = synthesizeLagrangianPath(from, to, samples);
        auto mapped = path.mappedBy(phi);
        while (mapped.maxStep() > 0.2 && samples < 4097) {
          samples = 2 * samples - 1;
          path = synthesizeLagrangianPath(from, to, samples);
          mapped = path.mappedBy(phi);
        }
        HalfInteger a = maslovIndex(path, L0, conv, tol);
        HalfInteger b = maslovIndex(mapped, L0.mappedBy(phi), conv, tol);
        if (!(a == b)) return "pushforward changed the index: " + a.str() + " vs " + b.str();
        return std::nullopt;
      }));

  out.invariants.push_back(runTrials(
      "maslov.momentum-reversal-flip", seed ^ 0x3a04, trials, threads,
      [&](Rng& rng, int) -> std::optional<std::string> {
        int n = 1 + static_cast<int>(rng.below(2));
        auto space = SymplecticSpace::standard(n);
        auto from = randomLagrangian(space, rng);
        auto to = randomLagrangian(space, rng);
        auto L0 = randomLagrangian(space, rng);
        auto path = synthesizeLagrangianPath(from, to, 65);
        Matrix D = Matrix::Identity(2 * n, 2 * n);
        D.bottomRightCorner(n, n) = -Matrix::Identity(n, n);  // reverses omega
        HalfInteger a = maslovIndex(path, L0, conv, tol);
        HalfInteger b = maslovIndex(path.mappedBy(D), L0.mappedBy(D), conv, tol);
        if (!(b == -a)) return "reversal did not negate: " + a.str() + " vs " + b.str();
        return std::nullopt;
      }));

  out.invariants.push_back(runTrials(
      "maslov.refinement-stability", seed ^ 0x3a05, trials, threads,
      [&](Rng& rng, int) -> std::optional<std::string> {
        int n = 1 + static_cast<int>(rng.below(2));
        auto space = SymplecticSpace::standard(n);
        auto from = randomLagrangian(space, rng);
        auto to = randomLagrangian(space, rng);
        auto L0 = randomLagrangian(space, rng);
        HalfInteger coarse = maslovIndex(synthesizeLagrangianPath(from, to, 65), L0, conv, tol);
        HalfInteger fine = maslovIndex(synthesizeLagrangianPath(from, to, 129), L0, conv, tol);
        if (!(coarse == fine))
          return "refinement changed the index: " + coarse.str() + " vs " + fine.str();
        return std::nullopt;
      }));

  out.invariants.push_back(runTrials(
      "maslov.hormander-path-independence", seed ^ 0x3a06, trials, threads,
      [&](Rng& rng, int trial) -> std::optional<std::string> {
        int n = 1 + static_cast<int>(rng.below(2));
        auto space = SymplecticSpace::standard(n);
        auto L0 = randomLagrangian(space, rng);
        auto L1 = randomLagrangian(space, rng);
        auto a = randomLagrangian(space, rng);
        auto b = randomLagrangian(space, rng);
        HalfInteger v1 = hormanderByDefinition(L0, L1, a, b, conv, tol, seed ^ (trial * 11 + 1));
        HalfInteger v2 = hormanderByDefinition(L0, L1, a, b, conv, tol, seed ^ (trial * 37 + 5));
        if (!(v1 == v2)) return "path dependence: " + v1.str() + " vs " + v2.str();
        return std::nullopt;
      }));

  out.invariants.push_back(runTrials(
      "maslov.hormander-route-agreement", seed ^ 0x3a07, trials, threads,
      [&](Rng& rng, int trial) -> std::optional<std::string> {
        int n = 1 + static_cast<int>(rng.below(2));
        auto space = SymplecticSpace::standard(n);
        auto L0 = randomLagrangian(space, rng);
        auto L = randomTransverseTo(space, rng, {&L0});
        auto Lp = randomTransverseTo(space, rng, {&L0});
        auto L1aux = randomTransverseTo(space, rng, {&L0});
        HalfInteger def =
            hormanderByDefinition(L0, L, L0, Lp, conv, tol, seed ^ (trial * 3 + 7));
        HalfInteger closed = hormanderClosedForm(L0, L, Lp, L1aux, conv, tol);
        HalfInteger tau = hormanderByKashiwara(L0, L, L0, Lp, conv, tol);
        if (!(def == closed))
          return "closed form " + closed.str() + " != definitional " + def.str();
        if (!(def == tau))
          return "triple-index route " + tau.str() + " != definitional " + def.str();
        return std::nullopt;
      }));

  out.invariants.push_back(runTrials(
      "maslov.hormander-general-tau-route", seed ^ 0x3a08, trials, threads,
      [&](Rng& rng, int trial) -> std::optional<std::string> {
        int n = 1 + static_cast<int>(rng.below(2));
        auto space = SymplecticSpace::standard(n);
        auto L0 = randomLagrangian(space, rng);
        auto L1 = randomLagrangian(space, rng);
        auto a = randomLagrangian(space, rng);
        auto b = randomLagrangian(space, rng);
        HalfInteger def = hormanderByDefinition(L0, L1, a, b, conv, tol, seed ^ (trial * 13));
        HalfInteger tau = hormanderByKashiwara(L0, L1, a, b, conv, tol);
        if (!(def == tau)) return "tau route " + tau.str() + " != definitional " + def.str();
        return std::nullopt;
      }));

  return out;
}

// ---------------------------------------------------------------------------
// cayley
// ---------------------------------------------------------------------------

SuiteResult cayleySuite(std::uint64_t seed, int trials, SignConvention conv,
                        const ToleranceContext& tol, int threads) {
  (void)conv;
  SuiteResult out;

  out.invariants.push_back(runTrials(
      "cayley.transform-symmetry", seed ^ 0xca01, trials, threads,
      [&](Rng& rng, int) -> std::optional<std::string> {
        int n = 1 + static_cast<int>(rng.below(4));
        auto space = SymplecticSpace::standard(n);
        Matrix I = Matrix::Identity(2 * n, 2 * n);
        Matrix phi, psi;
        do {
          phi = randomSymplecticIn(space, rng, 3);
        } while (smallestSingularValue(phi - I) < 0.05);
        do {
          psi = randomSymplecticIn(space, rng, 3);
        } while (smallestSingularValue(psi - I) < 0.05 ||
                 smallestSingularValue(phi - psi) < 0.05);
        SymplecticMatrix Phi(space, phi), Psi(space, psi);
        // The raw (unsymmetrized) products must already be symmetric.
        Matrix rawM = 0.5 * space.J() * (I + phi) * (I - phi).fullPivLu().solve(I);
        if ((rawM - rawM.transpose()).norm() > 1e-8 * (1.0 + rawM.norm()))
          return "classical transform asymmetric";
        Matrix rawC = space.J() * (psi - I) *
                      (phi - psi).fullPivLu().solve(Matrix(phi - I));
        if ((rawC - rawC.transpose()).norm() > 1e-8 * (1.0 + rawC.norm()))
          return "generalized transform asymmetric";
        return std::nullopt;
      }));

  out.invariants.push_back(runTrials(
      "cayley.inverse-antisymmetry", seed ^ 0xca02, trials, threads,
      [&](Rng& rng, int) -> std::optional<std::string> {
        int n = 1 + static_cast<int>(rng.below(4));
        auto space = SymplecticSpace::standard(n);
        Matrix I = Matrix::Identity(2 * n, 2 * n);
        Matrix phi;
        do {
          phi = randomSymplecticIn(space, rng, 3);
        } while (smallestSingularValue(phi - I) < 0.05);
        SymplecticMatrix Phi(space, phi);
        Matrix M = cayley(Phi, tol).matrix.entries();
        Matrix Minv = cayley(inverse(Phi), tol).matrix.entries();
        if ((M + Minv).norm() > 1e-8 * (1.0 + M.norm()))
          return "M(phi^-1) + M(phi) is not zero";
        return std::nullopt;
      }));

  out.invariants.push_back(runTrials(
      "cayley.kernel-rank-law", seed ^ 0xca03, trials, threads,
      [&](Rng& rng, int) -> std::optional<std::string> {
        int n = 1 + static_cast<int>(rng.below(4));
        auto space = SymplecticSpace::standard(n);
        Matrix I = Matrix::Identity(2 * n, 2 * n);
        // Block-embed an identity on k of the n mode planes, a random
        // symplectic factor on the rest: Ker(Phi - Id) has dimension 2k.
        int k = static_cast<int>(rng.below(n + 1));
        Matrix phi = Matrix::Identity(2 * n, 2 * n);
        if (n - k > 0) {
          auto sub = SymplecticSpace::standard(n - k);
          Matrix s = randomSymplecticIn(sub, rng, 3);
          std::vector<int> idx;
          for (int i = k; i < n; ++i) idx.push_back(i);
          for (int i = n + k; i < 2 * n; ++i) idx.push_back(i);
          for (std::size_t a = 0; a < idx.size(); ++a)
            for (std::size_t b = 0; b < idx.size(); ++b)
              phi(idx[a], idx[b]) = s(a, b);
        }
        Matrix psi;
        do {
          psi = randomSymplecticIn(space, rng, 3);
        } while (smallestSingularValue(psi - I) < 0.05 ||
                 smallestSingularValue(phi - psi) < 0.05);
        Matrix C = psiCayley(SymplecticMatrix(space, psi), SymplecticMatrix(space, phi), tol)
                       .matrix.entries();
        auto rankOf = [&](const Matrix& m) {
          auto sv = m.jacobiSvd().singularValues();
          double top = sv(0) > 1.0 ? sv(0) : 1.0;
          int r = 0;
          for (int i = 0; i < sv.size(); ++i)
            if (sv(i) > 1e-8 * top) ++r;
          return r;
        };
        int rC = rankOf(C);
        int dimKer = 2 * n - rankOf(phi - I);
        if (rC != 2 * n - dimKer)
          return "rank " + std::to_string(rC) + " != 2n - dimKer = " +
                 std::to_string(2 * n - dimKer);
        return std::nullopt;
      }));

  out.invariants.push_back(runTrials(
      "cayley.chart-consistency", seed ^ 0xca04, trials, threads,
      [&](Rng& rng, int) -> std::optional<std::string> {
        int n = 1 + static_cast<int>(rng.below(3));
        auto space = SymplecticSpace::standard(n);
        auto doubled = SymplecticSpace::doubled(space);
        Matrix I = Matrix::Identity(2 * n, 2 * n);
        Matrix phi, psi;
        do {
          psi = randomSymplecticIn(space, rng, 3);
        } while (smallestSingularValue(psi - I) < 0.1);
        do {
          phi = randomSymplecticIn(space, rng, 3);
        } while (smallestSingularValue(phi - psi) < 0.1);
        Matrix C = psiCayley(SymplecticMatrix(space, psi), SymplecticMatrix(space, phi), tol)
                       .matrix.entries();
        Matrix chartVal = chart(diagonalLagrangian(doubled), graphLagrangian(doubled, psi),
                                graphLagrangian(doubled, phi))
                              .form.entries();
        // chart in the orthonormal diagonal frame carries the 1/2 of the
        // (v,v) -> (v,v)/sqrt2 normalization.
        if ((C - 2.0 * chartVal).norm() > 1e-7 * (1.0 + C.norm()))
          return "chart and transform disagree";
        if (inertiaOf(C, tol).signature(SignConvention::Standard) !=
            inertiaOf(chartVal, tol).signature(SignConvention::Standard))
          return "inertia disagrees";
        return std::nullopt;
      }));

  out.invariants.push_back(runTrials(
      "cayley.classical-vs-minus-id", seed ^ 0xca05, trials, threads,
      [&](Rng& rng, int) -> std::optional<std::string> {
        int n = 1 + static_cast<int>(rng.below(3));
        auto space = SymplecticSpace::standard(n);
        Matrix I = Matrix::Identity(2 * n, 2 * n);
        Matrix phi;
        do {
          phi = randomSymplecticIn(space, rng, 3);
        } while (smallestSingularValue(phi - I) < 0.1 ||
                 smallestSingularValue(phi + I) < 0.1);
        SymplecticMatrix Phi(space, phi);
        SymplecticMatrix minusId(space, -I);
        Matrix C = psiCayley(minusId, Phi, tol).matrix.entries();
        Matrix M = cayley(Phi, tol).matrix.entries();
        const Matrix& J = space.J();
        Matrix expect = -(J.transpose() * M * J).fullPivLu().solve(I);
        if ((C - expect).norm() > 1e-7 * (1.0 + C.norm()))
          return "psi=-Id transform is not -(J^T M J)^{-1}";
        auto a = inertiaOf(C, tol);
        auto b = inertiaOf(Matrix(-M), tol);
        if (!(a == b)) return "inertia of C_{-Id} differs from inertia of -M";
        return std::nullopt;
      }));

  return out;
}

// ---------------------------------------------------------------------------
// product (cz)
// ---------------------------------------------------------------------------

SymplecticPath randomIdPath(Rng& rng, int n, int samples = 33) {
  return randomSymplecticPath(rng.bits(), n, samples);
}

SuiteResult productSuite(std::uint64_t seed, int trials, SignConvention conv,
                         const ToleranceContext& tol, int threads) {
  SuiteResult out;

  out.invariants.push_back(runTrials(
      "product.first-product-form-exact", seed ^ 0x9001, trials, threads,
      [&](Rng& rng, int trial) -> std::optional<std::string> {
        int n = 1 + static_cast<int>(rng.below(3));
        auto space = SymplecticSpace::standard(n);
        // Arbitrary endpoints: shift identity-based paths by group elements.
        SymplecticPath p1raw = randomIdPath(rng, n);
        SymplecticPath p2raw = randomIdPath(rng, n);
        Matrix a = randomSymplecticIn(space, rng, 2);
        Matrix b = randomSymplecticIn(space, rng, 2);
        auto shift = [&](const SymplecticPath& p, const Matrix& g) {
          std::vector<SymplecticPath::Sample> s;
          for (const auto& smp : p.samples()) s.push_back({smp.t, Matrix(smp.matrix * g)});
          return SymplecticPath(space, std::move(s));
        };
        auto r = productCz(shift(p1raw, a), shift(p2raw, b), conv, tol, seed ^ (trial * 17));
        if (!r.exact())
          return "decomposition " + r.decomposed().str() + " != direct " + r.direct.str();
        return std::nullopt;
      }));

  out.invariants.push_back(runTrials(
      "product.nondegenerate-closed-form", seed ^ 0x9002, trials, threads,
      [&](Rng& rng, int) -> std::optional<std::string> {
        int n = 1 + static_cast<int>(rng.below(3));
        Matrix I = Matrix::Identity(2 * n, 2 * n);
        for (int attempt = 0; attempt < 50; ++attempt) {
          SymplecticPath p1 = randomIdPath(rng, n);
          SymplecticPath p2 = randomIdPath(rng, n);
          if (smallestSingularValue(p1.back() - I) < 0.05 ||
              smallestSingularValue(p2.back() - I) < 0.05)
            continue;
          auto space = p1.space();
          Matrix sum =
              cayley(SymplecticMatrix(space, p1.back()), tol).matrix.entries() +
              cayley(SymplecticMatrix(space, p2.back()), tol).matrix.entries();
          Eigen::SelfAdjointEigenSolver<Matrix> es(sum, Eigen::EigenvaluesOnly);
          if (es.eigenvalues().cwiseAbs().minCoeff() < 1e-3) continue;
          auto r = productCzNondegenerate(p1, p2, conv, tol);
          if (!(r.direct == r.predicted))
            return "prediction " + r.predicted.str() + " != direct " + r.direct.str();
          if (!(r.direct == r.directSwapped))
            return "product order changed the index";
          return std::nullopt;
        }
        return "could not draw a margin-safe pair";
      }));

  out.invariants.push_back(runTrials(
      "product.psi-closed-form", seed ^ 0x9003, trials, threads,
      [&](Rng& rng, int) -> std::optional<std::string> {
        int n = 1 + static_cast<int>(rng.below(2));
        auto space = SymplecticSpace::standard(n);
        Matrix I = Matrix::Identity(2 * n, 2 * n);
        for (int attempt = 0; attempt < 80; ++attempt) {
          SymplecticPath p1 = randomIdPath(rng, n);
          SymplecticPath p2 = randomIdPath(rng, n);
          Matrix end1inv = -space.J() * p1.back().transpose() * space.J();
          Matrix psi = randomSymplecticIn(space, rng, 3);
          if (smallestSingularValue(psi - I) < 0.08 ||
              smallestSingularValue(end1inv - psi) < 0.08 ||
              smallestSingularValue(p2.back() - psi) < 0.08)
            continue;
          auto r = productCzPsi(p1, p2, SymplecticMatrix(space, psi), conv, tol);
          if (!(r.direct == r.predicted))
            return "prediction " + r.predicted.str() + " != direct " + r.direct.str();
          if (r.shortcutEvaluated && !r.shortcutAgrees)
            return "inverse-difference shortcut disagrees with the bracket";
          return std::nullopt;
        }
        return "could not draw a margin-safe configuration";
      }));

  out.invariants.push_back(runTrials(
      "product.cz-inverse-defect", seed ^ 0x9004, trials, threads,
      [&](Rng& rng, int) -> std::optional<std::string> {
        int n = 1 + static_cast<int>(rng.below(3));
        SymplecticPath p = randomIdPath(rng, n);
        HalfInteger defect = czInverseDefect(p, conv, tol);
        if (defect.twice != 0) return "inverse defect " + defect.str();
        return std::nullopt;
      }));

  out.invariants.push_back(runTrials(
      "product.shifted-cz", seed ^ 0x9005, trials, threads,
      [&](Rng& rng, int trial) -> std::optional<std::string> {
        int n = 1 + static_cast<int>(rng.below(2));
        auto space = SymplecticSpace::standard(n);
        SymplecticPath p = randomIdPath(rng, n);
        SymplecticMatrix psiStar(space, randomSymplecticIn(space, rng, 3));
        auto r = shiftedCz(psiStar, p, ShiftSide::Left, conv, tol, seed ^ (trial * 29));
        if (!(r.direct == r.otherSide))
          return "left and right shifts differ: " + r.direct.str() + " vs " +
                 r.otherSide.str();
        if (!(r.direct == r.predicted))
          return "shift prediction " + r.predicted.str() + " != direct " + r.direct.str();
        return std::nullopt;
      }));

  out.invariants.push_back(runTrials(
      "product.trivial-loop-invariance", seed ^ 0x9006, trials, threads,
      [&](Rng& rng, int) -> std::optional<std::string> {
        int n = 1 + static_cast<int>(rng.below(3));
        auto space = SymplecticSpace::standard(n);
        SymplecticPath p = randomIdPath(rng, n);
        // Contractible loop at Id: exp of a tent-shaped symmetric family.
        Matrix S = randomSymmetric(rng, 2 * n, 0.8);
        std::vector<SymplecticPath::Sample> loop;
        int count = 41;
        for (int i = 0; i < count; ++i) {
          double t = static_cast<double>(i) / (count - 1);
          loop.push_back({t, hamiltonianExp(space, 4.0 * t * (1.0 - t) * S)});
        }
        SymplecticPath loopPath(space, std::move(loop));
        HalfInteger base = czIndex(p, conv, tol);
        HalfInteger multiplied = czIndex(p.pointwiseProduct(loopPath), conv, tol);
        if (!(base == multiplied))
          return "trivial loop changed the index: " + base.str() + " vs " +
                 multiplied.str();
        return std::nullopt;
      }));

  return out;
}

// ---------------------------------------------------------------------------
// iterate
// ---------------------------------------------------------------------------

SuiteResult iterateSuite(std::uint64_t seed, int trials, SignConvention conv,
                         const ToleranceContext& tol, int threads) {
  SuiteResult out;

  out.invariants.push_back(runTrials(
      "iterate.full-bound", seed ^ 0x17e1, trials, threads,
      [&](Rng& rng, int) -> std::optional<std::string> {
        int n = 1 + static_cast<int>(rng.below(2));
        SymplecticPath p = randomIdPath(rng, n);
        auto rows = iterateCz(p, 8, conv, tol);
        for (const auto& r : rows) {
          if (r.fullBoundViolated)
            return "n(k-1) bound violated at k=" + std::to_string(r.k) + " (deviation " +
                   std::to_string(r.deviationTwice / 2.0) + ")";
          if (r.k > 1 && std::llabs(r.perStepHormander.twice) > 2 * n)
            return "per-step correction above n at k=" + std::to_string(r.k);
        }
        return std::nullopt;
      }));

  // The rotation family violates the tighter bound at N >= 2; the run must
  // flag it rather than fail it.
  out.invariants.push_back(runTrials(
      "iterate.rotation-half-bound-flag", seed ^ 0x17e2, 1, 1,
      [&](Rng&, int) -> std::optional<std::string> {
        auto space = SymplecticSpace::standard(1);
        std::vector<SymplecticPath::Sample> s;
        int count = 41;
        for (int i = 0; i < count; ++i) {
          double t = (M_PI / 2) * i / (count - 1);
          s.push_back({t, hamiltonianExp(space, t * Matrix::Identity(2, 2))});
        }
        auto rows = iterateCz(SymplecticPath(space, std::move(s)), 3, conv, tol);
        if (std::llabs(rows[0].index.twice) != 2) return "quarter index magnitude != 1";
        if (rows[2].deviationTwice != 4) return "k=3 deviation != 2";
        if (!rows[2].halfBoundViolated) return "half bound violation not flagged at k=3";
        if (rows[2].fullBoundViolated) return "full bound wrongly flagged at k=3";
        return std::nullopt;
      }));

  out.invariants.push_back(runTrials(
      "iterate.catalog-systems", seed ^ 0x17e3, 1, 1,
      [&](Rng&, int) -> std::optional<std::string> {
        for (const auto& system : LinearHamiltonianSystem::catalog()) {
          auto rows = iterateIndexReport(system, 4, conv, 96, tol);
          for (const auto& r : rows) {
            if (!(r.index == r.pointwisePower))
              return system.name() + ": extension index " + r.index.str() +
                     " != pointwise power " + r.pointwisePower.str() + " at k=" +
                     std::to_string(r.k);
            if (r.fullBoundViolated)
              return system.name() + ": n(k-1) bound violated at k=" + std::to_string(r.k);
          }
        }
        return std::nullopt;
      }));

  out.invariants.push_back(runTrials(
      "iterate.step-refinement-stability", seed ^ 0x17e4, trials, threads,
      [&](Rng& rng, int) -> std::optional<std::string> {
        int n = 1;
        (void)rng;
        auto sysCatalog = LinearHamiltonianSystem::catalog();
        const auto& system = sysCatalog[rng.below(sysCatalog.size())];
        n = system.n();
        (void)n;
        auto coarse = integrateFundamental(system, 64);
        auto fine = integrateFundamental(system, 128);
        HalfInteger a = czIndex(coarse.path, conv, tol);
        HalfInteger b = czIndex(fine.path, conv, tol);
        if (!(a == b)) return system.name() + ": step halving changed the index";
        return std::nullopt;
      }));

  return out;
}

// ---------------------------------------------------------------------------
// metaplectic
// ---------------------------------------------------------------------------

GeneratingFunction randomFreeW(Rng& rng, int n, double kMargin = 0.25) {
  for (;;) {
    Matrix P = randomSymmetric(rng, n, 2.0);
    Matrix Q = randomSymmetric(rng, n, 2.0);
    Matrix K = Matrix::NullaryExpr(n, n, [&](Eigen::Index, Eigen::Index) {
      return 2.0 * rng.uniformSym();
    });
    if (smallestSingularValue(K) < kMargin) continue;
    return GeneratingFunction(SymmetricForm(P), K, SymmetricForm(Q));
  }
}

int legalM(const GeneratingFunction& W, Rng& rng) {
  double detK = W.K().fullPivLu().determinant();
  int base = detK > 0 ? 0 : 1;
  return base + 2 * static_cast<int>(rng.below(2));
}

SuiteResult metaplecticSuite(std::uint64_t seed, int trials, SignConvention conv,
                             const ToleranceContext& tol, int threads) {
  SuiteResult out;

  out.invariants.push_back(runTrials(
      "meta.determinant-identity", seed ^ 0x3e01, trials, threads,
      [&](Rng& rng, int) -> std::optional<std::string> {
        int n = 1 + static_cast<int>(rng.below(3));
        GeneratingFunction W = randomFreeW(rng, n);
        wxx(W);  // asserts the identity to 1e-8 relative internally
        return std::nullopt;
      }));

  out.invariants.push_back(runTrials(
      "meta.free-roundtrip", seed ^ 0x3e02, trials, threads,
      [&](Rng& rng, int) -> std::optional<std::string> {
        int n = 1 + static_cast<int>(rng.below(3));
        GeneratingFunction W = randomFreeW(rng, n);
        GeneratingFunction back = matrixToW(freeMatrix(W), tol);
        double err = (back.P().entries() - W.P().entries()).norm() +
                     (back.Q().entries() - W.Q().entries()).norm() +
                     (back.K() - W.K()).norm();
        if (err > 1e-10 * (1.0 + W.K().norm()))
          return "round trip error " + std::to_string(err);
        return std::nullopt;
      }));

  out.invariants.push_back(runTrials(
      "meta.inert-integrality", seed ^ 0x3e03, trials, threads,
      [&](Rng& rng, int) -> std::optional<std::string> {
        int n = 1 + static_cast<int>(rng.below(3));
        auto space = SymplecticSpace::standard(n);
        auto L0 = randomLagrangian(space, rng);
        auto L1 = randomLagrangian(space, rng);
        auto L2 = randomLagrangian(space, rng);
        inert(L0, L1, L2, conv, tol);  // throws NonIntegerResult on failure
        return std::nullopt;
      }));

  out.invariants.push_back(runTrials(
      "meta.compose-agrees-factorization", seed ^ 0x3e04, trials, threads,
      [&](Rng& rng, int) -> std::optional<std::string> {
        int n = 1 + static_cast<int>(rng.below(3));
        for (int attempt = 0; attempt < 60; ++attempt) {
          GeneratingFunction W1 = randomFreeW(rng, n);
          GeneratingFunction W2 = randomFreeW(rng, n);
          Matrix sum = W2.P().entries() + W1.Q().entries();
          Eigen::SelfAdjointEigenSolver<Matrix> es(sum, Eigen::EigenvaluesOnly);
          if (es.eigenvalues().cwiseAbs().minCoeff() < 0.1) continue;
          MetaplecticElement e1(W1, legalM(W1, rng));
          MetaplecticElement e2(W2, legalM(W2, rng));
          Mod4Value law = composeMaslov(e1, e2, tol);
          Mod4Value direct = composeMaslovDirect(e1, e2, tol);
          if (!(law == direct))
            return "cocycle law " + std::to_string(law.value) + " != factorization " +
                   std::to_string(direct.value);
          return std::nullopt;
        }
        return "could not draw a margin-safe pair";
      }));

  out.invariants.push_back(runTrials(
      "meta.compose-associativity", seed ^ 0x3e05, trials, threads,
      [&](Rng& rng, int) -> std::optional<std::string> {
        int n = 1 + static_cast<int>(rng.below(2));
        for (int attempt = 0; attempt < 80; ++attempt) {
          GeneratingFunction W1 = randomFreeW(rng, n);
          GeneratingFunction W2 = randomFreeW(rng, n);
          GeneratingFunction W3 = randomFreeW(rng, n);
          SymplecticMatrix m1 = freeMatrix(W1);
          SymplecticMatrix m2 = freeMatrix(W2);
          SymplecticMatrix m3 = freeMatrix(W3);
          Matrix m12 = m1.entries() * m2.entries();
          Matrix m23 = m2.entries() * m3.entries();
          if (smallestSingularValue(m12.topRightCorner(n, n)) < 0.08 ||
              smallestSingularValue(m23.topRightCorner(n, n)) < 0.08)
            continue;
          MetaplecticElement e1(W1, legalM(W1, rng));
          MetaplecticElement e2(W2, legalM(W2, rng));
          MetaplecticElement e3(W3, legalM(W3, rng));
          // Build the product elements carried by the composed class.
          MetaplecticElement e12(matrixToW(SymplecticMatrix(m1.space(), m12), tol),
                                 composeMaslov(e1, e2, tol).value);
          MetaplecticElement e23(matrixToW(SymplecticMatrix(m1.space(), m23), tol),
                                 composeMaslov(e2, e3, tol).value);
          Mod4Value left = composeMaslov(e12, e3, tol);
          Mod4Value right = composeMaslov(e1, e23, tol);
          if (!(left == right))
            return "associativity: " + std::to_string(left.value) + " != " +
                   std::to_string(right.value);
          return std::nullopt;
        }
        return "could not draw a margin-safe triple";
      }));

  out.invariants.push_back(runTrials(
      "meta.inverse-element-identity", seed ^ 0x3e06, trials, threads,
      [&](Rng& rng, int) -> std::optional<std::string> {
        int n = 1 + static_cast<int>(rng.below(3));
        GeneratingFunction W = randomFreeW(rng, n);
        MetaplecticElement e(W, legalM(W, rng));
        MetaplecticElement einv = inverseElement(e);
        Matrix prod = freeMatrix(e.W()).entries() * freeMatrix(einv.W()).entries();
        if ((prod - Matrix::Identity(2 * n, 2 * n)).norm() > 1e-8 * prod.norm())
          return "inverse element does not invert the matrix";
        Mod4Value composed = composeMaslov(e, einv, tol);
        if (composed.value != ((n % 4) + 4) % 4)
          return "e * e^-1 has class " + std::to_string(composed.value) + ", expected " +
                 std::to_string(n % 4);
        return std::nullopt;
      }));

  out.invariants.push_back(runTrials(
      "meta.nu-compose-truth", seed ^ 0x3e07, trials, threads,
      [&](Rng& rng, int) -> std::optional<std::string> {
        int n = 1 + static_cast<int>(rng.below(3));
        for (int attempt = 0; attempt < 80; ++attempt) {
          GeneratingFunction W1 = randomFreeW(rng, n);
          GeneratingFunction W2 = randomFreeW(rng, n);
          if (!isFreeSp0(W1, tol) || !isFreeSp0(W2, tol)) continue;
          Matrix sum = W2.P().entries() + W1.Q().entries();
          Eigen::SelfAdjointEigenSolver<Matrix> esSum(sum, Eigen::EigenvaluesOnly);
          if (esSum.eigenvalues().cwiseAbs().minCoeff() < 0.1) continue;
          Matrix prod = freeMatrix(W1).entries() * freeMatrix(W2).entries();
          GeneratingFunction Wp = matrixToW(
              SymplecticMatrix(SymplecticSpace::standard(n), prod), tol);
          SymmetricForm wp = wxx(Wp);
          auto inWp = inertia(wp, tol);
          if (!inWp.nondegenerate()) continue;
          Eigen::SelfAdjointEigenSolver<Matrix> esW(wp.entries(), Eigen::EigenvaluesOnly);
          if (esW.eigenvalues().cwiseAbs().minCoeff() < 0.05) continue;
          auto space = SymplecticSpace::standard(n);
          Matrix Msum =
              cayley(SymplecticMatrix(space, freeMatrix(W1).entries()), tol).matrix.entries() +
              cayley(SymplecticMatrix(space, freeMatrix(W2).entries()), tol).matrix.entries();
          Eigen::SelfAdjointEigenSolver<Matrix> esM(Msum, Eigen::EigenvaluesOnly);
          if (esM.eigenvalues().cwiseAbs().minCoeff() < 0.02) continue;
          MetaplecticElement e1(W1, legalM(W1, rng));
          MetaplecticElement e2(W2, legalM(W2, rng));
          Mod4Value got = nuCompose(e1, e2, tol);
          // Ground truth: the product element via the factorization value.
          Mod4Value mProd = composeMaslovDirect(e1, e2, tol);
          Mod4Value expect = mod4(mProd.value - inWp.nMinus);
          if (!(got == expect))
            return "nu composition " + std::to_string(got.value) + " != " +
                   std::to_string(expect.value);
          return std::nullopt;
        }
        return "could not draw a margin-safe pair";
      }));

  out.invariants.push_back(runTrials(
      "meta.nu-vs-cz", seed ^ 0x3e08, trials, threads,
      [&](Rng& rng, int trial) -> std::optional<std::string> {
        int n = 1 + static_cast<int>(rng.below(2));
        for (int attempt = 0; attempt < 60; ++attempt) {
          GeneratingFunction W = randomFreeW(rng, n);
          SymmetricForm w = wxx(W);
          Eigen::SelfAdjointEigenSolver<Matrix> es(w.entries(), Eigen::EigenvaluesOnly);
          if (es.eigenvalues().cwiseAbs().minCoeff() < 0.05) continue;
          Rng mrng = rng.fork(attempt);
          auto report = nuVsCz(W, legalM(W, mrng), seed ^ (trial * 41), conv, tol);
          if (!report.uniqueMatchPerClass)
            return "no unique parity-legal m matched a path class";
          if (!report.loopShiftConsistent) return "loop did not shift the matched m correctly";
          return std::nullopt;
        }
        return "could not draw a margin-safe W";
      }));

  out.invariants.push_back(runTrials(
      "meta.parity-invariant", seed ^ 0x3e09, trials, threads,
      [&](Rng& rng, int) -> std::optional<std::string> {
        int n = 1 + static_cast<int>(rng.below(3));
        GeneratingFunction W = randomFreeW(rng, n);
        int good = legalM(W, rng);
        try {
          MetaplecticElement bad(W, good + 1);
          return "wrong-parity m was accepted";
        } catch (const DegenerateInput&) {
          return std::nullopt;
        }
      }));

  return out;
}

void append(SuiteResult& into, SuiteResult&& part) {
  for (auto& r : part.invariants) into.invariants.push_back(std::move(r));
}

}  // namespace

std::optional<Suite> suiteFromName(const std::string& name) {
  if (name == "forms") return Suite::Forms;
  if (name == "lagr") return Suite::Lagr;
  if (name == "maslov") return Suite::Maslov;
  if (name == "cayley") return Suite::Cayley;
  if (name == "product") return Suite::Product;
  if (name == "iterate") return Suite::Iterate;
  if (name == "metaplectic") return Suite::Metaplectic;
  if (name == "all") return Suite::All;
  return std::nullopt;
}

const char* suiteName(Suite suite) {
  switch (suite) {
    case Suite::Forms: return "forms";
    case Suite::Lagr: return "lagr";
    case Suite::Maslov: return "maslov";
    case Suite::Cayley: return "cayley";
    case Suite::Product: return "product";
    case Suite::Iterate: return "iterate";
    case Suite::Metaplectic: return "metaplectic";
    case Suite::All: return "all";
  }
  return "?";
}

SuiteResult runSuite(Suite suite, std::uint64_t seed, int trials, SignConvention conv,
                     const ToleranceContext& tol, int threads) {
  if (trials < 1) throw DimensionMismatch("trials must be >= 1");
  SuiteResult out;
  switch (suite) {
    case Suite::Forms: return formsSuite(seed, trials, conv, tol, threads);
    case Suite::Lagr: return lagrSuite(seed, trials, conv, tol, threads);
    case Suite::Maslov: return maslovSuite(seed, trials, conv, tol, threads);
    case Suite::Cayley: return cayleySuite(seed, trials, conv, tol, threads);
    case Suite::Product: return productSuite(seed, trials, conv, tol, threads);
    case Suite::Iterate: return iterateSuite(seed, trials, conv, tol, threads);
    case Suite::Metaplectic: return metaplecticSuite(seed, trials, conv, tol, threads);
    case Suite::All:
      append(out, formsSuite(seed, trials, conv, tol, threads));
      append(out, lagrSuite(seed, trials, conv, tol, threads));
      append(out, maslovSuite(seed, trials, conv, tol, threads));
      append(out, cayleySuite(seed, trials, conv, tol, threads));
      append(out, productSuite(seed, trials, conv, tol, threads));
      append(out, iterateSuite(seed, trials, conv, tol, threads));
      append(out, metaplecticSuite(seed, trials, conv, tol, threads));
      return out;
  }
  return out;
}

}  // namespace czindex
