#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>

namespace czindex {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;

/// Deterministic random source. All randomness in the library flows through
/// this wrapper; doubles are derived from raw engine bits so that streams are
/// identical across platforms and standard-library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

  /// Uniform in [-1, 1).
  double uniformSym() { return 2.0 * uniform() - 1.0; }

  /// Uniform integer in [0, limit).
  std::uint64_t below(std::uint64_t limit) { return bits() % limit; }

  /// Child stream, decorrelated from this one. Used to hand independent
  /// deterministic streams to per-trial workers.
  Rng fork(std::uint64_t tag) {
    std::uint64_t s = bits();
    return Rng(s ^ (0x9e3779b97f4a7c15ULL * (tag + 1)));
  }

 private:
  std::mt19937_64 engine_;
};

/// Derives the rng for trial `index` of a batch run so that results do not
/// depend on scheduling order or thread count.
inline Rng trialRng(std::uint64_t seed, std::uint64_t index) {
  return Rng(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)) ^ 0xd1b54a32d192ed03ULL);
}

inline double spectralNorm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.jacobiSvd().singularValues()(0);
}

inline double smallestSingularValue(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  auto sv = m.jacobiSvd().singularValues();
  return sv(sv.size() - 1);
}

}  // namespace czindex
