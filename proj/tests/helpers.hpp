#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "czindex/cz.hpp"
#include "czindex/lagr.hpp"
#include "czindex/maslov.hpp"
#include "czindex/sympl.hpp"

namespace testutil {

using namespace czindex;

inline Matrix rotation2(double theta) {
  Matrix r(2, 2);
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return r;
}

inline SymplecticPath rotationPath(double a, double b, int count) {
  auto space = SymplecticSpace::standard(1);
  std::vector<SymplecticPath::Sample> s;
  s.reserve(count);
  for (int i = 0; i < count; ++i) {
    double t = a + (b - a) * i / (count - 1);
    s.push_back({t, rotation2(t)});
  }
  return SymplecticPath(space, std::move(s));
}

inline LagrangianFrame lineFrame(const SymplecticSpace& space, double x, double p) {
  Matrix col(2, 1);
  col << x, p;
  return LagrangianFrame(space, col);
}

// Independent inertia oracle for 3x3 symmetric matrices: closed-form roots of
// the characteristic cubic (trigonometric method), no matrix eigensolver.
inline InertiaTriple inertiaOracle3(const Matrix& A, double tol = 1e-9) {
  double a = A(0, 0), b = A(1, 1), c = A(2, 2);
  double d = A(0, 1), e = A(0, 2), f = A(1, 2);
  double p1 = d * d + e * e + f * f;
  InertiaTriple out;
  auto classify = [&](double lambda) {
    if (lambda < -tol)
      ++out.nMinus;
    else if (lambda > tol)
      ++out.nPlus;
    else
      ++out.nZero;
  };
  if (p1 < 1e-30) {
    classify(a);
    classify(b);
    classify(c);
    return out;
  }
  double q = (a + b + c) / 3.0;
  double p2 = (a - q) * (a - q) + (b - q) * (b - q) + (c - q) * (c - q) + 2.0 * p1;
  double p = std::sqrt(p2 / 6.0);
  // B = (A - q I) / p; r = det(B) / 2 lies in [-1, 1]
  Matrix B = (A - q * Matrix::Identity(3, 3)) / p;
  double detB = B(0, 0) * (B(1, 1) * B(2, 2) - B(1, 2) * B(2, 1)) -
                B(0, 1) * (B(1, 0) * B(2, 2) - B(1, 2) * B(2, 0)) +
                B(0, 2) * (B(1, 0) * B(2, 1) - B(1, 1) * B(2, 0));
  double r = detB / 2.0;
  r = std::max(-1.0, std::min(1.0, r));
  double phi = std::acos(r) / 3.0;
  classify(q + 2.0 * p * std::cos(phi));
  classify(q + 2.0 * p * std::cos(phi + 2.0 * M_PI / 3.0));
  classify(q + 2.0 * p * std::cos(phi + 4.0 * M_PI / 3.0));
  return out;
}

// Complex-scalar oracles for the rotation family on n = 1: every rational
// expression in rotations acts as multiplication by the matching expression
// in e^{i theta}, and J acts as i.
inline double classicalTransformRotationOracle(double theta) {
  // (1/2) i (1 + e^{i t}) / (1 - e^{i t}) = -(1/2) cot(t/2), real
  return -0.5 / std::tan(theta / 2.0);
}

inline double psiTransformRotationOracle(double alpha, double theta) {
  std::complex<double> i(0.0, 1.0);
  std::complex<double> ea = std::exp(i * alpha), et = std::exp(i * theta);
  std::complex<double> v = i * (ea - 1.0) / (et - ea) * (et - 1.0);
  return v.real();  // imaginary part vanishes for the rotation family
}

inline HalfInteger hi(std::int64_t whole) { return HalfInteger::whole(whole); }

}  // namespace testutil
