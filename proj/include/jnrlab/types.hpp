#pragma once

#include <cmath>
#include <complex>

namespace jnr {

using Complex = std::complex<double>;

inline bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Integer power by repeated multiplication (0^0 == 1).
inline Complex ipow(Complex z, int k) {
  Complex r = 1.0;
  for (int i = 0; i < k; ++i) r *= z;
  return r;
}

/// Tolerance knobs shared across the library. Identity checks are relative
/// to the natural scale of the object they test.
struct Tolerances {
  double id = 1e-9;       ///< identity-check defect, relative
  double root = 1e-10;    ///< root residual bound, relative to max |coeff|
  double trim = 1e-12;    ///< trailing-coefficient trim threshold, relative
  double cluster = 1e-6;  ///< root grouping radius for multiplicities
  double sep = 1e-8;      ///< minimum pole separation
  double near = 1e-6;     ///< near-grid regularization radius

  static const Tolerances& defaults();
};

/// Point of P^1 in homogeneous coordinates [u0 : u1]. The affine chart is
/// z = u1/u0, so [1 : z] is a finite point and [0 : 1] is infinity.
/// Scale equivalence is semantic; comparisons go through the chordal metric.
struct ProjPoint {
  Complex u0;
  Complex u1;

  ProjPoint(Complex u0_, Complex u1_);

  static ProjPoint affine(Complex z) { return {Complex(1.0), z}; }
  static ProjPoint infinity() { return {Complex(0.0), Complex(1.0)}; }

  double norm() const { return std::sqrt(std::norm(u0) + std::norm(u1)); }
  ProjPoint unit() const;

  /// The antipodal map z -> -1/conj(z), with no chart special cases.
  ProjPoint antipode() const { return {std::conj(u1), -std::conj(u0)}; }

  bool at_infinity() const { return std::abs(u0) == 0.0; }
  Complex to_affine() const;
};

/// Chordal distance on P^1; scale-invariant, range [0, 1].
double chordal(const ProjPoint& p, const ProjPoint& q);

}  // namespace jnr
