#pragma once

#include <vector>

#include "jnrlab/types.hpp"
#include "jnrlab/unipoly.hpp"

namespace jnr {

/// Bivariate complex polynomial of bidegree (n, n), a section of O(n, n) on
/// P^1 x P^1. Coefficient at(k, l) multiplies eta^k zeta^l.
///
/// The `normalized` flag marks defining polynomials whose coefficients obey
/// the reality symmetry c[a][b] = (-1)^(n+a+b) conj(c[n-b][n-a]); setting it
/// is checked against that symmetry.
class BiPoly {
 public:
  explicit BiPoly(int n);
  BiPoly(int n, std::vector<Complex> coeffs, bool normalized = false,
         const Tolerances& tol = Tolerances::defaults());

  int charge() const { return n_; }
  Complex at(int k, int l) const { return c_[idx(k, l)]; }
  Complex& at(int k, int l) { return c_[idx(k, l)]; }
  const std::vector<Complex>& coeffs() const { return c_; }
  bool normalized() const { return normalized_; }
  void set_normalized(bool flag, const Tolerances& tol = Tolerances::defaults());
  double max_coeff_mag() const;
  BiPoly scaled(Complex s) const;

  /// p(eta, zeta) in the affine chart, Horner in both variables.
  Complex eval_affine(Complex eta, Complex zeta) const;

  /// Evaluation at homogeneous representatives a (eta slot) and b (zeta
  /// slot): sum c[k][l] a.u1^k a.u0^(n-k) b.u1^l b.u0^(n-l). Equals
  /// a.u0^n b.u0^n p(eta, zeta) where the affine chart applies; the value
  /// scales with the chosen representatives.
  Complex eval_homogeneous(const ProjPoint& a, const ProjPoint& b) const;

  /// The reality involution p -> p*, an involution on coefficients whose
  /// fixed points are the real curves.
  BiPoly reality_transform() const;

  /// max |p - p*| over coefficients, relative to max |coeff|.
  double reality_defect() const;

  /// Values of conj(zeta)^n p(-1/conj(zeta), zeta) along the anti-diagonal,
  /// evaluated homogeneously at unit representatives: `samples` points of a
  /// Fibonacci sphere pushed to the zeta chart, plus zeta = 0 and infinity
  /// (samples + 2 entries). The value is real for real curves; throws
  /// ImaginaryResidueError if any imaginary part exceeds tol.id relative to
  /// the coefficient scale. A real curve misses the anti-diagonal iff the
  /// profile has no zero, and the positive-profile representative is the
  /// normalized one.
  std::vector<double> antidiagonal_profile(
      int samples, const Tolerances& tol = Tolerances::defaults()) const;

  /// Restriction to the generator {eta} x P^1 as a polynomial in zeta,
  /// using the representative exactly as given (no rescaling).
  UniPoly slice_eta(const ProjPoint& eta,
                    double trim_tol = Tolerances::defaults().trim) const;

 private:
  int idx(int k, int l) const { return k * (n_ + 1) + l; }

  int n_ = 1;
  std::vector<Complex> c_;
  bool normalized_ = false;
};

}  // namespace jnr
