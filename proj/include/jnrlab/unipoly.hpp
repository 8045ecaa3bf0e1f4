#pragma once

#include <vector>

#include "jnrlab/types.hpp"

namespace jnr {

/// Univariate complex polynomial, coefficients stored lowest degree first.
/// Construction trims trailing coefficients smaller than trim_tol relative
/// to the largest one; the zero polynomial has an empty coefficient vector
/// and degree -1.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Complex> coeffs,
                   double trim_tol = Tolerances::defaults().trim);

  static UniPoly constant(Complex c);
  static UniPoly from_roots(const std::vector<Complex>& roots,
                            Complex lead = 1.0);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  Complex coeff(int k) const;  // 0 beyond the stored degree
  Complex lead() const;        // throws ZeroPolynomialError on zero
  double max_coeff_mag() const;

  Complex eval(Complex z) const;  // Horner
  UniPoly derivative() const;
  UniPoly monic() const;
  UniPoly scaled(Complex s) const;

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);

 private:
  std::vector<Complex> coeffs_;
};

/// All complex roots with multiplicity via the companion-matrix
/// eigenproblem, Newton-polished. Tight eigenvalue clusters are replaced by
/// their centroid when that lowers the residual, so multiple roots land
/// within tol.cluster of the true root. Throws ZeroPolynomialError on the
/// zero polynomial; a nonzero constant has no roots.
std::vector<Complex> roots(const UniPoly& q,
                           const Tolerances& tol = Tolerances::defaults());

}  // namespace jnr
