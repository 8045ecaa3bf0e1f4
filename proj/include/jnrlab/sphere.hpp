#pragma once

#include <cstdint>
#include <vector>

#include "jnrlab/jnr_data.hpp"
#include "jnrlab/types.hpp"

namespace jnr {

/// The holomorphic sphere q : P^1 -> P^N of JNR data, the projective map
/// with components l_i/(z - g_i) in canonical weights. Evaluation uses the
/// common-denominator polynomial lift l_i prod_{j != i}(z - g_j), which is
/// finite and not all zero everywhere, including z = g_k and infinity.
class HolomorphicSphere {
 public:
  explicit HolomorphicSphere(const JnrData& d);

  int charge() const { return static_cast<int>(poles_.size()) - 1; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<Complex>& poles() const { return poles_; }

  /// Homogeneous lift components at a representative of z.
  std::vector<Complex> evaluate(const ProjPoint& z) const;

  /// Condition number of the (N+1)x(N+1) matrix of evaluations at N+1
  /// generic sample points; finite iff the map is full.
  double fullness_condition() const;

 private:
  std::vector<double> weights_;  // canonical
  std::vector<Complex> poles_;
};

HolomorphicSphere sphere_from_jnr(const JnrData& d);

/// Rotation of the boundary sphere, an SU(2)/{+-1} element in the (a, b)
/// parameters with |a|^2 + |b|^2 = 1.
class Rotation {
 public:
  Rotation(Complex a, Complex b,
           const Tolerances& tol = Tolerances::defaults());

  static Rotation identity() { return {1.0, 0.0}; }

  Complex a() const { return a_; }
  Complex b() const { return b_; }
  Rotation inverse() const { return {std::conj(a_), -b_}; }

  /// g . z = (a z + b)/(conj(a) - conj(b) z), the action moving the poles.
  Complex apply(Complex z) const;
  /// g^{-1} . z = (conj(a) z - b)/(conj(b) z + a).
  Complex apply_inverse(Complex z) const;

 private:
  Complex a_;
  Complex b_;
};

/// Action on JNR data: g . {l_j, g_j} = {l_j/|u_j|, (a g_j + b)/u_j} with
/// u_j = conj(a) - conj(b) g_j. The transformed weights are stored exactly
/// as the formula produces them (no renormalization); this keeps the
/// invariant functions and the inverse round trip exact. Throws
/// PoleAtInfinityError when some |u_j| <= tol.sep.
JnrData rotate(const JnrData& d, const Rotation& g,
               const Tolerances& tol = Tolerances::defaults());

/// psi(eta, zeta) = (-1)^N p(eta, zeta)/eta^N for the curve of d as stored;
/// eta must be nonzero (the homogeneous pairing covers eta = 0, infinity).
Complex psi_value(const JnrData& d, Complex eta, Complex zeta);

/// Max relative defect of the pairing identity
///   psi(eta, zeta) = < q(-1/conj(eta)), q(zeta) >
/// over random samples, with the Hermitian pairing conjugate in the first
/// slot and the common-denominator lift on both sides. Also checks the
/// chart-free form < q(antipode(a)), q(b) > = (-1)^N p(a, b) at the chart
/// poles. Deterministic for a fixed seed.
double pairing_check(const JnrData& d, int samples, std::uint64_t seed = 0);

/// Max |< q(antipode(eta)), q(zeta) >| / (|q||q|) over `points` computed
/// points of the spectral curve (fiber roots of random slices).
double pairing_on_curve(const JnrData& d, int points, std::uint64_t seed = 0);

/// The (N+1)(N+2)/2 invariant functions w_i w_j / |1 + conj(g_i) g_j|^2 as
/// a symmetric matrix, computed on the weights as stored (they scale by t^4
/// under weight rescaling; pass canonical data for the normalized values).
/// Throws AntipodalDegeneracyError when some |1 + conj(g_i) g_j| <= tol.sep.
class InvariantMatrix {
 public:
  InvariantMatrix(int n, std::vector<double> values);
  int charge() const { return n_; }
  int count() const { return (n_ + 1) * (n_ + 2) / 2; }
  double at(int i, int j) const;
  /// Upper triangle (i <= j), row-major: exactly count() values.
  std::vector<double> upper_values() const;

 private:
  int n_;
  std::vector<double> v_;  // full (n+1)^2, symmetric
};

InvariantMatrix invariant_functions(const JnrData& d,
                                    const Tolerances& tol = Tolerances::defaults());

}  // namespace jnr
