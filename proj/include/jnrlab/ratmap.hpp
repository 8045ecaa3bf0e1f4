#pragma once

#include <vector>

#include "jnrlab/jnr_data.hpp"
#include "jnrlab/unipoly.hpp"

namespace jnr {

/// Based rational map P/Q with deg P < deg Q, stored with monic denominator
/// (the numerator carries the remaining scale). Basedness means the value at
/// infinity is 0. Numerator and denominator must share no root within
/// tol.cluster.
class RationalMap {
 public:
  RationalMap(UniPoly num, UniPoly den,
              const Tolerances& tol = Tolerances::defaults());

  const UniPoly& num() const { return num_; }
  const UniPoly& den() const { return den_; }
  int degree() const { return den_.degree(); }
  Complex eval(Complex z) const;

 private:
  UniPoly num_;
  UniPoly den_;
};

/// Closed-form rational map of JNR data:
///   num = sum_{i<j} w_i w_j (g_i - g_j)^2 prod_{k != i,j} (z - g_k)
///   den = (sum w_i) sum_j w_j prod_{k != j} (z - g_k)
/// computed with canonical weight squares w_i.
RationalMap closed_form_map(const JnrData& d,
                            const Tolerances& tol = Tolerances::defaults());

/// Rational map by scattering: Q(z) = p(0, z) for the canonical-weight
/// curve, P(z) = prod(z - g_i) + (-z + sum w_i g_i) Q(z); the two leading
/// orders of P cancel by construction (checked, DegreeCancellationError
/// otherwise). Returns the literal result of this construction, which
/// differs from closed_form_map by the unimodular constant -1.
RationalMap scattering_map(const JnrData& d,
                           const Tolerances& tol = Tolerances::defaults());

struct PhaseComparison {
  Complex phase;  ///< c minimizing |num1 - c num2| on monic-denominator forms
  double defect;  ///< residual, relative; includes denominator mismatch
};

/// Least-squares phase between two maps with equal denominators up to scale.
/// Throws IncompatibleDegreesError when the degrees differ.
PhaseComparison compare_up_to_phase(const RationalMap& m1,
                                    const RationalMap& m2,
                                    const Tolerances& tol = Tolerances::defaults());

/// Coefficients of the projection form of the map: a_i = sum_j l_i w_j
/// (g_i - g_j) with l_i the canonical weights, and the weighted pole mean.
/// sum a_i l_i = 0, so the partial-fraction map is based.
struct ProjectionCoeffs {
  std::vector<Complex> a;
  Complex gamma_mean;
};
ProjectionCoeffs projection_coefficients(const JnrData& d);

/// Partial-fraction evaluation (sum a_i l_i/(z-g_i)) / (sum w_i/(z-g_i));
/// agrees with closed_form_map pointwise, not just up to phase.
Complex eval_projection_map(const ProjectionCoeffs& pc, const JnrData& d,
                            Complex z);

/// Mean-shift form (sum g_i w_i/(z-g_i)) / (sum w_i/(z-g_i)) - <gamma>.
Complex eval_mean_shift_map(const JnrData& d, Complex z);

}  // namespace jnr
