#include "jnrlab/types.hpp"

#include "jnrlab/errors.hpp"

namespace jnr {

const Tolerances& Tolerances::defaults() {
  static const Tolerances t;
  return t;
}

ProjPoint::ProjPoint(Complex u0_, Complex u1_) : u0(u0_), u1(u1_) {
  if (!is_finite(u0) || !is_finite(u1))
    throw ValidationError("projective point with non-finite coordinates");
  if (std::abs(u0) == 0.0 && std::abs(u1) == 0.0)
    throw ValidationError("projective point [0 : 0] is undefined");
}

ProjPoint ProjPoint::unit() const {
  double s = norm();
  return {u0 / s, u1 / s};
}

Complex ProjPoint::to_affine() const {
  if (at_infinity()) throw ValidationError("point at infinity has no affine chart value");
  return u1 / u0;
}

double chordal(const ProjPoint& p, const ProjPoint& q) {
  return std::abs(p.u0 * q.u1 - p.u1 * q.u0) / (p.norm() * q.norm());
}

}  // namespace jnr
