#include "jnrlab/bipoly.hpp"

#include <algorithm>
#include <sstream>

#include "jnrlab/errors.hpp"

namespace jnr {

BiPoly::BiPoly(int n) : n_(n) {
  if (n < 1) throw ValidationError("bidegree must be at least (1, 1)");
  c_.assign(static_cast<std::size_t>(n + 1) * (n + 1), 0.0);
}

BiPoly::BiPoly(int n, std::vector<Complex> coeffs, bool normalized,
               const Tolerances& tol)
    : n_(n), c_(std::move(coeffs)) {
  if (n < 1) throw ValidationError("bidegree must be at least (1, 1)");
  if (c_.size() != static_cast<std::size_t>(n + 1) * (n + 1))
    throw ValidationError("coefficient matrix must be (n+1) x (n+1)");
  for (const auto& v : c_)
    if (!is_finite(v)) throw ValidationError("curve coefficient is not finite");
  if (normalized) set_normalized(true, tol);
}

void BiPoly::set_normalized(bool flag, const Tolerances& tol) {
  if (flag && reality_defect() > tol.id) {
    std::ostringstream os;
    os << "normalized flag rejected: reality symmetry defect "
       << reality_defect() << " exceeds " << tol.id;
    throw ValidationError(os.str());
  }
  normalized_ = flag;
}

double BiPoly::max_coeff_mag() const {
  double m = 0.0;
  for (const auto& v : c_) m = std::max(m, std::abs(v));
  return m;
}

BiPoly BiPoly::scaled(Complex s) const {
  BiPoly r(n_);
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] * s;
  return r;
}

Complex BiPoly::eval_affine(Complex eta, Complex zeta) const {
  Complex outer = 0.0;
  for (int k = n_; k >= 0; --k) {
    Complex inner = 0.0;
    for (int l = n_; l >= 0; --l) inner = inner * zeta + at(k, l);
    outer = outer * eta + inner;
  }
  return outer;
}

Complex BiPoly::eval_homogeneous(const ProjPoint& a, const ProjPoint& b) const {
  const int m = n_ + 1;
  std::vector<Complex> a0(m), a1(m), b0(m), b1(m);
  a0[0] = a1[0] = b0[0] = b1[0] = 1.0;
  for (int k = 1; k < m; ++k) {
    a0[k] = a0[k - 1] * a.u0;
    a1[k] = a1[k - 1] * a.u1;
    b0[k] = b0[k - 1] * b.u0;
    b1[k] = b1[k - 1] * b.u1;
  }
  Complex s = 0.0;
  for (int k = 0; k <= n_; ++k) {
    Complex row = 0.0;
    for (int l = 0; l <= n_; ++l) row += at(k, l) * b1[l] * b0[n_ - l];
    s += row * a1[k] * a0[n_ - k];
  }
  return s;
}

BiPoly BiPoly::reality_transform() const {
  BiPoly r(n_);
  for (int a = 0; a <= n_; ++a)
    for (int b = 0; b <= n_; ++b) {
      double sign = ((n_ + a + b) & 1) ? -1.0 : 1.0;
      r.at(a, b) = sign * std::conj(at(n_ - b, n_ - a));
    }
  r.normalized_ = normalized_;
  return r;
}

double BiPoly::reality_defect() const {
  double scale = max_coeff_mag();
  if (scale == 0.0) return 0.0;
  double worst = 0.0;
  for (int a = 0; a <= n_; ++a)
    for (int b = 0; b <= n_; ++b) {
      double sign = ((n_ + a + b) & 1) ? -1.0 : 1.0;
      Complex star = sign * std::conj(at(n_ - b, n_ - a));
      worst = std::max(worst, std::abs(at(a, b) - star));
    }
  return worst / scale;
}

namespace {

// Fibonacci sphere pushed to the chart by stereographic projection.
Complex fibonacci_chart_point(int m, int samples) {
  const double golden_angle = M_PI * (3.0 - std::sqrt(5.0));
  double h = 1.0 - 2.0 * (m + 0.5) / samples;  // in (-1, 1)
  double r = std::sqrt(std::max(0.0, 1.0 - h * h));
  double phi = golden_angle * m;
  return Complex(r * std::cos(phi), r * std::sin(phi)) / (1.0 - h);
}

}  // namespace

std::vector<double> BiPoly::antidiagonal_profile(int samples,
                                                 const Tolerances& tol) const {
  if (samples < 1) throw ValidationError("profile needs at least one sample");
  double scale = max_coeff_mag();
  if (scale == 0.0) scale = 1.0;

  std::vector<double> out;
  out.reserve(samples + 2);
  auto push = [&](const ProjPoint& b) {
    Complex v = eval_homogeneous(b.antipode(), b);
    if (std::abs(v.imag()) >= tol.id * std::max(scale, std::abs(v))) {
      std::ostringstream os;
      os << "anti-diagonal profile has imaginary residue "
         << std::abs(v.imag()) / scale << " (curve is not real)";
      throw ImaginaryResidueError(os.str());
    }
    out.push_back(v.real());
  };

  push(ProjPoint::affine(0.0));
  push(ProjPoint::infinity());
  for (int m = 0; m < samples; ++m)
    push(ProjPoint::affine(fibonacci_chart_point(m, samples)).unit());
  return out;
}

UniPoly BiPoly::slice_eta(const ProjPoint& eta, double trim_tol) const {
  const int m = n_ + 1;
  std::vector<Complex> a0(m), a1(m);
  a0[0] = a1[0] = 1.0;
  for (int k = 1; k < m; ++k) {
    a0[k] = a0[k - 1] * eta.u0;
    a1[k] = a1[k - 1] * eta.u1;
  }
  std::vector<Complex> coeffs(m, 0.0);
  for (int l = 0; l <= n_; ++l)
    for (int k = 0; k <= n_; ++k)
      coeffs[l] += at(k, l) * a1[k] * a0[n_ - k];
  return UniPoly(std::move(coeffs), trim_tol);
}

}  // namespace jnr
