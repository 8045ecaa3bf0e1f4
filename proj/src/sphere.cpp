#include "jnrlab/sphere.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "jnrlab/errors.hpp"
#include "jnrlab/spectral.hpp"

namespace jnr {

HolomorphicSphere::HolomorphicSphere(const JnrData& d) : poles_(d.poles()) {
  double s = std::sqrt(d.weight_sq_sum());
  weights_.resize(d.size());
  for (int i = 0; i < d.size(); ++i) weights_[i] = d.weight(i) / s;
}

HolomorphicSphere sphere_from_jnr(const JnrData& d) {
  return HolomorphicSphere(d);
}

std::vector<Complex> HolomorphicSphere::evaluate(const ProjPoint& z) const {
  const int m = static_cast<int>(poles_.size());
  std::vector<Complex> out(m);
  for (int i = 0; i < m; ++i) {
    Complex v = weights_[i];
    for (int j = 0; j < m; ++j)
      if (j != i) v *= z.u1 - poles_[j] * z.u0;
    out[i] = v;
  }
  return out;
}

double HolomorphicSphere::fullness_condition() const {
  const int m = static_cast<int>(poles_.size());
  // Deterministic generic sample ring, nudged outward until it clears the
  // poles.
  double rho = 1.5;
  for (int attempt = 0; attempt < 64; ++attempt) {
    bool clear = true;
    for (int k = 0; k < m && clear; ++k) {
      Complex z = rho * std::polar(1.0, 2.0 * M_PI * k / m + 0.37);
      for (const auto& g : poles_)
        if (std::abs(z - g) < 0.05) clear = false;
    }
    if (clear) break;
    rho *= 1.173;
  }
  Eigen::MatrixXcd M(m, m);
  for (int k = 0; k < m; ++k) {
    Complex z = rho * std::polar(1.0, 2.0 * M_PI * k / m + 0.37);
    auto row = evaluate(ProjPoint::affine(z).unit());
    for (int i = 0; i < m; ++i) M(k, i) = row[i];
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
  double smin = svd.singularValues()(m - 1);
  double smax = svd.singularValues()(0);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return smax / smin;
}

Rotation::Rotation(Complex a, Complex b, const Tolerances& tol)
    : a_(a), b_(b) {
  if (!is_finite(a) || !is_finite(b))
    throw ValidationError("rotation parameters must be finite");
  double n = std::norm(a_) + std::norm(b_);
  if (std::abs(n - 1.0) > 1e3 * tol.id) {
    std::ostringstream os;
    os << "rotation parameters must satisfy |a|^2 + |b|^2 = 1 (got " << n << ")";
    throw ValidationError(os.str());
  }
  // Renormalize so round trips stay exact at machine precision.
  double s = std::sqrt(n);
  a_ /= s;
  b_ /= s;
}

Complex Rotation::apply(Complex z) const {
  return (a_ * z + b_) / (std::conj(a_) - std::conj(b_) * z);
}

Complex Rotation::apply_inverse(Complex z) const {
  return (std::conj(a_) * z - b_) / (std::conj(b_) * z + a_);
}

JnrData rotate(const JnrData& d, const Rotation& g, const Tolerances& tol) {
  const int m = d.size();
  std::vector<double> w(m);
  std::vector<Complex> p(m);
  for (int i = 0; i < m; ++i) {
    Complex u = std::conj(g.a()) - std::conj(g.b()) * d.pole(i);
    if (std::abs(u) <= tol.sep) {
      std::ostringstream os;
      os << "pole " << i << " maps to infinity; compose with a preliminary "
         << "rotation first";
      throw PoleAtInfinityError(os.str());
    }
    w[i] = d.weight(i) / std::abs(u);
    p[i] = (g.a() * d.pole(i) + g.b()) / u;
  }
  return JnrData(std::move(w), std::move(p), tol);
}

Complex psi_value(const JnrData& d, Complex eta, Complex zeta) {
  if (std::abs(eta) == 0.0)
    throw ValidationError("psi needs eta != 0; use the homogeneous pairing");
  int n = d.charge();
  double sign = (n & 1) ? -1.0 : 1.0;
  return sign * spectral_curve(d).eval_affine(eta, zeta) / ipow(eta, n);
}

namespace {

Complex hermitian_pairing(const std::vector<Complex>& u,
                          const std::vector<Complex>& v) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
  return s;
}

double lift_norm(const std::vector<Complex>& u) {
  double s = 0.0;
  for (const auto& c : u) s += std::norm(c);
  return std::sqrt(s);
}

Complex sample_disk(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> unif(-radius, radius);
  for (;;) {
    Complex z(unif(rng), unif(rng));
    if (std::abs(z) <= radius) return z;
  }
}

}  // namespace

double pairing_check(const JnrData& d, int samples, std::uint64_t seed) {
  if (samples < 1) throw ValidationError("pairing check needs samples >= 1");
  const int n = d.charge();
  const double sign = (n & 1) ? -1.0 : 1.0;
  HolomorphicSphere q(d);
  BiPoly p = spectral_curve_from_squares(d.canonical_weight_squares(), d.poles());

  std::mt19937_64 rng(seed);
  double worst = 0.0;

  auto check_homogeneous = [&](const ProjPoint& a, const ProjPoint& b) {
    auto qa = q.evaluate(a.antipode());
    auto qb = q.evaluate(b);
    Complex lhs = sign * p.eval_homogeneous(a, b);
    Complex rhs = hermitian_pairing(qa, qb);
    double scale = lift_norm(qa) * lift_norm(qb) + 1e-300;
    worst = std::max(worst, std::abs(lhs - rhs) / scale);
  };

  for (int s = 0; s < samples; ++s) {
    Complex eta = sample_disk(rng, 3.0);
    while (std::abs(eta) < 0.05) eta = sample_disk(rng, 3.0);
    Complex zeta = sample_disk(rng, 3.0);

    // Affine identity: psi(eta, zeta) against the pairing with the chart
    // representative of the antipode in the first slot.
    Complex psi = sign * p.eval_affine(eta, zeta) / ipow(eta, n);
    auto qa = q.evaluate(ProjPoint::affine(-1.0 / std::conj(eta)));
    auto qb = q.evaluate(ProjPoint::affine(zeta));
    Complex rhs = hermitian_pairing(qa, qb);
    double scale = lift_norm(qa) * lift_norm(qb) + 1e-300;
    worst = std::max(worst, std::abs(psi - rhs) / scale);

    // Chart-free form of the same identity at the same sample.
    check_homogeneous(ProjPoint::affine(eta).unit(),
                      ProjPoint::affine(zeta).unit());
  }

  // Chart poles, where only the homogeneous form applies.
  const ProjPoint zero = ProjPoint::affine(0.0);
  const ProjPoint inf = ProjPoint::infinity();
  for (const auto& a : {zero, inf})
    for (const auto& b : {zero, inf}) check_homogeneous(a, b);
  return worst;
}

double pairing_on_curve(const JnrData& d, int points, std::uint64_t seed) {
  if (points < 1) throw ValidationError("need at least one curve point");
  HolomorphicSphere q(d);
  BiPoly p = spectral_curve_from_squares(d.canonical_weight_squares(), d.poles());

  std::mt19937_64 rng(seed);
  double worst = 0.0;
  int found = 0;
  while (found < points) {
    Complex eta = sample_disk(rng, 2.5);
    if (std::abs(eta) < 0.1) continue;
    UniPoly slice = p.slice_eta(ProjPoint::affine(eta));
    if (slice.degree() < 1) continue;
    for (Complex zeta : roots(slice)) {
      if (found >= points) break;
      auto qa = q.evaluate(ProjPoint::affine(eta).antipode());
      auto qb = q.evaluate(ProjPoint::affine(zeta));
      double scale = lift_norm(qa) * lift_norm(qb) + 1e-300;
      worst = std::max(worst,
                       std::abs(hermitian_pairing(qa, qb)) / scale);
      ++found;
    }
  }
  return worst;
}

InvariantMatrix::InvariantMatrix(int n, std::vector<double> values)
    : n_(n), v_(std::move(values)) {
  if (v_.size() != static_cast<std::size_t>(n + 1) * (n + 1))
    throw ValidationError("invariant matrix must be (n+1) x (n+1)");
}

double InvariantMatrix::at(int i, int j) const {
  return v_[i * (n_ + 1) + j];
}

std::vector<double> InvariantMatrix::upper_values() const {
  std::vector<double> out;
  out.reserve(count());
  for (int i = 0; i <= n_; ++i)
    for (int j = i; j <= n_; ++j) out.push_back(at(i, j));
  return out;
}

InvariantMatrix invariant_functions(const JnrData& d, const Tolerances& tol) {
  const int m = d.size();
  std::vector<double> v(static_cast<std::size_t>(m) * m, 0.0);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      Complex u = 1.0 + std::conj(d.pole(i)) * d.pole(j);
      if (std::abs(u) <= tol.sep) {
        std::ostringstream os;
        os << "poles " << i << " and " << j
           << " are antipodal: |1 + conj(g_i) g_j| vanishes";
        throw AntipodalDegeneracyError(os.str());
      }
      double wi = d.weight(i) * d.weight(i);
      double wj = d.weight(j) * d.weight(j);
      double val = wi * wj / std::norm(u);
      v[i * m + j] = val;
      v[j * m + i] = val;
    }
  return InvariantMatrix(m - 1, std::move(v));
}

}  // namespace jnr
