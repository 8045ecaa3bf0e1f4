#include "jnrlab/ratmap.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "jnrlab/errors.hpp"
#include "jnrlab/spectral.hpp"

namespace jnr {

RationalMap::RationalMap(UniPoly num, UniPoly den, const Tolerances& tol)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw ValidationError("rational map needs a nonzero denominator");
  Complex lead = den_.lead();
  num_ = num_.scaled(1.0 / lead);
  den_ = den_.scaled(1.0 / lead);
  if (num_.degree() >= den_.degree())
    throw ValidationError("map is not based: numerator degree must be below denominator degree");
  if (num_.degree() >= 1 && den_.degree() >= 1) {
    for (Complex rn : roots(num_, tol))
      for (Complex rd : roots(den_, tol))
        if (std::abs(rn - rd) < tol.cluster)
          throw ValidationError("numerator and denominator share a root");
  }
}

Complex RationalMap::eval(Complex z) const {
  return num_.eval(z) / den_.eval(z);
}

namespace {

UniPoly product_excluding(const std::vector<Complex>& g, int skip_a,
                          int skip_b = -1) {
  std::vector<Complex> r;
  for (int j = 0; j < static_cast<int>(g.size()); ++j)
    if (j != skip_a && j != skip_b) r.push_back(g[j]);
  return UniPoly::from_roots(r);
}

}  // namespace

RationalMap closed_form_map(const JnrData& d, const Tolerances& tol) {
  const auto& g = d.poles();
  std::vector<double> w = d.canonical_weight_squares();
  const int m = d.size();

  UniPoly num;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      Complex diff = g[i] - g[j];
      num = num + product_excluding(g, i, j).scaled(w[i] * w[j] * diff * diff);
    }
  UniPoly den;
  for (int j = 0; j < m; ++j) den = den + product_excluding(g, j).scaled(w[j]);
  return RationalMap(std::move(num), std::move(den), tol);
}

RationalMap scattering_map(const JnrData& d, const Tolerances& tol) {
  const auto& g = d.poles();
  std::vector<double> w = d.canonical_weight_squares();
  const int n = d.charge();

  BiPoly curve = spectral_curve_from_squares(w, g);
  UniPoly den = curve.slice_eta(ProjPoint::affine(0.0), tol.trim);

  Complex b = 0.0;
  for (int i = 0; i <= n; ++i) b += w[i] * g[i];

  // P = prod(z - g_i) + (-z + b) Q; assemble untrimmed so the cancellation
  // of the two leading orders can be verified before dropping them.
  UniPoly full = UniPoly::from_roots(g);
  UniPoly linear({b, -1.0}, 0.0);
  UniPoly prod = linear * den;
  std::vector<Complex> praw(n + 2, 0.0);
  for (int k = 0; k <= n + 1; ++k) praw[k] = full.coeff(k) + prod.coeff(k);

  double scale = 0.0;
  for (const auto& c : praw) scale = std::max(scale, std::abs(c));
  if (std::abs(praw[n + 1]) >= tol.id * scale ||
      std::abs(praw[n]) >= tol.id * scale) {
    std::ostringstream os;
    os << "scattering numerator kept order-" << n << "/" << n + 1
       << " terms of size " << std::abs(praw[n]) << ", " << std::abs(praw[n + 1]);
    throw DegreeCancellationError(os.str());
  }
  praw.resize(n);
  return RationalMap(UniPoly(std::move(praw), tol.trim), std::move(den), tol);
}

PhaseComparison compare_up_to_phase(const RationalMap& m1,
                                    const RationalMap& m2,
                                    const Tolerances& tol) {
  (void)tol;
  if (m1.den().degree() != m2.den().degree())
    throw IncompatibleDegreesError("maps have different degrees");

  auto norm2 = [](const UniPoly& p) {
    double s = 0.0;
    for (const auto& c : p.coeffs()) s += std::norm(c);
    return s;
  };

  // Denominators are monic; their mismatch is part of the defect.
  double den_resid = 0.0;
  for (int k = 0; k <= m1.den().degree(); ++k)
    den_resid += std::norm(m1.den().coeff(k) - m2.den().coeff(k));
  double den_defect = std::sqrt(den_resid / norm2(m1.den()));

  int top = std::max(m1.num().degree(), m2.num().degree());
  Complex dot = 0.0;
  double n2 = 0.0, n1 = 0.0;
  for (int k = 0; k <= top; ++k) {
    dot += std::conj(m2.num().coeff(k)) * m1.num().coeff(k);
    n2 += std::norm(m2.num().coeff(k));
    n1 += std::norm(m1.num().coeff(k));
  }
  if (n2 == 0.0 || n1 == 0.0) {
    double defect = (n1 == n2) ? den_defect : 1.0;
    return {Complex(1.0), defect};
  }
  Complex c = dot / n2;
  double resid = 0.0;
  for (int k = 0; k <= top; ++k)
    resid += std::norm(m1.num().coeff(k) - c * m2.num().coeff(k));
  return {c, std::max(std::sqrt(resid / n1), den_defect)};
}

ProjectionCoeffs projection_coefficients(const JnrData& d) {
  const auto& g = d.poles();
  std::vector<double> w = d.canonical_weight_squares();
  const int m = d.size();

  ProjectionCoeffs pc;
  pc.gamma_mean = 0.0;
  for (int j = 0; j < m; ++j) pc.gamma_mean += w[j] * g[j];
  pc.a.resize(m);
  for (int i = 0; i < m; ++i) {
    Complex s = 0.0;
    for (int j = 0; j < m; ++j) s += w[j] * (g[i] - g[j]);
    pc.a[i] = std::sqrt(w[i]) * s;
  }
  return pc;
}

Complex eval_projection_map(const ProjectionCoeffs& pc, const JnrData& d,
                            Complex z) {
  const auto& g = d.poles();
  std::vector<double> w = d.canonical_weight_squares();
  Complex num = 0.0, den = 0.0;
  for (int i = 0; i < d.size(); ++i) {
    Complex inv = 1.0 / (z - g[i]);
    num += pc.a[i] * std::sqrt(w[i]) * inv;
    den += w[i] * inv;
  }
  return num / den;
}

Complex eval_mean_shift_map(const JnrData& d, Complex z) {
  const auto& g = d.poles();
  std::vector<double> w = d.canonical_weight_squares();
  Complex num = 0.0, den = 0.0, mean = 0.0;
  for (int i = 0; i < d.size(); ++i) {
    Complex inv = 1.0 / (z - g[i]);
    num += g[i] * w[i] * inv;
    den += w[i] * inv;
    mean += w[i] * g[i];
  }
  return num / den - mean;
}

}  // namespace jnr
