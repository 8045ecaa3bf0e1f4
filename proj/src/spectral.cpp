#include "jnrlab/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "jnrlab/errors.hpp"

namespace jnr {

namespace {

using ComplexLD = std::complex<long double>;

ComplexLD to_ld(Complex z) { return {z.real(), z.imag()}; }

// The construction accumulates in extended precision and rounds once at
// the end; weight recovery divides tiny grid-point residuals by the
// coefficient scale, so accumulated convolution noise would dominate the
// round trip for lopsided weights.

// prod_{j != skip} (zeta - g_j), lowest degree first.
std::vector<ComplexLD> zeta_factor(const std::vector<Complex>& g, int skip) {
  std::vector<ComplexLD> c{ComplexLD(1.0L, 0.0L)};
  for (int j = 0; j < static_cast<int>(g.size()); ++j) {
    if (j == skip) continue;
    ComplexLD root = to_ld(g[j]);
    c.push_back(0.0L);
    for (int k = static_cast<int>(c.size()) - 1; k > 0; --k)
      c[k] = c[k - 1] - root * c[k];
    c[0] *= -root;
  }
  return c;
}

// prod_{j != skip} (1 + eta conj(g_j)), lowest degree first.
std::vector<ComplexLD> eta_factor(const std::vector<Complex>& g, int skip) {
  std::vector<ComplexLD> c{ComplexLD(1.0L, 0.0L)};
  for (int j = 0; j < static_cast<int>(g.size()); ++j) {
    if (j == skip) continue;
    ComplexLD cg = std::conj(to_ld(g[j]));
    std::vector<ComplexLD> next(c.size() + 1, 0.0L);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k] += c[k];
      next[k + 1] += cg * c[k];
    }
    c = std::move(next);
  }
  return c;
}

BiPoly round_to_bipoly(int n, const std::vector<ComplexLD>& acc) {
  std::vector<Complex> out(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i)
    out[i] = Complex(static_cast<double>(acc[i].real()),
                     static_cast<double>(acc[i].imag()));
  return BiPoly(n, std::move(out));
}

}  // namespace

BiPoly spectral_curve_from_squares(const std::vector<double>& wsq,
                                   const std::vector<Complex>& poles) {
  if (wsq.size() != poles.size() || poles.size() < 2)
    throw ValidationError("need matching weight-square and pole lists");
  int n = static_cast<int>(poles.size()) - 1;
  std::vector<ComplexLD> acc(static_cast<std::size_t>(n + 1) * (n + 1), 0.0L);
  for (int i = 0; i <= n; ++i) {
    std::vector<ComplexLD> pz = zeta_factor(poles, i);
    std::vector<ComplexLD> ph = eta_factor(poles, i);
    long double w = wsq[i];
    for (int k = 0; k < static_cast<int>(ph.size()); ++k) {
      ComplexLD hk = ph[k] * w;
      for (int l = 0; l < static_cast<int>(pz.size()); ++l)
        acc[static_cast<std::size_t>(k) * (n + 1) + l] += hk * pz[l];
    }
  }
  BiPoly p = round_to_bipoly(n, acc);
  p.set_normalized(true);
  return p;
}

BiPoly spectral_curve(const JnrData& d) {
  std::vector<double> wsq(d.size());
  for (int i = 0; i < d.size(); ++i) wsq[i] = d.weight(i) * d.weight(i);
  return spectral_curve_from_squares(wsq, d.poles());
}

BiPoly degenerate_limit_curve(const JnrData& d, int k) {
  if (k < 0 || k > d.charge()) throw ValidationError("pole index out of range");
  int n = d.charge();
  std::vector<ComplexLD> acc(static_cast<std::size_t>(n + 1) * (n + 1), 0.0L);
  std::vector<ComplexLD> pz = zeta_factor(d.poles(), k);
  std::vector<ComplexLD> ph = eta_factor(d.poles(), k);
  for (int a = 0; a < static_cast<int>(ph.size()); ++a)
    for (int b = 0; b < static_cast<int>(pz.size()); ++b)
      acc[static_cast<std::size_t>(a) * (n + 1) + b] = ph[a] * pz[b];
  BiPoly p = round_to_bipoly(n, acc);
  p.set_normalized(true);
  return p;
}

Grid::Grid(std::vector<Complex> poles, const Tolerances& tol)
    : poles_(std::move(poles)) {
  if (poles_.size() < 2) throw ValidationError("a grid needs at least two poles");
  for (std::size_t i = 0; i < poles_.size(); ++i) {
    if (!is_finite(poles_[i])) throw ValidationError("grid pole is not finite");
    for (std::size_t j = i + 1; j < poles_.size(); ++j)
      if (std::abs(poles_[i] - poles_[j]) <= tol.sep) {
        std::ostringstream os;
        os << "poles " << i << " and " << j << " coincide within tau_sep";
        throw DuplicatePolesError(os.str());
      }
  }
}

std::pair<ProjPoint, ProjPoint> Grid::point(int i, int j) const {
  return {ProjPoint::affine(poles_[i]).antipode(), ProjPoint::affine(poles_[j])};
}

std::vector<std::pair<int, int>> Grid::index_pairs(bool closure) const {
  std::vector<std::pair<int, int>> out;
  int m = static_cast<int>(poles_.size());
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (closure || i != j) out.emplace_back(i, j);
  return out;
}

std::vector<std::pair<ProjPoint, ProjPoint>> Grid::points() const {
  std::vector<std::pair<ProjPoint, ProjPoint>> out;
  for (auto [i, j] : index_pairs(false)) out.push_back(point(i, j));
  return out;
}

std::vector<std::pair<ProjPoint, ProjPoint>> Grid::closure_points() const {
  std::vector<std::pair<ProjPoint, ProjPoint>> out;
  for (auto [i, j] : index_pairs(true)) out.push_back(point(i, j));
  return out;
}

Grid make_grid(const std::vector<Complex>& poles, const Tolerances& tol) {
  return Grid(poles, tol);
}

GridCheck verify_grid_on_curve(const BiPoly& p,
                               const std::vector<Complex>& poles,
                               const Tolerances& tol) {
  if (static_cast<int>(poles.size()) != p.charge() + 1)
    throw ValidationError("pole count must be bidegree + 1");
  double scale = p.max_coeff_mag();
  if (scale == 0.0) throw ValidationError("zero curve admits every grid");
  Grid grid(poles, tol);
  GridCheck check;
  for (auto [i, j] : grid.index_pairs(false)) {
    auto [a, b] = grid.point(i, j);
    double v = std::abs(p.eval_homogeneous(a.unit(), b.unit())) / scale;
    if (v > check.defect) {
      check.defect = v;
      check.worst_i = i;
      check.worst_j = j;
    }
  }
  check.pass = check.defect < tol.id;
  return check;
}

namespace {

// Unimodular factor making the curve real with a positive anti-diagonal
// profile, without touching the coefficients.
Complex real_positive_phase(const BiPoly& p, const Tolerances& tol) {
  BiPoly star = p.reality_transform();
  Complex num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
    num += star.coeffs()[i] * std::conj(p.coeffs()[i]);
    den += std::norm(p.coeffs()[i]);
  }
  if (den == 0.0) throw ValidationError("cannot normalize the zero curve");
  Complex rho = num / den;
  if (std::abs(std::abs(rho) - 1.0) > 1e-6)
    throw ValidationError("curve is not real up to a constant");
  // p* = (conj(mu)/mu) p for a curve mu * (real curve); undo the phase.
  Complex phase = std::polar(1.0, std::arg(rho) / 2.0);

  double scale = p.max_coeff_mag();
  double worst = 0.0;
  for (std::size_t i = 0; i < p.coeffs().size(); ++i)
    worst = std::max(worst, std::abs(phase * p.coeffs()[i] -
                                     std::conj(phase) * star.coeffs()[i]));
  if (worst > 10.0 * tol.id * scale)
    throw ValidationError("curve is not real up to a constant");

  // Fix the sign by the anti-diagonal value; fall back to sampling when the
  // zeta = 0 sample is too small to trust.
  ProjPoint b0 = ProjPoint::affine(0.0);
  Complex v = phase * p.eval_homogeneous(b0.antipode(), b0);
  if (std::abs(v) < 1e-6 * scale) {
    double best = 0.0;
    for (int m = 0; m < 32; ++m) {
      ProjPoint b = ProjPoint::affine(Complex(std::cos(0.7 * m),
                                              std::sin(0.7 * m)) *
                                      (0.3 + 0.1 * m))
                        .unit();
      Complex w = phase * p.eval_homogeneous(b.antipode(), b);
      if (std::abs(w.real()) > std::abs(best)) best = w.real();
    }
    v = best;
  }
  return v.real() < 0.0 ? -phase : phase;
}

// Extended-precision evaluation at the weight-recovery representatives
// [conj(g) : -1], [1 : g]. The value there is a small residual of large
// coefficient terms, so double precision would cap the recoverable accuracy.
ComplexLD recovery_numerator(const BiPoly& p, Complex pole) {
  const int n = p.charge();
  ComplexLD a0(pole.real(), -pole.imag());  // conj(g)
  const ComplexLD a1(-1.0L, 0.0L);
  const ComplexLD g(pole.real(), pole.imag());
  std::vector<ComplexLD> pa0(n + 1), pa1(n + 1), pb1(n + 1);
  pa0[0] = pa1[0] = pb1[0] = 1.0L;
  for (int k = 1; k <= n; ++k) {
    pa0[k] = pa0[k - 1] * a0;
    pa1[k] = pa1[k - 1] * a1;
    pb1[k] = pb1[k - 1] * g;
  }
  ComplexLD sum = 0.0L;
  for (int k = 0; k <= n; ++k)
    for (int l = 0; l <= n; ++l) {
      Complex c = p.at(k, l);
      sum += ComplexLD(c.real(), c.imag()) * pa1[k] * pa0[n - k] * pb1[l];
    }
  return sum;
}

}  // namespace

BiPoly normalize_real_positive(const BiPoly& p, const Tolerances& tol) {
  BiPoly q = p.scaled(real_positive_phase(p, tol));
  Tolerances relaxed = tol;
  relaxed.id *= 10.0;
  q.set_normalized(true, relaxed);
  return q;
}

JnrData recover_weights(const BiPoly& p, const std::vector<Complex>& poles,
                        const Tolerances& tol) {
  GridCheck check = verify_grid_on_curve(p, poles, tol);
  if (!check.pass) {
    std::ostringstream os;
    os << "curve does not contain the grid of the given poles (defect "
       << check.defect << ", worst point " << check.worst_i << ","
       << check.worst_j << ")";
    throw GridMismatchError(os.str());
  }
  Complex phase = real_positive_phase(p, tol);
  const ComplexLD phase_ld(phase.real(), phase.imag());
  int n = p.charge();
  std::vector<double> wsq(n + 1);
  for (int i = 0; i <= n; ++i) {
    // conj(g_i)^N q(-1/conj(g_i), g_i) via the representatives
    // [conj(g_i) : -1] and [1 : g_i]; legal at g_i = 0. The normalizing
    // phase multiplies the value rather than the matrix.
    ComplexLD numv = phase_ld * recovery_numerator(p, poles[i]);
    long double denv = 1.0L;
    for (int j = 0; j <= n; ++j)
      if (j != i) denv *= std::norm(ComplexLD(poles[i].real(), poles[i].imag()) -
                                    ComplexLD(poles[j].real(), poles[j].imag()));
    ComplexLD lam2_ld = numv / denv;
    Complex lam2(static_cast<double>(lam2_ld.real()),
                 static_cast<double>(lam2_ld.imag()));
    if (lam2.real() <= 0.0 ||
        std::abs(lam2.imag()) > 1e3 * tol.id * std::max(1.0, std::abs(lam2))) {
      std::ostringstream os;
      os << "recovered weight square " << i << " = (" << lam2.real() << ", "
         << lam2.imag() << ") is not positive real";
      throw NegativeWeightError(os.str());
    }
    wsq[i] = lam2.real();
  }
  double total = std::accumulate(wsq.begin(), wsq.end(), 0.0);
  std::vector<double> w(n + 1);
  for (int i = 0; i <= n; ++i) w[i] = std::sqrt(wsq[i] / total);
  return JnrData(std::move(w), poles, tol);
}

namespace {

// Homogeneous factors of the section: numerator (b1 - g b0), denominator
// (a0 + a1 conj(g)).
Complex num_factor(const ProjPoint& b, Complex g) { return b.u1 - g * b.u0; }
Complex den_factor(const ProjPoint& a, Complex g) {
  return a.u0 + a.u1 * std::conj(g);
}

}  // namespace

SectionValue section_value(const JnrData& d, const ProjPoint& eta,
                           const ProjPoint& zeta, const Tolerances& tol) {
  const auto& g = d.poles();
  const int m = d.size();

  // Locate the nearest closure grid point (antipode(g_i), g_j).
  double best = std::numeric_limits<double>::infinity();
  int bi = -1, bj = -1;
  for (int i = 0; i < m; ++i) {
    double de = chordal(eta, ProjPoint::affine(g[i]).antipode());
    for (int j = 0; j < m; ++j) {
      double dz = chordal(zeta, ProjPoint::affine(g[j]));
      double dist = std::max(de, dz);
      if (dist < best) {
        best = dist;
        bi = i;
        bj = j;
      }
    }
  }

  if (best < tol.near) {
    if (bi == bj)
      throw PoleOffCurveError(
          "query sits on the anti-diagonal closure point, where the curve "
          "does not pass");
    // Resolve the vanishing pair (zeta - g_bj)/(1 + eta conj(g_bi)) along
    // the curve: p = U (zeta - g_bj) + V (1 + eta conj(g_bi)) + W (both),
    // so the ratio is -V/(U + W (1 + eta conj(g_bi))).
    Complex U = d.weight(bi) * d.weight(bi);
    for (int l = 0; l < m; ++l) {
      if (l != bi && l != bj) U *= num_factor(zeta, g[l]);
      if (l != bi) U *= den_factor(eta, g[l]);
    }
    Complex V = d.weight(bj) * d.weight(bj);
    for (int l = 0; l < m; ++l) {
      if (l != bj) V *= num_factor(zeta, g[l]);
      if (l != bi && l != bj) V *= den_factor(eta, g[l]);
    }
    Complex W = 0.0;
    for (int i = 0; i < m; ++i) {
      if (i == bi || i == bj) continue;
      Complex t = d.weight(i) * d.weight(i);
      for (int l = 0; l < m; ++l) {
        if (l != i && l != bj) t *= num_factor(zeta, g[l]);
        if (l != i && l != bi) t *= den_factor(eta, g[l]);
      }
      W += t;
    }
    Complex sigma_num = 1.0, sigma_den = 1.0;
    for (int l = 0; l < m; ++l) {
      if (l != bj) sigma_num *= num_factor(zeta, g[l]);
      if (l != bi) sigma_den *= den_factor(eta, g[l]);
    }
    Complex ratio = -V / (U + W * den_factor(eta, g[bi]));
    return {ratio * sigma_num / sigma_den, true};
  }

  Complex num = 1.0, den = 1.0;
  double den_scale = 1.0;
  for (int l = 0; l < m; ++l) {
    num *= num_factor(zeta, g[l]);
    den *= den_factor(eta, g[l]);
    den_scale *= std::abs(eta.u0) + std::abs(eta.u1) * std::abs(g[l]);
  }
  if (std::abs(den) < tol.near * den_scale)
    throw PoleOffCurveError(
        "section pole away from the grid (denominator vanishes off the "
        "curve's regular locus)");
  return {num / den, false};
}

namespace {

double grid_defect_or_inf(const BiPoly& p, const std::vector<Complex>& poles,
                          const Tolerances& tol) {
  try {
    return verify_grid_on_curve(p, poles, tol).defect;
  } catch (const Error&) {
    return std::numeric_limits<double>::infinity();
  }
}

// Candidate pole set from one seed: the seed plus the fiber roots over the
// antipodal generator.
std::optional<std::vector<Complex>> candidate_from_seed(const BiPoly& p,
                                                        Complex seed,
                                                        const Tolerances& tol) {
  UniPoly slice =
      p.slice_eta(ProjPoint::affine(seed).antipode().unit(), tol.trim);
  if (slice.degree() != p.charge()) return std::nullopt;  // root at infinity
  std::vector<Complex> cand{seed};
  for (Complex r : roots(slice, tol)) cand.push_back(r);
  for (std::size_t i = 0; i < cand.size(); ++i)
    for (std::size_t j = i + 1; j < cand.size(); ++j)
      if (std::abs(cand[i] - cand[j]) <= tol.sep) return std::nullopt;
  return cand;
}

// Value of the curve at the grid representatives [conj(g_i) : -1],
// [1 : g_j] together with the derivatives in conj(g_i) (the a0 slot) and
// g_j (the b1 slot). The residual is antiholomorphic in g_i and holomorphic
// in g_j, so these two complex numbers carry the whole Jacobian row.
struct GridResidual {
  Complex value;
  Complex d_conj_gi;
  Complex d_gj;
};

GridResidual grid_residual(const BiPoly& p, Complex gi, Complex gj) {
  const int n = p.charge();
  Complex a0 = std::conj(gi);
  std::vector<Complex> pa0(n + 1), pa1(n + 1), pb1(n + 1);
  pa0[0] = pa1[0] = pb1[0] = 1.0;
  for (int k = 1; k <= n; ++k) {
    pa0[k] = pa0[k - 1] * a0;
    pa1[k] = pa1[k - 1] * Complex(-1.0);
    pb1[k] = pb1[k - 1] * gj;
  }
  GridResidual out{0.0, 0.0, 0.0};
  for (int k = 0; k <= n; ++k)
    for (int l = 0; l <= n; ++l) {
      Complex c = p.at(k, l) * pa1[k];
      out.value += c * pa0[n - k] * pb1[l];
      if (n - k >= 1)
        out.d_conj_gi += c * static_cast<double>(n - k) * pa0[n - k - 1] * pb1[l];
      if (l >= 1)
        out.d_gj += c * static_cast<double>(l) * pa0[n - k] * pb1[l - 1];
    }
  return out;
}

// Damped least squares over all pole positions jointly, with the analytic
// Jacobian plus the real gradient of the unit-representative normalization.
// Used as the final polish once a candidate is already near a grid.
double refine_poles(const BiPoly& p, std::vector<Complex>& poles,
                    const Tolerances& tol, int max_iterations) {
  const int m = static_cast<int>(poles.size());
  const int n = p.charge();
  const double scale = p.max_coeff_mag();
  const int rows = 2 * m * (m - 1);

  auto rep_norm = [&](Complex g) {
    return std::pow(std::sqrt(1.0 + std::norm(g)), n);
  };

  auto residuals = [&](const std::vector<Complex>& g, Eigen::MatrixXd* J) {
    Eigen::VectorXd r(rows);
    std::vector<double> phi(m);
    for (int i = 0; i < m; ++i) phi[i] = rep_norm(g[i]);
    if (J) J->setZero();
    int idx = 0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        if (i == j) continue;
        GridResidual gr = grid_residual(p, g[i], g[j]);
        double norm = scale * phi[i] * phi[j];
        Complex v = gr.value / norm;
        r(idx) = v.real();
        r(idx + 1) = v.imag();
        if (J) {
          // d r / d g_i through conj(g_i): dr = B d(conj g_i).
          Complex B = gr.d_conj_gi / norm;
          (*J)(idx, 2 * i) = B.real();
          (*J)(idx, 2 * i + 1) = B.imag();
          (*J)(idx + 1, 2 * i) = B.imag();
          (*J)(idx + 1, 2 * i + 1) = -B.real();
          // d r / d g_j holomorphic: dr = A d g_j.
          Complex A = gr.d_gj / norm;
          (*J)(idx, 2 * j) = A.real();
          (*J)(idx, 2 * j + 1) = -A.imag();
          (*J)(idx + 1, 2 * j) = A.imag();
          (*J)(idx + 1, 2 * j + 1) = A.real();
          // Gradient of the normalization factors.
          for (int mvar : {i, j}) {
            double f = n / (1.0 + std::norm(g[mvar]));
            (*J)(idx, 2 * mvar) -= v.real() * f * g[mvar].real();
            (*J)(idx, 2 * mvar + 1) -= v.real() * f * g[mvar].imag();
            (*J)(idx + 1, 2 * mvar) -= v.imag() * f * g[mvar].real();
            (*J)(idx + 1, 2 * mvar + 1) -= v.imag() * f * g[mvar].imag();
          }
        }
        idx += 2;
      }
    return r;
  };

  Eigen::MatrixXd J(rows, 2 * m);
  Eigen::VectorXd r = residuals(poles, &J);
  double cost = r.norm();
  double mu = 1e-8;
  for (int iter = 0; iter < max_iterations; ++iter) {
    if (r.lpNorm<Eigen::Infinity>() < 1e-14) break;
    Eigen::MatrixXd JtJ = J.transpose() * J;
    Eigen::VectorXd Jtr = J.transpose() * r;
    bool accepted = false;
    for (int attempt = 0; attempt < 10 && !accepted; ++attempt) {
      Eigen::MatrixXd A = JtJ + mu * Eigen::MatrixXd::Identity(2 * m, 2 * m);
      Eigen::VectorXd delta = A.ldlt().solve(-Jtr);
      std::vector<Complex> trial = poles;
      for (int c = 0; c < m; ++c)
        trial[c] += Complex(delta(2 * c), delta(2 * c + 1));
      Eigen::VectorXd rt = residuals(trial, nullptr);
      if (rt.norm() < cost) {
        poles = trial;
        residuals(poles, &J);
        r = rt;
        cost = rt.norm();
        mu = std::max(mu / 5.0, 1e-14);
        accepted = true;
      } else {
        mu *= 10.0;
      }
    }
    if (!accepted) break;
  }
  return grid_defect_or_inf(p, poles, tol);
}

// Grid residuals among the fiber roots of one seed. The pairs involving
// the seed itself vanish by construction and by reality, so the conditions
// that actually pin a pole are p(antipode(r_k), r_j) = 0 for k != j over
// the fiber roots r_1..r_N. Empty for charge 1, where every seed generates
// a grid.
std::optional<Eigen::VectorXd> seed_residuals(const BiPoly& p, Complex seed,
                                              const Tolerances& tol) {
  UniPoly slice =
      p.slice_eta(ProjPoint::affine(seed).antipode().unit(), tol.trim);
  if (slice.degree() != p.charge()) return std::nullopt;
  std::vector<Complex> r = roots(slice, tol);
  const int n = static_cast<int>(r.size());
  const double scale = p.max_coeff_mag();
  Eigen::VectorXd out(2 * n * (n - 1));
  int idx = 0;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) {
      if (k == j) continue;
      Complex v = p.eval_homogeneous(ProjPoint::affine(r[k]).antipode().unit(),
                                     ProjPoint::affine(r[j]).unit()) /
                  scale;
      out(idx++) = v.real();
      out(idx++) = v.imag();
    }
  return out;
}

// Newton (Gauss-Newton in the two real seed coordinates) on the fiber-root
// grid defect.
std::optional<Complex> refine_seed(const BiPoly& p, Complex seed,
                                   const Tolerances& tol, int max_iterations) {
  if (p.charge() < 2) return seed;
  auto r0 = seed_residuals(p, seed, tol);
  if (!r0) return std::nullopt;
  double cost = r0->norm();
  for (int iter = 0; iter < max_iterations; ++iter) {
    if (r0->lpNorm<Eigen::Infinity>() < 1e-14) break;
    const double h = 1e-7 * (1.0 + std::abs(seed));
    auto rx = seed_residuals(p, seed + h, tol);
    auto ry = seed_residuals(p, seed + Complex(0.0, h), tol);
    if (!rx || !ry || rx->size() != r0->size() || ry->size() != r0->size())
      return std::nullopt;
    Eigen::MatrixXd jac(r0->size(), 2);
    jac.col(0) = (*rx - *r0) / h;
    jac.col(1) = (*ry - *r0) / h;
    Eigen::Matrix2d jtj = jac.transpose() * jac;
    Eigen::Vector2d jtr = jac.transpose() * *r0;
    bool accepted = false;
    double mu = 1e-10;
    for (int attempt = 0; attempt < 12 && !accepted; ++attempt) {
      Eigen::Vector2d delta =
          (jtj + mu * Eigen::Matrix2d::Identity()).ldlt().solve(-jtr);
      Complex step(delta(0), delta(1));
      if (std::abs(step) > 0.4) step *= 0.4 / std::abs(step);
      auto rt = seed_residuals(p, seed + step, tol);
      if (rt && rt->size() == r0->size() && rt->norm() < cost) {
        seed += step;
        r0 = rt;
        cost = rt->norm();
        accepted = true;
      } else {
        mu = std::max(mu * 100.0, 1e-8);
      }
    }
    if (!accepted) break;
  }
  return seed;
}

GridSearchResult search_from_candidates(
    const BiPoly& p, const std::vector<std::pair<Complex, int>>& seeds,
    const GridSearchOptions& opts, const Tolerances& tol) {
  GridSearchResult res;
  res.best_defect = std::numeric_limits<double>::infinity();

  struct Scored {
    double defect;
    int order;
    std::vector<Complex> poles;
    Complex seed;
  };
  std::vector<Scored> scored;
  for (const auto& [seed, order] : seeds) {
    ++res.seeds_tried;
    auto cand = candidate_from_seed(p, seed, tol);
    if (!cand) continue;
    double defect = grid_defect_or_inf(p, *cand, tol);
    if (defect < res.best_defect) {
      res.best_defect = defect;
      res.best_seed = seed;
      res.poles = *cand;
      res.defect = defect;
    }
    scored.push_back({defect, order, std::move(*cand), seed});
  }
  std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
    return a.defect != b.defect ? a.defect < b.defect : a.order < b.order;
  });

  int refined = 0;
  std::vector<Complex> refined_seeds;
  for (auto& s : scored) {
    if (s.defect < tol.id) {
      res.found = true;
      res.poles = s.poles;
      res.defect = s.defect;
      res.best_seed = s.seed;
      return res;
    }
    if (refined >= opts.refine_top) break;
    bool fresh_basin = true;
    for (Complex done : refined_seeds)
      if (std::abs(done - s.seed) < 0.2) fresh_basin = false;
    if (!fresh_basin) continue;
    refined_seeds.push_back(s.seed);
    ++refined;
    auto polished = refine_seed(p, s.seed, tol, opts.max_iterations);
    if (!polished) continue;
    auto candidate = candidate_from_seed(p, *polished, tol);
    if (!candidate) continue;
    double defect = grid_defect_or_inf(p, *candidate, tol);
    if (defect >= tol.id && std::isfinite(defect)) {
      // joint polish over all poles from the near-converged candidate
      double lm = refine_poles(p, *candidate, tol, opts.max_iterations);
      defect = lm;
    }
    if (defect < res.best_defect) {
      res.best_defect = defect;
      res.best_seed = *polished;
      res.poles = *candidate;
      res.defect = defect;
    }
    if (defect < tol.id) {
      res.found = true;
      res.poles = *candidate;
      res.defect = defect;
      return res;
    }
  }
  return res;
}

}  // namespace

GridSearchResult detect_grid(const BiPoly& p, Complex seed,
                             const GridSearchOptions& opts,
                             const Tolerances& tol) {
  return search_from_candidates(p, {{seed, 0}}, opts, tol);
}

GridSearchResult detect_grid_sweep(const BiPoly& p,
                                   const GridSearchOptions& opts,
                                   const Tolerances& tol) {
  std::vector<std::pair<Complex, int>> seeds;
  int order = 0;
  for (int iy = 0; iy < opts.lattice; ++iy)
    for (int ix = 0; ix < opts.lattice; ++ix) {
      double step = 2.0 * opts.radius / opts.lattice;
      Complex s(-opts.radius + (ix + 0.5) * step,
                -opts.radius + (iy + 0.5) * step);
      if (std::abs(s) <= opts.radius) seeds.emplace_back(s, order++);
    }
  return search_from_candidates(p, seeds, opts, tol);
}

}  // namespace jnr
