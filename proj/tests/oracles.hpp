// Test-side oracles: independent evaluation routes for the identities the
// library is supposed to satisfy, plus deterministic data generators. These
// deliberately avoid the library's coefficient-matrix code paths.
#pragma once

#include <complex>
#include <random>
#include <vector>

#include "jnrlab/jnr_data.hpp"
#include "jnrlab/sphere.hpp"

namespace oracle {

using jnr::Complex;

/// Direct product-form evaluation of the defining curve
///   sum_i w_i^2 prod_{j != i} (zeta - g_j)(1 + eta conj(g_j))
/// without any coefficient-matrix machinery.
inline Complex curve_eval(const std::vector<double>& weights,
                          const std::vector<Complex>& poles, Complex eta,
                          Complex zeta) {
  Complex total = 0.0;
  for (std::size_t i = 0; i < poles.size(); ++i) {
    Complex term = weights[i] * weights[i];
    for (std::size_t j = 0; j < poles.size(); ++j) {
      if (j == i) continue;
      term *= (zeta - poles[j]) * (1.0 + eta * std::conj(poles[j]));
    }
    total += term;
  }
  return total;
}

inline Complex curve_eval(const jnr::JnrData& d, Complex eta, Complex zeta) {
  return curve_eval(d.weights(), d.poles(), eta, zeta);
}

/// The anti-diagonal product form sum_i w_i^2 prod_{j != i} |zeta - g_j|^2,
/// manifestly positive for JNR data.
inline double antidiagonal_product(const jnr::JnrData& d, Complex zeta) {
  double total = 0.0;
  for (int i = 0; i < d.size(); ++i) {
    double term = d.weight(i) * d.weight(i);
    for (int j = 0; j < d.size(); ++j)
      if (j != i) term *= std::norm(zeta - d.pole(j));
    total += term;
  }
  return total;
}

/// Naive convolution product, kept separate from UniPoly multiplication.
inline std::vector<Complex> naive_mul(const std::vector<Complex>& a,
                                      const std::vector<Complex>& b) {
  std::vector<Complex> c(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

/// Energy density through the Lagrange identity
///   |q ^ dq|^2 = |q|^2 |dq|^2 - |<q, dq>|^2
/// on the common-denominator lift, an algebraic route independent of the
/// pairwise wedge expansion.
inline double energy_lagrange(const jnr::JnrData& d, Complex z) {
  const auto& g = d.poles();
  const int m = d.size();
  double wss = std::sqrt(d.weight_sq_sum());
  std::vector<Complex> q(m), dq(m);
  for (int i = 0; i < m; ++i) {
    Complex v = d.weight(i) / wss;
    for (int j = 0; j < m; ++j)
      if (j != i) v *= z - g[j];
    q[i] = v;
    Complex s = 0.0;
    for (int k = 0; k < m; ++k) {
      if (k == i) continue;
      Complex t = d.weight(i) / wss;
      for (int j = 0; j < m; ++j)
        if (j != i && j != k) t *= z - g[j];
      s += t;
    }
    dq[i] = s;
  }
  double qq = 0.0, dd = 0.0;
  Complex qd = 0.0;
  for (int i = 0; i < m; ++i) {
    qq += std::norm(q[i]);
    dd += std::norm(dq[i]);
    qd += std::conj(q[i]) * dq[i];
  }
  return (qq * dd - std::norm(qd)) / (qq * qq);
}

inline Complex random_disk(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> unif(-radius, radius);
  for (;;) {
    Complex z(unif(rng), unif(rng));
    if (std::abs(z) <= radius) return z;
  }
}

/// Conditioned random data: poles in a disk with minimum separation,
/// log-uniform weights (ratio bounded by wmax/wmin).
inline jnr::JnrData random_data(std::mt19937_64& rng, int n,
                                double min_sep = 0.1, double wmin = 0.1,
                                double wmax = 10.0, double radius = 2.0) {
  std::uniform_real_distribution<double> logw(std::log(wmin), std::log(wmax));
  std::vector<Complex> poles;
  while (static_cast<int>(poles.size()) < n + 1) {
    Complex z = random_disk(rng, radius);
    bool ok = true;
    for (const auto& p : poles)
      if (std::abs(z - p) < min_sep) ok = false;
    if (ok) poles.push_back(z);
  }
  std::vector<double> weights(n + 1);
  for (auto& w : weights) w = std::exp(logw(rng));
  return jnr::JnrData(weights, poles);
}

inline jnr::Rotation random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (;;) {
    Complex a(gauss(rng), gauss(rng)), b(gauss(rng), gauss(rng));
    double n = std::sqrt(std::norm(a) + std::norm(b));
    if (n > 1e-3) return jnr::Rotation(a / n, b / n);
  }
}

/// The worked charge-3 example: unit weights, poles {0, i, 2, 1 - i}.
inline jnr::JnrData example_n3() {
  return jnr::JnrData({1.0, 1.0, 1.0, 1.0},
                      {Complex(0, 0), Complex(0, 1), Complex(2, 0),
                       Complex(1, -1)});
}

/// The symmetric charge-1 case: unit weights, poles {1, -1}.
inline jnr::JnrData example_n1() {
  return jnr::JnrData({1.0, 1.0}, {Complex(1, 0), Complex(-1, 0)});
}

}  // namespace oracle
