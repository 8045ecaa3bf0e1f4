#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "jnrlab/bipoly.hpp"
#include "jnrlab/errors.hpp"
#include "jnrlab/spectral.hpp"
#include "jnrlab/unipoly.hpp"
#include "oracles.hpp"

using jnr::BiPoly;
using jnr::Complex;
using jnr::ProjPoint;
using jnr::UniPoly;

namespace {

BiPoly monomial(int n, int k, int l, Complex c = 1.0) {
  BiPoly p(n);
  p.at(k, l) = c;
  return p;
}

// zeta - eta as a bidegree-(1,1) polynomial.
BiPoly zeta_minus_eta() {
  BiPoly p(1);
  p.at(0, 1) = 1.0;
  p.at(1, 0) = -1.0;
  return p;
}

}  // namespace

TEST_CASE("affine evaluation") {
  CHECK(monomial(1, 1, 1).eval_affine({2, 0}, {3, 0}) == Complex(6.0));

  // Curve of the symmetric charge-1 data vanishes at the origin.
  BiPoly p = jnr::spectral_curve(oracle::example_n1());
  CHECK(std::abs(p.eval_affine(0.0, 0.0)) == 0.0);

  std::mt19937_64 rng(7);
  BiPoly q(3);
  for (int k = 0; k <= 3; ++k)
    for (int l = 0; l <= 3; ++l)
      q.at(k, l) = oracle::random_disk(rng, 1.0);
  CHECK(q.eval_affine(0.0, 0.0) == q.at(0, 0));
}

TEST_CASE("homogeneous evaluation matches charts and corners") {
  BiPoly p = zeta_minus_eta();
  CHECK(p.eval_homogeneous(ProjPoint(1, 0), ProjPoint(1, 5)) == Complex(5.0));
  // eta = infinity, zeta = 0 extracts the corner coefficient.
  CHECK(p.eval_homogeneous(ProjPoint(0, 1), ProjPoint(1, 0)) == Complex(-1.0));

  std::mt19937_64 rng(11);
  jnr::JnrData d = oracle::random_data(rng, 4);
  BiPoly curve = jnr::spectral_curve(d);
  for (int s = 0; s < 100; ++s) {
    Complex x = oracle::random_disk(rng, 2.0), y = oracle::random_disk(rng, 2.0);
    Complex hom = curve.eval_homogeneous(ProjPoint::affine(x), ProjPoint::affine(y));
    Complex aff = curve.eval_affine(x, y);
    CHECK(std::abs(hom - aff) <= 1e-9 * (std::abs(aff) + curve.max_coeff_mag()));
  }

  // Grid membership: the curve vanishes at (antipode(g_i), g_j), i != j.
  jnr::Grid grid(d.poles());
  for (auto [a, b] : grid.points()) {
    Complex v = curve.eval_homogeneous(a.unit(), b.unit());
    CHECK(std::abs(v) < 1e-10 * curve.max_coeff_mag());
  }
}

TEST_CASE("reality transform") {
  // eta*zeta maps to -conj(c) at the opposite corner.
  BiPoly p = monomial(1, 1, 1, Complex(1.0));
  BiPoly star = p.reality_transform();
  CHECK(star.at(0, 0) == Complex(-1.0));
  CHECK(star.at(1, 1) == Complex(0.0));

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 1 + static_cast<int>(rng() % 6);
    BiPoly q(n);
    for (int k = 0; k <= n; ++k)
      for (int l = 0; l <= n; ++l) q.at(k, l) = oracle::random_disk(rng, 1.0);
    // Involution.
    BiPoly twice = q.reality_transform().reality_transform();
    for (int k = 0; k <= n; ++k)
      for (int l = 0; l <= n; ++l)
        CHECK(std::abs(twice.at(k, l) - q.at(k, l)) < 1e-8 * q.max_coeff_mag());
  }

  // Spectral curves are fixed points.
  for (int trial = 0; trial < 10; ++trial) {
    jnr::JnrData d = oracle::random_data(rng, 1 + static_cast<int>(rng() % 6));
    CHECK(jnr::spectral_curve(d).reality_defect() < 1e-9);
  }
}

TEST_CASE("coefficient-level reality symmetry agrees with point sampling") {
  // The coefficient form of the involution must match the sampled
  // definition (-1)^n eta^n zeta^n conj(p(-1/conj(zeta), -1/conj(eta))).
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    int n = 1 + static_cast<int>(rng() % 5);
    BiPoly p(n);
    for (int k = 0; k <= n; ++k)
      for (int l = 0; l <= n; ++l) p.at(k, l) = oracle::random_disk(rng, 1.0);
    BiPoly star = p.reality_transform();
    double sign = (n & 1) ? -1.0 : 1.0;
    for (int s = 0; s < 50; ++s) {
      Complex eta = oracle::random_disk(rng, 2.0);
      Complex zeta = oracle::random_disk(rng, 2.0);
      if (std::abs(eta) < 0.1 || std::abs(zeta) < 0.1) continue;
      Complex sampled = sign * jnr::ipow(eta, n) * jnr::ipow(zeta, n) *
                        std::conj(p.eval_affine(-1.0 / std::conj(zeta),
                                                -1.0 / std::conj(eta)));
      Complex direct = star.eval_affine(eta, zeta);
      CHECK(std::abs(sampled - direct) <
            1e-8 * (std::abs(direct) + p.max_coeff_mag()));
    }
  }
}

TEST_CASE("anti-diagonal profile") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 8; ++trial) {
    jnr::JnrData d = oracle::random_data(rng, 1 + static_cast<int>(rng() % 5));
    BiPoly p = jnr::spectral_curve(d);
    for (double v : p.antidiagonal_profile(64)) CHECK(v > 0.0);
  }

  // A real curve that crosses the anti-diagonal: zeta + eta, whose profile
  // is |zeta|^2 - 1 up to a positive factor.
  BiPoly cross(1);
  cross.at(0, 1) = 1.0;
  cross.at(1, 0) = 1.0;
  auto profile = cross.antidiagonal_profile(128);
  bool pos = false, neg = false;
  for (double v : profile) {
    pos = pos || v > 0.0;
    neg = neg || v < 0.0;
  }
  CHECK(pos);
  CHECK(neg);

  // Linearity in the curve.
  BiPoly p = jnr::spectral_curve(oracle::example_n1());
  auto base = p.antidiagonal_profile(16);
  auto doubled = p.scaled(2.0).antidiagonal_profile(16);
  for (std::size_t i = 0; i < base.size(); ++i)
    CHECK(doubled[i] == doctest::Approx(2.0 * base[i]).epsilon(1e-12));

  // A non-real curve trips the imaginary-residue guard.
  BiPoly bad(1);
  bad.at(0, 1) = Complex(0.0, 1.0);
  CHECK_THROWS_AS(bad.antidiagonal_profile(8), jnr::ImaginaryResidueError);
}

TEST_CASE("roots") {
  auto r = jnr::roots(UniPoly({-1.0, 0.0, 1.0}));  // z^2 - 1
  REQUIRE(r.size() == 2);
  std::sort(r.begin(), r.end(),
            [](Complex a, Complex b) { return a.real() < b.real(); });
  CHECK(std::abs(r[0] - Complex(-1.0)) < 1e-12);
  CHECK(std::abs(r[1] - Complex(1.0)) < 1e-12);

  // Triple root groups within the clustering tolerance.
  Complex root(1.0, 1.0);
  auto triple = jnr::roots(UniPoly::from_roots({root, root, root}));
  REQUIRE(triple.size() == 3);
  for (const auto& t : triple) CHECK(std::abs(t - root) < 1e-6);

  CHECK_THROWS_AS(jnr::roots(UniPoly()), jnr::ZeroPolynomialError);
  CHECK(jnr::roots(UniPoly::constant(3.0)).empty());
}

TEST_CASE("root reconstruction property") {
  std::mt19937_64 rng(23);
  for (int deg = 2; deg <= 8; ++deg) {
    std::vector<Complex> coeffs(deg + 1);
    for (auto& c : coeffs) c = oracle::random_disk(rng, 1.0);
    if (std::abs(coeffs.back()) < 0.1) coeffs.back() += 0.5;
    UniPoly q(coeffs);
    auto r = jnr::roots(q);
    REQUIRE(static_cast<int>(r.size()) == deg);
    UniPoly rebuilt = UniPoly::from_roots(r, q.lead());
    for (int k = 0; k <= deg; ++k)
      CHECK(std::abs(rebuilt.coeff(k) - q.coeff(k)) <
            1e3 * 1e-10 * q.max_coeff_mag());
  }
}

TEST_CASE("slice along a generator") {
  BiPoly p = zeta_minus_eta();
  UniPoly s = p.slice_eta(ProjPoint(1, 2));
  REQUIRE(s.degree() == 1);
  CHECK(std::abs(s.coeff(0) - Complex(-2.0)) < 1e-15);
  CHECK(std::abs(s.coeff(1) - Complex(1.0)) < 1e-15);

  // Fiber over the antipode of a pole consists of the other poles.
  std::mt19937_64 rng(31);
  jnr::JnrData d = oracle::random_data(rng, 3);
  BiPoly curve = jnr::spectral_curve(d);
  UniPoly fiber = curve.slice_eta(ProjPoint::affine(d.pole(0)).antipode().unit());
  auto r = jnr::roots(fiber);
  REQUIRE(r.size() == 3);
  for (const auto& root : r) {
    double best = 1e9;
    for (int j = 1; j < d.size(); ++j)
      best = std::min(best, std::abs(root - d.pole(j)));
    CHECK(best < 1e-7);
  }

  // Slice at eta = 0 is the scattering denominator p(0, z): leading
  // coefficient is the weight-square sum, roots avoid the poles' grid only
  // on the curve itself.
  UniPoly q0 = curve.slice_eta(ProjPoint::affine(0.0));
  CHECK(q0.degree() == 3);
  CHECK(std::abs(q0.lead() - Complex(d.weight_sq_sum())) <
        1e-9 * d.weight_sq_sum());
  std::mt19937_64 rng2(32);
  for (int s2 = 0; s2 < 20; ++s2) {
    Complex z = oracle::random_disk(rng2, 2.0);
    CHECK(std::abs(q0.eval(z) - curve.eval_affine(0.0, z)) <
          1e-10 * curve.max_coeff_mag());
  }
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(BiPoly(0), jnr::ValidationError);
  CHECK_THROWS_AS(BiPoly(1, std::vector<Complex>(3, 0.0)), jnr::ValidationError);
  CHECK_THROWS_AS(ProjPoint(0.0, 0.0), jnr::ValidationError);
  // The normalized flag demands the coefficient symmetry.
  BiPoly skew(1);
  skew.at(0, 1) = Complex(0.0, 2.0);
  CHECK_THROWS_AS(skew.set_normalized(true), jnr::ValidationError);
}
