#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "jnrlab/errors.hpp"
#include "jnrlab/spectral.hpp"
#include "jnrlab/sphere.hpp"
#include "oracles.hpp"

using jnr::Complex;
using jnr::HolomorphicSphere;
using jnr::JnrData;
using jnr::ProjPoint;
using jnr::Rotation;

TEST_CASE("sphere evaluation singles out coordinate directions at poles") {
  JnrData d = oracle::example_n3();
  HolomorphicSphere q(d);

  auto at_pole = q.evaluate(ProjPoint::affine(d.pole(0)));
  CHECK(std::abs(at_pole[0]) > 0.1);
  for (int i = 1; i < 4; ++i) CHECK(std::abs(at_pole[i]) < 1e-14);

  // At infinity the lift returns the weights.
  auto at_inf = q.evaluate(ProjPoint::infinity());
  for (int i = 0; i < 4; ++i) CHECK(std::abs(at_inf[i] - 0.5) < 1e-12);

  // The lift never vanishes.
  std::mt19937_64 rng(201);
  for (int s = 0; s < 100; ++s) {
    auto v = q.evaluate(ProjPoint::affine(oracle::random_disk(rng, 3.0)).unit());
    double norm2 = 0.0;
    for (const auto& c : v) norm2 += std::norm(c);
    CHECK(norm2 > 0.0);
  }
}

TEST_CASE("fullness") {
  std::mt19937_64 rng(203);
  for (int trial = 0; trial < 8; ++trial) {
    JnrData d = oracle::random_data(rng, 1 + static_cast<int>(rng() % 6));
    double cond = HolomorphicSphere(d).fullness_condition();
    CHECK(std::isfinite(cond));
    CHECK(cond < 1e12);
  }
}

TEST_CASE("psi is the rescaled curve") {
  JnrData d = oracle::example_n1();
  // p = 2 zeta - 2 eta, so psi = -(2 zeta - 2 eta)/eta.
  for (Complex eta : {Complex(0.5, 0.2), Complex(-1.2, 0.1)})
    for (Complex zeta : {Complex(0.3, -0.4), Complex(2.0, 1.0)}) {
      Complex expected = -(2.0 * zeta - 2.0 * eta) / eta;
      CHECK(std::abs(jnr::psi_value(d, eta, zeta) - expected) <
            1e-12 * std::abs(expected));
    }
  CHECK_THROWS_AS(jnr::psi_value(d, 0.0, 1.0), jnr::ValidationError);

  // psi vanishes exactly where the curve does (eta != 0).
  std::mt19937_64 rng(207);
  JnrData d3 = oracle::random_data(rng, 3);
  jnr::BiPoly p = jnr::spectral_curve(d3);
  for (int s = 0; s < 10; ++s) {
    Complex eta = oracle::random_disk(rng, 2.0);
    if (std::abs(eta) < 0.1) continue;
    auto fiber = jnr::roots(p.slice_eta(ProjPoint::affine(eta)));
    for (Complex zeta : fiber)
      CHECK(std::abs(jnr::psi_value(d3, eta, zeta)) <
            1e-8 * p.max_coeff_mag());
  }
}

TEST_CASE("pairing identity") {
  std::mt19937_64 rng(211);
  for (int trial = 0; trial < 6; ++trial) {
    int n = 1 + static_cast<int>(rng() % 8);
    JnrData d = oracle::random_data(rng, n);
    CHECK(jnr::pairing_check(d, 100, trial) < 1e-9);
    CHECK(jnr::pairing_on_curve(d, 10, trial) < 1e-8);
  }
}

TEST_CASE("rotations") {
  JnrData d = oracle::example_n3();

  // Identity fixes the data.
  JnrData same = jnr::rotate(d, Rotation::identity());
  for (int i = 0; i < d.size(); ++i) {
    CHECK(same.weight(i) == d.weight(i));
    CHECK(same.pole(i) == d.pole(i));
  }

  // g then g^{-1} restores weights and poles exactly.
  std::mt19937_64 rng(213);
  for (int trial = 0; trial < 10; ++trial) {
    Rotation g = oracle::random_rotation(rng);
    JnrData there = jnr::rotate(d, g);
    JnrData back = jnr::rotate(there, g.inverse());
    for (int i = 0; i < d.size(); ++i) {
      CHECK(std::abs(back.weight(i) - d.weight(i)) < 1e-10);
      CHECK(std::abs(back.pole(i) - d.pole(i)) < 1e-10);
    }
  }

  // The antipodal rotation sends 0 to infinity.
  JnrData zero_one({1.0, 1.0}, {Complex(0, 0), Complex(1, 0)});
  CHECK_THROWS_AS(jnr::rotate(zero_one, Rotation(0.0, 1.0)),
                  jnr::PoleAtInfinityError);

  CHECK_THROWS_AS(Rotation(1.0, 1.0), jnr::ValidationError);
}

TEST_CASE("invariant functions") {
  // Canonical symmetric data: the off-diagonal entry is 1/4.
  JnrData d = JnrData({1.0, 1.0}, {Complex(0, 0), Complex(1, 0)}).canonical();
  auto inv = jnr::invariant_functions(d);
  CHECK(inv.count() == 3);
  CHECK(inv.at(0, 1) == doctest::Approx(0.25).epsilon(1e-12));

  // Antipodal poles degenerate the denominator.
  CHECK_THROWS_AS(jnr::invariant_functions(oracle::example_n1()),
                  jnr::AntipodalDegeneracyError);

  // Count check.
  std::mt19937_64 rng(217);
  for (int n : {1, 2, 3, 4, 5}) {
    JnrData r = oracle::random_data(rng, n);
    CHECK(static_cast<int>(jnr::invariant_functions(r).upper_values().size()) ==
          (n + 1) * (n + 2) / 2);
  }
}

TEST_CASE("invariant functions are rotation invariant") {
  std::mt19937_64 rng(219);
  for (int trial = 0; trial < 12; ++trial) {
    JnrData d = oracle::random_data(rng, 1 + static_cast<int>(rng() % 5));
    auto before = jnr::invariant_functions(d);
    Rotation g = oracle::random_rotation(rng);
    JnrData rd = [&] {
      for (;;) {
        try {
          return jnr::rotate(d, g);
        } catch (const jnr::PoleAtInfinityError&) {
          g = oracle::random_rotation(rng);
        }
      }
    }();
    auto after = jnr::invariant_functions(rd);
    for (int i = 0; i < d.size(); ++i)
      for (int j = i; j < d.size(); ++j)
        CHECK(after.at(i, j) ==
              doctest::Approx(before.at(i, j)).epsilon(1e-9));
  }
}

TEST_CASE("spectral curve equivariance under rotation") {
  // p_rot(g.eta, g.zeta) (conj(a) - conj(b) eta)^N (conj(a) - conj(b) zeta)^N
  // is a constant multiple of p(eta, zeta).
  std::mt19937_64 rng(223);
  for (int trial = 0; trial < 5; ++trial) {
    JnrData d = oracle::random_data(rng, 1 + static_cast<int>(rng() % 4));
    int n = d.charge();
    Rotation g = oracle::random_rotation(rng);
    JnrData rd = [&] {
      for (;;) {
        try {
          return jnr::rotate(d, g);
        } catch (const jnr::PoleAtInfinityError&) {
          g = oracle::random_rotation(rng);
        }
      }
    }();
    jnr::BiPoly p = jnr::spectral_curve(d);
    jnr::BiPoly pr = jnr::spectral_curve(rd);

    Complex ratio = 0.0;
    bool first = true;
    for (int s = 0; s < 50; ++s) {
      Complex eta = oracle::random_disk(rng, 1.5);
      Complex zeta = oracle::random_disk(rng, 1.5);
      Complex ue = std::conj(g.a()) - std::conj(g.b()) * eta;
      Complex uz = std::conj(g.a()) - std::conj(g.b()) * zeta;
      if (std::abs(ue) < 0.2 || std::abs(uz) < 0.2) continue;
      Complex base = p.eval_affine(eta, zeta);
      if (std::abs(base) < 1e-6 * p.max_coeff_mag()) continue;
      Complex lhs = pr.eval_affine(g.apply(eta), g.apply(zeta)) *
                    jnr::ipow(ue, n) * jnr::ipow(uz, n);
      Complex r = lhs / base;
      if (first) {
        ratio = r;
        first = false;
      } else {
        CHECK(std::abs(r - ratio) < 1e-8 * std::abs(ratio));
      }
    }
    CHECK(!first);
    CHECK(std::abs(ratio.imag()) < 1e-8 * std::abs(ratio));
    CHECK(ratio.real() > 0.0);
  }
}
