#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "jnrlab/errors.hpp"
#include "jnrlab/ratmap.hpp"
#include "oracles.hpp"

using jnr::Complex;
using jnr::JnrData;
using jnr::RationalMap;
using jnr::UniPoly;

TEST_CASE("closed form for the symmetric charge-1 data is exactly 1/z") {
  RationalMap m = jnr::closed_form_map(oracle::example_n1());
  REQUIRE(m.num().degree() == 0);
  REQUIRE(m.den().degree() == 1);
  CHECK(m.num().coeff(0) == Complex(1.0));
  CHECK(m.den().coeff(0) == Complex(0.0));
  CHECK(m.den().coeff(1) == Complex(1.0));
}

TEST_CASE("scattering for the symmetric charge-1 data is exactly -1/z") {
  RationalMap m = jnr::scattering_map(oracle::example_n1());
  REQUIRE(m.num().degree() == 0);
  REQUIRE(m.den().degree() == 1);
  CHECK(m.num().coeff(0) == Complex(-1.0));
  CHECK(m.den().coeff(1) == Complex(1.0));
  CHECK(std::abs(m.den().coeff(0)) == 0.0);
}

TEST_CASE("degrees and basedness for the charge-3 example") {
  JnrData d = oracle::example_n3();
  RationalMap closed = jnr::closed_form_map(d);
  CHECK(closed.num().degree() == 2);
  CHECK(closed.den().degree() == 3);
  RationalMap scat = jnr::scattering_map(d);
  CHECK(scat.num().degree() <= 2);
  CHECK(scat.den().degree() == 3);
  // Based: the value dies at large |z|.
  CHECK(std::abs(closed.eval(Complex(1e6, 0))) < 1e-4);
  CHECK(std::abs(scat.eval(Complex(0, 1e6))) < 1e-4);
}

TEST_CASE("the two constructions agree up to the constant -1") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 1 + static_cast<int>(rng() % 6);
    JnrData d = oracle::random_data(rng, n);
    auto cmp = jnr::compare_up_to_phase(jnr::closed_form_map(d),
                                        jnr::scattering_map(d));
    CHECK(std::abs(std::abs(cmp.phase) - 1.0) < 1e-9);
    CHECK(std::abs(cmp.phase - Complex(-1.0)) < 1e-8);
    CHECK(cmp.defect < 1e-8);
  }
}

TEST_CASE("phase comparison basics") {
  UniPoly z({0.0, 1.0});
  RationalMap inv_z(UniPoly::constant(1.0), z);
  RationalMap minus_inv_z(UniPoly::constant(-1.0), z);
  auto cmp = jnr::compare_up_to_phase(inv_z, minus_inv_z);
  CHECK(cmp.phase == Complex(-1.0));
  CHECK(cmp.defect == 0.0);

  auto self = jnr::compare_up_to_phase(inv_z, inv_z);
  CHECK(self.phase == Complex(1.0));
  CHECK(self.defect == 0.0);

  RationalMap deg2(UniPoly::constant(1.0), UniPoly({-1.0, 0.0, 1.0}));
  CHECK_THROWS_AS(jnr::compare_up_to_phase(inv_z, deg2),
                  jnr::IncompatibleDegreesError);
}

TEST_CASE("weight rescaling leaves the map unchanged") {
  std::mt19937_64 rng(103);
  JnrData d = oracle::random_data(rng, 4);
  RationalMap base = jnr::closed_form_map(d);
  for (double t : {0.1, 3.0, 10.0}) {
    std::vector<double> w = d.weights();
    for (auto& x : w) x *= t;
    RationalMap scaled = jnr::closed_form_map(JnrData(w, d.poles()));
    for (int k = 0; k <= base.num().degree(); ++k)
      CHECK(std::abs(scaled.num().coeff(k) - base.num().coeff(k)) <
            1e-12 * base.num().max_coeff_mag());
    for (int k = 0; k <= base.den().degree(); ++k)
      CHECK(std::abs(scaled.den().coeff(k) - base.den().coeff(k)) <
            1e-12 * base.den().max_coeff_mag());
  }
}

TEST_CASE("projection coefficients for the symmetric charge-1 data") {
  auto pc = jnr::projection_coefficients(oracle::example_n1());
  double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  REQUIRE(pc.a.size() == 2);
  CHECK(std::abs(pc.a[0] - Complex(inv_sqrt2)) < 1e-14);
  CHECK(std::abs(pc.a[1] - Complex(-inv_sqrt2)) < 1e-14);
  CHECK(std::abs(pc.gamma_mean) < 1e-15);

  // Reconstructed map is 1/z.
  for (Complex z : {Complex(0.3, 0.7), Complex(-2.0, 0.4), Complex(5.0, 0)})
    CHECK(std::abs(jnr::eval_projection_map(pc, oracle::example_n1(), z) -
                   1.0 / z) < 1e-13);
}

TEST_CASE("projection form reproduces the closed form pointwise") {
  std::mt19937_64 rng(107);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 1 + static_cast<int>(rng() % 6);
    JnrData d = oracle::random_data(rng, n);
    auto pc = jnr::projection_coefficients(d);

    // The based constraint sum a_i l_i = 0.
    Complex sum = 0.0;
    for (int i = 0; i < d.size(); ++i)
      sum += pc.a[i] * std::sqrt(d.canonical_weight_sq(i));
    CHECK(std::abs(sum) < 1e-12);

    RationalMap closed = jnr::closed_form_map(d);
    for (int s = 0; s < 20; ++s) {
      Complex z = oracle::random_disk(rng, 3.0);
      double dist = 1e9;
      for (const auto& g : d.poles()) dist = std::min(dist, std::abs(z - g));
      if (dist < 0.05) continue;
      Complex direct = closed.eval(z);
      CHECK(std::abs(jnr::eval_projection_map(pc, d, z) - direct) <
            1e-9 * (1.0 + std::abs(direct)));
      CHECK(std::abs(jnr::eval_mean_shift_map(d, z) - direct) <
            1e-9 * (1.0 + std::abs(direct)));
    }
  }
}

TEST_CASE("map validation") {
  // Shared root between numerator and denominator.
  CHECK_THROWS_AS(RationalMap(UniPoly({-1.0, 1.0}), UniPoly({0.0, -1.0, 1.0})),
                  jnr::ValidationError);
  // Not based.
  CHECK_THROWS_AS(RationalMap(UniPoly({0.0, 1.0}), UniPoly({1.0, 1.0})),
                  jnr::ValidationError);
}
