#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "support/finite_group.hpp"
#include "support/oracles.hpp"
#include "threefold/errors.hpp"
#include "threefold/spectrum.hpp"
#include "threefold/su2reps.hpp"
#include "threefold/twisted_torsion.hpp"

using namespace threefold;

namespace {

const std::vector<FamilySpec> kFixtures = {
    {Family::S3, {}}, {Family::Lens, {2, 1}}, {Family::Lens, {5, 1}}, {Family::Lens, {5, 2}},
    {Family::Lens, {7, 3}}, {Family::Brieskorn, {2, 3, 5}}, {Family::Torus3, {}}};

std::array<int, 4> known_betti(const FamilySpec& f) {
  return f.family == Family::Torus3 ? std::array<int, 4>{1, 3, 3, 1} : std::array<int, 4>{1, 0, 0, 1};
}

TwistedComplex scalar_twist(const CwFixture& cw, std::complex<double> zeta) {
  std::vector<Eigen::MatrixXcd> images{Eigen::MatrixXcd::Constant(1, 1, zeta)};
  return build_twisted_complex(cw, images);
}

// Acyclic complexes used for the metric checks.
std::vector<TwistedComplex> acyclic_complexes() {
  std::vector<TwistedComplex> out;
  out.push_back(scalar_twist(cw_fixture({Family::Lens, {2, 1}}), -1.0));
  out.push_back(scalar_twist(cw_fixture({Family::Lens, {7, 3}}), std::polar(1.0, 2 * std::numbers::pi * 2 / 7)));
  for (const FamilySpec& f : {FamilySpec{Family::Lens, {5, 1}}, FamilySpec{Family::Brieskorn, {2, 3, 5}}}) {
    const CwFixture cw = cw_fixture(f);
    for (const Su2Rep& r : enumerate_reps(cw.presentation).classes) {
      TwistedComplex c = build_twisted_complex(cw, r);
      if (betti_numbers(c) == std::array<int, 4>{0, 0, 0, 0}) out.push_back(std::move(c));
    }
  }
  return out;
}

}  // namespace

TEST_CASE("fixtures: d d = 0 and untwisted homology matches H_*(N; C)") {
  for (const FamilySpec& f : kFixtures) {
    CAPTURE(describe(f));
    const CwFixture cw = cw_fixture(f);
    const TwistedComplex c = build_untwisted_complex(cw);
    CHECK(c.composition_defect() < 1e-10);
    CHECK(betti_numbers(c) == known_betti(f));
    CHECK(cw.expected_betti == known_betti(f));
    for (const Su2Rep& r : enumerate_reps(cw.presentation, [] {
           SolverConfig s;
           s.random_seeds = 100;
           return s;
         }()).classes)
      CHECK(build_twisted_complex(cw, r).composition_defect() < 1e-10);
  }
  CHECK_THROWS_AS(cw_fixture({Family::Brieskorn, {2, 3, 7}}), UnsupportedError);
}

TEST_CASE("regular representation computes the homology of the universal cover S^3") {
  for (const FamilySpec& f : {FamilySpec{Family::Lens, {5, 1}}, FamilySpec{Family::Lens, {7, 3}},
                              FamilySpec{Family::Brieskorn, {2, 3, 5}}}) {
    CAPTURE(describe(f));
    const CwFixture cw = cw_fixture(f);
    const testing::FiniteGroup g(cw.presentation);
    const auto images = g.regular_representation();
    const TwistedComplex c = build_twisted_complex(cw, images);
    CHECK(c.composition_defect() < 1e-9);
    CHECK(betti_numbers(c) == std::array<int, 4>{1, 0, 0, 1});
  }
}

TEST_CASE("Lens(2,1) with the -1 character is acyclic with log T = -log 4") {
  const TwistedComplex c = scalar_twist(cw_fixture({Family::Lens, {2, 1}}), -1.0);
  CHECK(betti_numbers(c) == std::array<int, 4>{0, 0, 0, 0});
  CHECK(c.boundary[0](0, 0) == std::complex<double>(-2.0, 0.0));
  CHECK(std::abs(c.boundary[1](0, 0)) == 0.0);
  const TorsionResult t = rs_torsion(c);
  CHECK(t.acyclic);
  CHECK_FALSE(t.metric_dependent);
  CHECK(t.log_torsion == doctest::Approx(-std::log(4.0)).epsilon(1e-12));
  CHECK(t.log_torsion == doctest::Approx(oracle::svd_log_torsion(c)).epsilon(1e-12));
}

TEST_CASE("Lens(p,q) characters: T = |zeta - 1|^-1 |zeta^r - 1|^-1 with r q = 1 mod p") {
  for (auto [p, q] : {std::pair{3, 1}, std::pair{5, 1}, std::pair{5, 2}, std::pair{7, 3}}) {
    int r = 1;
    while ((r * q) % p != 1) ++r;
    for (int k = 1; k < p; ++k) {
      const std::complex<double> z = std::polar(1.0, 2 * std::numbers::pi * k / p);
      const TorsionResult t = rs_torsion(scalar_twist(cw_fixture({Family::Lens, {p, q}}), z));
      CHECK(t.acyclic);
      const double expect = -std::log(std::abs(z - 1.0)) - std::log(std::abs(std::pow(z, r) - 1.0));
      CHECK(t.log_torsion == doctest::Approx(expect).epsilon(1e-11));
    }
  }
}

TEST_CASE("Laplacian torsion equals the singular-value torsion on acyclic complexes") {
  for (const TwistedComplex& c : acyclic_complexes()) {
    const TorsionResult t = rs_torsion(c);
    CHECK(t.acyclic);
    CHECK(std::abs(t.log_torsion - oracle::svd_log_torsion(c)) < 1e-10);
  }
}

TEST_CASE("Brieskorn(2,3,5) torsions: 5.236068 and 0.763932, trivial class metric-dependent") {
  const CwFixture cw = cw_fixture({Family::Brieskorn, {2, 3, 5}});
  const RepModuli m = enumerate_reps(cw.presentation);
  const TorsionSum s = torsion_sum(cw, m);
  std::vector<double> irr;
  for (const ClassTorsion& c : s.classes) {
    if (c.irreducible) {
      CHECK(c.result.acyclic);
      irr.push_back(c.result.torsion);
    } else {
      CHECK(c.result.metric_dependent);
    }
  }
  std::sort(irr.begin(), irr.end());
  REQUIRE(irr.size() == 2);
  // Seifert-fibred closed form: 3 -+ sqrt(5).
  CHECK(irr[0] == doctest::Approx(3.0 - std::sqrt(5.0)).epsilon(1e-9));
  CHECK(irr[1] == doctest::Approx(3.0 + std::sqrt(5.0)).epsilon(1e-9));
  CHECK(s.irreducible_subtotal == doctest::Approx(6.0).epsilon(1e-9));
  CHECK(s.total == doctest::Approx(s.irreducible_subtotal + 1.0).epsilon(1e-9));
}

TEST_CASE("torsion is unchanged under 20 random unimodular weightings") {
  std::mt19937_64 rng(77);
  for (const TwistedComplex& c : acyclic_complexes()) {
    const double base = rs_torsion(c).log_torsion;
    for (int trial = 0; trial < 20; ++trial) {
      CochainWeights w;
      for (int k = 0; k < 4; ++k) w[k] = oracle::random_hpd(c.dims[k], rng, true);
      CHECK(std::abs(rs_torsion(c, w).log_torsion - base) < 1e-8);
    }
  }
}

TEST_CASE("general weights shift log T by -1/2 sum (-1)^k log det W_k") {
  std::mt19937_64 rng(78);
  for (const TwistedComplex& c : acyclic_complexes()) {
    const double base = rs_torsion(c).log_torsion;
    for (int trial = 0; trial < 5; ++trial) {
      CochainWeights w;
      double shift = 0.0;
      for (int k = 0; k < 4; ++k) {
        w[k] = oracle::random_hpd(c.dims[k], rng, false);
        shift += -0.5 * (k % 2 ? -1.0 : 1.0) * oracle::log_det_hpd(w[k]);
      }
      CHECK(std::abs(rs_torsion(c, w).log_torsion - base - shift) < 1e-8);
    }
  }
}

TEST_CASE("weights must be Hermitian positive definite") {
  const TwistedComplex c = scalar_twist(cw_fixture({Family::Lens, {2, 1}}), -1.0);
  CochainWeights w;
  w[1] = Eigen::MatrixXcd::Constant(1, 1, -1.0);
  CHECK_THROWS_AS(rs_torsion(c, w), ParameterError);
  w[1] = Eigen::MatrixXcd::Identity(2, 2);
  CHECK_THROWS_AS(rs_torsion(c, w), ParameterError);
}

TEST_CASE("torsion sum refuses infinite moduli") {
  const CwFixture cw = cw_fixture({Family::Torus3});
  SolverConfig cfg;
  cfg.random_seeds = 100;
  CHECK_THROWS_AS(torsion_sum(cw, enumerate_reps(cw.presentation, cfg)), ModuliError);
  const CwFixture s3 = cw_fixture({Family::S3});
  CHECK_THROWS_AS(torsion_sum(s3, RepModuli{}), ModuliError);
}

TEST_CASE("finite zeta determinant is the product of nonzero eigenvalues") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.05, 20.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> ev{0.0, 0.0};
    double prod = 1.0;
    for (int i = 0; i < 12; ++i) {
      ev.push_back(u(rng));
      prod *= ev.back();
    }
    CHECK(std::exp(zeta_log_det(ev)) == doctest::Approx(prod).epsilon(1e-12));
    const DegreeSpectrum d = summarize_spectrum(ev);
    CHECK(d.zero_count == 2);
    CHECK(std::exp(d.log_det) == doctest::Approx(prod).epsilon(1e-12));
  }
  CHECK(zeta_log_det(std::vector<double>{}) == 0.0);
}

TEST_CASE("analytic zeta determinant of the circle Laplacian") {
  // Spectrum n^2 with multiplicity 2 on the circle of length 2 pi: det' = 4 pi^2.
  CHECK(std::exp(zeta_log_det_analytic({1.0, 2.0, 2})) == doctest::Approx(4 * std::numbers::pi * std::numbers::pi).epsilon(1e-8));
  // Length L: spectrum (2 pi n / L)^2, det' = L^2.
  for (double L : {1.0, 3.0, 0.5}) {
    const double s = std::pow(2 * std::numbers::pi / L, 2);
    CHECK(std::exp(zeta_log_det_analytic({s, 2.0, 2})) == doctest::Approx(L * L).epsilon(1e-8));
  }
  CHECK(riemann_zeta(0.0).value == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(riemann_zeta(0.0).derivative == doctest::Approx(-0.5 * std::log(2 * std::numbers::pi)).epsilon(1e-10));
  CHECK(riemann_zeta(2.0).value == doctest::Approx(std::numbers::pi * std::numbers::pi / 6).epsilon(1e-12));
  CHECK(riemann_zeta(-1.0).value == doctest::Approx(-1.0 / 12).epsilon(1e-12));
  CHECK_THROWS_AS(riemann_zeta(1.0), ParameterError);
}
