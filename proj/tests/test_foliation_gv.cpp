#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <numbers>

#include "threefold/dec.hpp"
#include "threefold/errors.hpp"
#include "threefold/foliation_gv.hpp"

using namespace threefold;

namespace {

constexpr double T = 2.0 * std::numbers::pi;

double f(double x, double y, double z) {
  return 0.3 * std::sin(T * (x + y)) + 0.2 * std::cos(T * (x + z)) + 0.25 * std::sin(T * (y + z) + 0.7) +
         0.15 * std::cos(T * (x - y + z));
}
double g(double x, double y, double z) {
  return 0.3 * std::sin(T * (x + 2 * y) + 0.3) + 0.2 * std::cos(T * (x - z)) + 0.1 * std::sin(T * (x + y + z));
}

// e^{h} (0.3 sin(2 pi z) dx + dz): integrable because the bracket is.
DiscreteForm tilted(int n, bool gauge) {
  return sample_one_form(n, [gauge](double x, double y, double z) {
    const double s = std::exp(f(x, y, z) + (gauge ? g(x, y, z) : 0.0));
    return std::array<double, 3>{s * 0.3 * std::sin(T * z), 0.0, s};
  });
}

Transversal vertical(int n) {
  Transversal t;
  t.steps.assign(n, {0, 0, 1});
  return t;
}

FoliationSpec spec(const std::string& label, DiscreteForm w, std::optional<Transversal> t = std::nullopt) {
  FoliationSpec s;
  s.label = label;
  s.omega = std::move(w);
  s.transversal = std::move(t);
  return s;
}

}  // namespace

TEST_CASE("d d = 0 on the cubical grid") {
  const DiscreteForm u = sample_function(8, [](double x, double y, double z) { return f(x, y, z); });
  const DiscreteForm ddu = exterior_derivative(exterior_derivative(u));
  for (double v : ddu.values()) CHECK(std::abs(v) < 1e-14);
  const DiscreteForm w = tilted(8, true);
  const DiscreteForm ddw = exterior_derivative(exterior_derivative(w));
  for (double v : ddw.values()) CHECK(std::abs(v) < 1e-14);
}

TEST_CASE("closed-form cases with exact theta give GV = 0") {
  // dz: theta = 0.
  const DiscreteForm dz = sample_one_form(12, [](double, double, double) { return std::array<double, 3>{0, 0, 1}; });
  CHECK(integrability_residual(dz) < 1e-14);
  const ThetaSolution s0 = solve_theta(dz);
  CHECK(std::abs(gv_integral(s0.theta)) < 1e-8);

  // e^{f(z)} dz: the minimal-norm theta vanishes.
  const DiscreteForm ez =
      sample_one_form(12, [](double, double, double z) { return std::array<double, 3>{0, 0, std::exp(0.4 * std::sin(T * z))}; });
  const ThetaSolution s1 = solve_theta(ez);
  CHECK(std::abs(gv_integral(s1.theta)) < 1e-8);
  CHECK(s1.residual < 1e-12);

  // e^{f} omega_0 with d omega_0 = 0 admits theta = df exactly; d theta = dd f = 0.
  for (int n : {8, 16}) {
    const DiscreteForm df = exterior_derivative(sample_function(n, [](double x, double y, double z) { return f(x, y, z); }));
    CHECK(std::abs(gv_integral(df)) < 1e-8);
  }
}

TEST_CASE("helical theta converges to GV = 2 pi") {
  const double exact = T;
  double prev = 0.0;
  for (int n : {16, 32, 64}) {
    const DiscreteForm th = sample_one_form(
        n, [](double, double, double z) { return std::array<double, 3>{std::sin(T * z), std::cos(T * z), 0.0}; });
    const double err = std::abs(gv_integral(th) - exact);
    if (n > 16) CHECK(std::log2(prev / err) > 1.8);
    prev = err;
  }
}

TEST_CASE("GV is invariant under constant rescaling of omega") {
  for (int n : {12, 16}) {
    const DiscreteForm w = tilted(n, true);
    const double base = gv_integral(solve_theta(w).theta);
    for (double c : {0.01, 2.5, 1e3, -4.0}) CHECK(std::abs(gv_integral(solve_theta(c * w).theta) - base) < 1e-10);
  }
}

TEST_CASE("gauge change e^g omega: GV drift decreases at order >= 1.5") {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<double> drift;
  for (int n : {16, 32, 64}) {
    const double a = gv_integral(solve_theta(tilted(n, false)).theta);
    const double b = gv_integral(solve_theta(tilted(n, true)).theta);
    drift.push_back(std::abs(a - b));
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(seconds < 120.0);
  CHECK(drift[1] < drift[0]);
  CHECK(drift[2] < drift[1]);
  CHECK(std::log2(drift[0] / drift[1]) >= 1.5);
  CHECK(std::log2(drift[1] / drift[2]) >= 1.5);
}

TEST_CASE("contact form is non-integrable and excluded") {
  const DiscreteForm c = sample_one_form(
      12, [](double, double, double z) { return std::array<double, 3>{std::cos(T * z), std::sin(T * z), 0.0}; });
  CHECK(integrability_residual(c) > 0.5);
  Transversal t;
  t.steps.assign(12, {1, 0, 0});
  const GvInvariantReport r = gv_invariant({spec("contact", c, t)});
  REQUIRE(r.entries.size() == 1);
  CHECK_FALSE(r.entries[0].included);
  CHECK(r.total == 0.0);
  CHECK(std::any_of(r.warnings.begin(), r.warnings.end(), [](const Warning& w) { return w.code == "non-integrable"; }));
}

TEST_CASE("a wrong theta is reported") {
  const DiscreteForm w = tilted(12, false);
  const DiscreteForm bad = sample_one_form(12, [](double, double, double) { return std::array<double, 3>{1, 0, 0}; });
  CHECK(theta_residual(w, bad) > 0.1);
  CHECK(theta_residual(w, solve_theta(w).theta) < 5e-2);
  FoliationSpec s = spec("bad", w, vertical(12));
  s.theta = bad;
  const GvInvariantReport r = gv_invariant({s});
  CHECK(std::any_of(r.warnings.begin(), r.warnings.end(), [](const Warning& w) { return w.code == "theta-residual"; }));
}

TEST_CASE("tautness classification") {
  const DiscreteForm w = tilted(12, true);
  CHECK(tautness_check(spec("v", w, vertical(12))).status == Tautness::Taut);

  Transversal folded;
  for (int i = 0; i < 3; ++i) folded.steps.push_back({0, 0, 1});
  for (int i = 0; i < 3; ++i) folded.steps.push_back({0, 0, -1});
  CHECK(tautness_check(spec("f", w, folded)).status == Tautness::NotTaut);

  Transversal open;
  open.steps.assign(5, {0, 0, 1});
  CHECK(tautness_check(spec("o", w, open)).status == Tautness::NotTaut);

  CHECK(tautness_check(spec("none", w)).status == Tautness::Inconclusive);

  // Diagonal steps use the trapezoid pairing.
  Transversal diag;
  diag.steps.assign(12, {1, 0, 1});
  CHECK(tautness_check(spec("d", w, diag)).status == Tautness::Taut);

  GvOptions strict;
  strict.strict = true;
  CHECK_THROWS_AS(gv_invariant({spec("f", w, folded)}, strict), TautnessError);
  CHECK_THROWS_AS(gv_invariant({spec("none", w)}, strict), TautnessError);
  const GvInvariantReport lax = gv_invariant({spec("v", w, vertical(12)), spec("f", w, folded), spec("none", w)});
  CHECK(lax.entries[0].included);
  CHECK_FALSE(lax.entries[1].included);
  CHECK_FALSE(lax.entries[2].included);
  CHECK(lax.total == doctest::Approx(lax.entries[0].gv));
}

TEST_CASE("vanishing defining form is rejected") {
  const DiscreteForm w =
      sample_one_form(8, [](double, double, double z) { return std::array<double, 3>{0, 0, std::sin(T * z)}; });
  CHECK_THROWS_AS(check_nonsingular(w), SingularityError);
  CHECK_THROWS_AS(gv_invariant({spec("s", w, vertical(8))}), SingularityError);
}

TEST_CASE("parallel evaluation matches serial") {
  std::vector<FoliationSpec> specs{spec("a", tilted(12, false), vertical(12)), spec("b", tilted(12, true), vertical(12))};
  const GvInvariantReport a = gv_invariant(specs, {}, 1), b = gv_invariant(specs, {}, 4);
  CHECK(a.total == b.total);
}
