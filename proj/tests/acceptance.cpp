// Acceptance run: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "support/oracles.hpp"
#include "threefold/app/cache.hpp"
#include "threefold/app/manifest.hpp"
#include "threefold/app/pipeline.hpp"
#include "threefold/chern_simons.hpp"
#include "threefold/cyclic.hpp"
#include "threefold/dec.hpp"
#include "threefold/foliation_gv.hpp"
#include "threefold/group_ring.hpp"
#include "threefold/leafwise.hpp"
#include "threefold/presentations.hpp"
#include "threefold/spectrum.hpp"
#include "threefold/su2reps.hpp"
#include "threefold/twisted_torsion.hpp"

using namespace threefold;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances.
constexpr double kRepsSeconds = 60.0;
constexpr double kTraceOracleTol = 1e-9;
constexpr double kTraceScanTol = 0.08;
constexpr double kTraceScanMatch = 0.05;
constexpr int kFoxPairs = 1000;
constexpr int kFoxPower = 20;
constexpr double kComplexTol = 1e-10;
constexpr double kFiniteZetaTol = 1e-12;
constexpr double kAnalyticZetaTol = 1e-8;
constexpr double kMetricTol = 1e-8;
constexpr int kWeightings = 20;
constexpr double kCsAgreementTol = 1e-5;
constexpr double kCsFlatTol = 1e-6;
constexpr double kCsOrderMin = 1.9;
constexpr double kGvExactTol = 1e-8;
constexpr double kGvRescaleTol = 1e-10;
constexpr double kGvOrderMin = 1.5;
constexpr double kGvSeconds = 120.0;
constexpr double kLeafTorsionTol = 1e-10;
constexpr int kCyclicProbes = 50;
constexpr double kPairingTol = 1e-12;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Mutable check log for one criterion.
struct Check {
  bool ok = true;
  std::ostringstream detail;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (ok) detail << "failed: ";
      else detail << "; ";
      detail << what;
      ok = false;
    }
  }
};

struct Criterion {
  int id;
  std::string name;
  std::function<void(Check&)> body;
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void representation_counts(Check& c) {
  c.require(enumerate_reps(builtin_presentation(Family::Lens, {5, 1})).classes.size() == 3, "Lens(5,1) != 3 classes");
  for (int p = 2; p <= 12; ++p) {
    const int n = static_cast<int>(enumerate_reps(builtin_presentation(Family::Lens, {p, 1})).classes.size());
    c.require(n == oracle::lens_class_count(p) && n == p / 2 + 1, "Lens(" + std::to_string(p) + ",1) count " + std::to_string(n));
  }
  const auto t0 = std::chrono::steady_clock::now();
  const RepModuli m = enumerate_reps(builtin_presentation(Family::Brieskorn, {2, 3, 5}));
  const double secs = seconds_since(t0);
  c.require(secs < kRepsSeconds, "Brieskorn runtime " + fmt(secs) + " s");
  c.require(m.irreducible_count() == 2, "Brieskorn irreducible count " + std::to_string(m.irreducible_count()));
  std::vector<std::array<double, 3>> found;
  for (const Su2Rep& r : m.classes)
    if (r.irreducible) found.push_back({r.trace_coords[0], r.trace_coords[1], r.trace_coords[2]});
  auto matches = [&](const std::vector<std::array<double, 3>>& ref, double tol) {
    if (ref.size() != found.size()) return false;
    return std::all_of(ref.begin(), ref.end(), [&](const auto& t) {
      return std::any_of(found.begin(), found.end(), [&](const auto& f) {
        return std::abs(f[0] - t[0]) < tol && std::abs(f[1] - t[1]) < tol && std::abs(f[2] - t[2]) < tol;
      });
    });
  };
  c.require(matches(oracle::brieskorn235_irreducible_traces(), kTraceOracleTol), "analytic trace mismatch");
  c.require(matches(oracle::brieskorn235_trace_scan(120, kTraceScanTol), kTraceScanMatch), "brute-force trace mismatch");
  c.detail << "Lens(p,1) p=2..12 exact, Lens(5,1)=3, Brieskorn(2,3,5) irreducible=2 in " << fmt(secs) << " s";
}

void fox_calculus(Check& c) {
  std::mt19937_64 rng(2024);
  int bad = 0;
  for (int trial = 0; trial < kFoxPairs; ++trial) {
    const Word u = oracle::random_word(rng, 3, 6), v = oracle::random_word(rng, 3, 6);
    const int gen = trial % 3;
    const GroupRingElement lhs = fox_derivative(concat(u, v), gen);
    const GroupRingElement rhs = fox_derivative(u, gen) + GroupRingElement(u) * fox_derivative(v, gen);
    if (!(lhs == rhs)) ++bad;
  }
  c.require(bad == 0, std::to_string(bad) + " product-rule failures");
  for (int p = -kFoxPower; p <= kFoxPower; ++p) {
    const Word w = reduce({{0, p}});
    c.require(fox_derivative(w, 0) == oracle::fox_expand(w, 0), "x^" + std::to_string(p));
  }
  c.detail << kFoxPairs << " pairs, |p| <= " << kFoxPower << " exact";
}

void complex_validity(Check& c) {
  const std::vector<FamilySpec> fixtures = {{Family::S3, {}},     {Family::Lens, {2, 1}},          {Family::Lens, {5, 1}},
                                            {Family::Lens, {5, 2}}, {Family::Lens, {7, 3}},        {Family::Brieskorn, {2, 3, 5}},
                                            {Family::Torus3, {}}};
  double worst = 0.0;
  SolverConfig cfg;
  cfg.random_seeds = 100;
  for (const FamilySpec& f : fixtures) {
    const CwFixture cw = cw_fixture(f);
    const TwistedComplex u = build_untwisted_complex(cw);
    const std::array<int, 4> known =
        f.family == Family::Torus3 ? std::array<int, 4>{1, 3, 3, 1} : std::array<int, 4>{1, 0, 0, 1};
    c.require(betti_numbers(u) == known, describe(f) + " untwisted homology");
    worst = std::max(worst, u.composition_defect());
    for (const Su2Rep& r : enumerate_reps(cw.presentation, cfg).classes)
      worst = std::max(worst, build_twisted_complex(cw, r).composition_defect());
  }
  c.require(worst < kComplexTol, "max |d d| = " + fmt(worst));
  c.detail << fixtures.size() << " fixtures, max |d d| = " << fmt(worst);
}

void zeta_determinant(Check& c) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.05, 20.0);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> ev{0.0};
    double prod = 1.0;
    for (int i = 0; i < 12; ++i) {
      ev.push_back(u(rng));
      prod *= ev.back();
    }
    worst = std::max(worst, std::abs(std::exp(zeta_log_det(ev)) - prod) / prod);
  }
  c.require(worst < kFiniteZetaTol, "finite relative error " + fmt(worst));
  const double circle = std::exp(zeta_log_det_analytic({1.0, 2.0, 2}));
  const double target = 4.0 * std::numbers::pi * std::numbers::pi;
  const double err = std::abs(circle - target) / target;
  c.require(err < kAnalyticZetaTol, "det'(circle) relative error " + fmt(err));
  c.detail << "finite rel err " << fmt(worst) << ", det'(circle) = " << circle << " (rel err " << fmt(err) << ")";
}

void metric_independence(Check& c) {
  std::vector<TwistedComplex> complexes;
  for (const FamilySpec& f : {FamilySpec{Family::Lens, {5, 1}}, FamilySpec{Family::Brieskorn, {2, 3, 5}}}) {
    const CwFixture cw = cw_fixture(f);
    for (const Su2Rep& r : enumerate_reps(cw.presentation).classes) {
      TwistedComplex t = build_twisted_complex(cw, r);
      if (betti_numbers(t) == std::array<int, 4>{0, 0, 0, 0}) complexes.push_back(std::move(t));
    }
  }
  c.require(!complexes.empty(), "no acyclic complexes");
  std::mt19937_64 rng(77);
  double worst = 0.0;
  for (const TwistedComplex& t : complexes) {
    const double base = rs_torsion(t).log_torsion;
    for (int trial = 0; trial < kWeightings; ++trial) {
      CochainWeights w;
      for (int k = 0; k < 4; ++k) w[k] = oracle::random_hpd(t.dims[k], rng, true);
      worst = std::max(worst, std::abs(rs_torsion(t, w).log_torsion - base));
    }
  }
  c.require(worst < kMetricTol, "max |d log T| = " + fmt(worst));
  c.detail << complexes.size() << " acyclic complexes x " << kWeightings << " unimodular weightings, max |d log T| = "
           << fmt(worst);
}

void cs_stationarity(Check& c) {
  double worst = 0.0, order = 1e9;
  for (double scale : {0.1, 1.0, 3.0})
    for (std::uint64_t seed : {5u, 6u}) {
      const StationarityReport r = stationarity_check(LatticeConnection::random(4, scale, seed), 1e-4);
      worst = std::max(worst, r.agreement);
      order = std::min(order, r.fd_order);
    }
  c.require(worst < kCsAgreementTol, "agreement " + fmt(worst));
  c.require(order >= kCsOrderMin, "fd order " + fmt(order));
  LatticeConnection flat(4);
  const double comm[3] = {0.4, -0.25, 0.9};
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y)
      for (int z = 0; z < 4; ++z)
        for (int mu = 0; mu < 3; ++mu) flat.set_link(mu, x, y, z, comm[mu] * su2_basis(2));
  double flat_grad = 0.0;
  for (const LatticeConnection& a : {LatticeConnection(4), flat}) {
    const StationarityReport r = stationarity_check(a, 1e-4);
    flat_grad = std::max(flat_grad, r.grad_norm / std::max(1.0, r.field_scale));
  }
  c.require(flat_grad < kCsFlatTol, "flat gradient " + fmt(flat_grad));
  c.detail << "4^3 agreement " << fmt(worst) << ", min order " << fmt(order) << ", flat |grad| " << fmt(flat_grad);
}

double gv_f(double x, double y, double z) {
  return 0.3 * std::sin(kTwoPi * (x + y)) + 0.2 * std::cos(kTwoPi * (x + z)) + 0.25 * std::sin(kTwoPi * (y + z) + 0.7) +
         0.15 * std::cos(kTwoPi * (x - y + z));
}
double gv_g(double x, double y, double z) {
  return 0.3 * std::sin(kTwoPi * (x + 2 * y) + 0.3) + 0.2 * std::cos(kTwoPi * (x - z)) +
         0.1 * std::sin(kTwoPi * (x + y + z));
}
DiscreteForm gv_tilted(int n, bool gauge) {
  return sample_one_form(n, [gauge](double x, double y, double z) {
    const double s = std::exp(gv_f(x, y, z) + (gauge ? gv_g(x, y, z) : 0.0));
    return std::array<double, 3>{s * 0.3 * std::sin(kTwoPi * z), 0.0, s};
  });
}

void godbillon_vey(Check& c) {
  double exact = 0.0;
  exact = std::max(exact, std::abs(gv_integral(solve_theta(sample_one_form(12, [](double, double, double) {
                                                 return std::array<double, 3>{0, 0, 1};
                                               })).theta)));
  exact = std::max(exact, std::abs(gv_integral(solve_theta(sample_one_form(12, [](double, double, double z) {
                                                 return std::array<double, 3>{0, 0, std::exp(0.4 * std::sin(kTwoPi * z))};
                                               })).theta)));
  for (int n : {8, 16})
    exact = std::max(exact, std::abs(gv_integral(exterior_derivative(
                                sample_function(n, [](double x, double y, double z) { return gv_f(x, y, z); })))));
  c.require(exact < kGvExactTol, "exact-theta |GV| " + fmt(exact));

  double rescale = 0.0;
  const DiscreteForm w = gv_tilted(16, true);
  const double base = gv_integral(solve_theta(w).theta);
  for (double s : {0.01, 2.5, 1e3, -4.0})
    rescale = std::max(rescale, std::abs(gv_integral(solve_theta(s * w).theta) - base));
  c.require(rescale < kGvRescaleTol, "rescaling drift " + fmt(rescale));

  const auto t0 = std::chrono::steady_clock::now();
  std::vector<double> drift;
  for (int n : {16, 32, 64})
    drift.push_back(std::abs(gv_integral(solve_theta(gv_tilted(n, false)).theta) -
                             gv_integral(solve_theta(gv_tilted(n, true)).theta)));
  const double secs = seconds_since(t0);
  const double o1 = std::log2(drift[0] / drift[1]), o2 = std::log2(drift[1] / drift[2]);
  c.require(drift[1] < drift[0] && drift[2] < drift[1], "gauge drift not decreasing");
  c.require(o1 >= kGvOrderMin && o2 >= kGvOrderMin, "gauge orders " + fmt(o1) + ", " + fmt(o2));
  c.require(secs < kGvSeconds, "runtime " + fmt(secs) + " s");
  c.detail << "exact |GV| " << fmt(exact) << ", rescale " << fmt(rescale) << ", gauge drift " << fmt(drift[0]) << " / "
           << fmt(drift[1]) << " / " << fmt(drift[2]) << " (orders " << fmt(o1) << ", " << fmt(o2) << ") in "
           << fmt(secs) << " s";
}

void leafwise_criterion(Check& c) {
  double worst = 0.0;
  for (int M = 1; M <= 6; ++M) {
    const DegreeSpectrum s0 = tangential_laplacian(0, M), s1 = tangential_laplacian(1, M), s2 = tangential_laplacian(2, M);
    c.require(s0.zero_count == 1 && s1.zero_count == 2 && s2.zero_count == 1, "kernels at M=" + std::to_string(M));
    c.require(s2.eigenvalues == s0.eigenvalues, "spec2 != spec0 at M=" + std::to_string(M));
    const std::vector<double> n0(s0.eigenvalues.begin() + s0.zero_count, s0.eigenvalues.end());
    const std::vector<double> n1(s1.eigenvalues.begin() + s1.zero_count, s1.eigenvalues.end());
    bool doubled = n1.size() == 2 * n0.size();
    for (std::size_t i = 0; doubled && i < n0.size(); ++i) doubled = n1[2 * i] == n0[i] && n1[2 * i + 1] == n0[i];
    c.require(doubled, "nonzero spec1 != 2 x spec0 at M=" + std::to_string(M));
    // Enumerated oracle 4 pi^2 (m^2 + n^2).
    std::vector<double> oracle;
    for (int m = -M; m <= M; ++m)
      for (int n = -M; n <= M; ++n) oracle.push_back(4.0 * std::numbers::pi * std::numbers::pi * (m * m + n * n));
    std::sort(oracle.begin(), oracle.end());
    for (std::size_t i = 0; i < oracle.size(); ++i)
      c.require(std::abs(s0.eigenvalues[i] - oracle[i]) <= 1e-12 * (1 + oracle[i]), "spec0 vs enumeration");
    worst = std::max(worst, std::abs(leafwise_torsion(M).log_torsion));
  }
  c.require(worst < kLeafTorsionTol, "max |log T| = " + fmt(worst));
  c.detail << "kernels (1,2,1), identities exact, max |log T| over M=1..6 = " << fmt(worst);
}

void cyclic_criterion(Check& c) {
  const int degree = 3, headroom = 2 * degree;
  const CyclicCochain tau = fundamental_cocycle(headroom);
  const Trilinear b = hochschild_b(tau);
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> coef(-5, 5);
  auto poly = [&] {
    TrigPoly p(degree);
    for (int k = -degree; k <= degree; ++k) p.set(k, {double(coef(rng)), double(coef(rng))});
    return p;
  };
  int bad_b = 0, bad_lambda = 0;
  const CyclicCochain lt = cyclic_lambda(tau);
  for (int t = 0; t < kCyclicProbes; ++t) {
    const TrigPoly f0 = poly(), f1 = poly(), f2 = poly();
    if (b(f0, f1, f2) != std::complex<double>(0.0, 0.0)) ++bad_b;
    if (lt(f0, f1) != tau(f0, f1)) ++bad_lambda;
  }
  c.require(bad_b == 0, std::to_string(bad_b) + " nonzero b tau");
  c.require(bad_lambda == 0, std::to_string(bad_lambda) + " lambda tau mismatches");
  double worst = 0.0;
  for (int n = -3; n <= 3; ++n) worst = std::max(worst, std::abs(k_pairing(TrigPoly::monomial(n), tau) - n));
  c.require(worst < kPairingTol, "winding error " + fmt(worst));
  for (int g = 1; g <= 4; ++g)
    c.require(std::abs(k_pairing(TrigPoly::monomial(1), tfcc_sum(g, headroom).cochain) - g) < kPairingTol,
              "tfcc g=" + std::to_string(g));
  c.detail << kCyclicProbes << " probes exact, max winding error " << fmt(worst) << ", tfcc(g) pairs to g for g=1..4";
}

void cli_determinism(Check& c) {
  const std::string dir = THREEFOLD_DATA_DIR;
  auto run_file = [&](const std::string& sub, const std::string& name) {
    Cache cache = Cache::disabled();
    return run(sub, load_manifest(dir + "/" + name), {}, cache);
  };
  for (const std::string m : {"lens51.json", "s3_all.json", "brieskorn_full.json", "torus3_faults.json"})
    c.require(deterministic_dump(run_file("all", m).report) == deterministic_dump(run_file("all", m).report),
              m + " not deterministic");

  std::set<std::string> seen;
  auto collect = [&](const RunResult& r) {
    for (const auto& w : r.report["warnings"]) seen.insert(w["code"].get<std::string>());
  };
  collect(run_file("all", "torus3_faults.json"));
  collect(run_file("reps", "torus3_empty.json"));
  collect(run_file("all", "brieskorn_full.json"));
  collect(run_file("gv", "gv_faults.json"));
  const fs::path cache_dir = fs::temp_directory_path() / ("threefold-acceptance-" + std::to_string(::getpid()));
  fs::remove_all(cache_dir);
  {
    const Manifest m = load_manifest(dir + "/lens51.json");
    {
      Cache cache = Cache::open(cache_dir.string());
      run("torsion", m, {}, cache);
    }
    for (const auto& entry : fs::directory_iterator(cache_dir)) std::ofstream(entry.path()) << "{}";
    Cache cache = Cache::open(cache_dir.string());
    collect(run("torsion", m, {}, cache));
  }
  fs::remove_all(cache_dir);
  const std::vector<std::string> expected{
      "grid-limited-enumeration", "randomized-seeds", "positive-dimensional", "empty-moduli",
      "seeds-discarded", "metric-dependent", "non-integrable", "theta-residual", "not-taut",
      "tautness-inconclusive", "cache-corrupt", "section-skipped", "leafwise-metric-dependent",
      "cs3-degenerate", "reading:torsion-weighting", "reading:frobenius", "reading:leafwise-weighting",
      "reading:cs-normalization"};
  for (const std::string& code : expected) c.require(seen.count(code) == 1, "missing warning " + code);
  c.detail << "4 manifests byte-identical modulo runtime, " << expected.size() << " warning codes surfaced";
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "representation counts", representation_counts},
      {2, "Fox calculus", fox_calculus},
      {3, "complex validity", complex_validity},
      {4, "zeta determinant", zeta_determinant},
      {5, "torsion metric independence", metric_independence},
      {6, "Chern-Simons stationarity", cs_stationarity},
      {7, "Godbillon-Vey", godbillon_vey},
      {8, "leafwise torsion", leafwise_criterion},
      {9, "cyclic cocycles", cyclic_criterion},
      {10, "CLI determinism and warnings", cli_determinism},
  };
  int failed = 0;
  for (const Criterion& cr : criteria) {
    Check c;
    try {
      cr.body(c);
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail << " exception: " << e.what();
    }
    if (!c.ok) ++failed;
    std::cout << (c.ok ? "PASS" : "FAIL") << " " << cr.id << " " << cr.name << ": " << c.detail.str() << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
