#include "threefold/app/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "threefold/app/grid_io.hpp"
#include "threefold/chern_simons.hpp"
#include "threefold/cyclic.hpp"
#include "threefold/errors.hpp"
#include "threefold/foliation_gv.hpp"
#include "threefold/leafwise.hpp"
#include "threefold/parallel.hpp"
#include "threefold/su2reps.hpp"
#include "threefold/twisted_torsion.hpp"

namespace threefold {

using nlohmann::json;

namespace {

constexpr const char* kReportSchema = "threefold-report/1";
// Relative tolerance for the finite-difference check and the flatness
// threshold reported in cs-check.
constexpr double kCsAgreementTol = 1e-5;
constexpr double kCsStationaryTol = 1e-6;

double sig12(double v) {
  if (!std::isfinite(v)) return v;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;
}

json sig12(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(sig12(x));
  return a;
}

json family_json(const FamilySpec& f) { return {{"family", family_name(f.family)}, {"params", f.params}}; }

struct Context {
  Context(const Manifest& manifest, RunOptions options, Cache& c, std::uint64_t s)
      : m(manifest), opt(options), cache(c), seed(s) {}

  const Manifest& m;
  RunOptions opt;
  Cache& cache;
  std::uint64_t seed;
  json warnings = json::array();
  json timings = json::object();
  std::optional<GroupPresentation> presentation;
  std::optional<RepModuli> reps;

  void warn(const std::string& section, const Warning& w) {
    warnings.push_back({{"section", section}, {"code", w.code}, {"message", w.message}});
  }
  void warn(const std::string& section, const std::vector<Warning>& ws) {
    for (const Warning& w : ws) warn(section, w);
  }
  std::uint64_t derived_seed(const std::optional<std::uint64_t>& explicit_seed, std::uint64_t offset) const {
    return explicit_seed ? *explicit_seed : seed + offset;
  }

  const GroupPresentation& group() {
    if (!presentation) presentation = builtin_presentation(m.manifold);
    return *presentation;
  }

  const RepModuli& moduli() {
    if (!reps) {
      SolverConfig cfg = m.solver;
      cfg.seed = m.solver_seed_given ? m.solver.seed : seed;
      cfg.workers = opt.workers;
      reps = enumerate_reps(group(), cfg);
      warn("reps", reps->warnings);
    }
    return *reps;
  }
};

json quaternion(const Su2Element& g) { return json::array({sig12(g.a), sig12(g.b), sig12(g.c), sig12(g.d)}); }

json section_reps(Context& c) {
  const GroupPresentation& p = c.group();
  const RepModuli& mod = c.moduli();
  const HomologySummary h1 = homology_h1(p);
  json classes = json::array();
  for (const Su2Rep& r : mod.classes) {
    json images = json::array();
    for (const Su2Element& g : r.generator_images) images.push_back(quaternion(g));
    classes.push_back({{"trace_coords", sig12(r.trace_coords)},
                       {"irreducible", r.irreducible},
                       {"residual", sig12(r.residual)},
                       {"local_dimension", r.local_dimension},
                       {"generator_images", images}});
  }
  const SolverConfig& cfg = c.m.solver;
  return {{"presentation", {{"label", p.label}, {"generators", p.num_generators}, {"relators", p.relators.size()}}},
          {"homology_h1", {{"betti_1", h1.betti_1}, {"torsion_coefficients", h1.torsion_coefficients}}},
          {"class_count", mod.classes.size()},
          {"irreducible_count", mod.irreducible_count()},
          {"positive_dimensional", mod.positive_dimensional},
          {"seeds_tried", mod.seeds_tried},
          {"seeds_discarded", mod.seeds_discarded},
          {"classes", classes},
          {"tolerances",
           {{"relator", cfg.tolerance},
            {"dedup", mod.dedup_tolerance},
            {"commute", cfg.commute_tolerance},
            {"trace_digits", 12}}},
          {"resolution", {{"grid", cfg.grid}, {"random_seeds", cfg.random_seeds}, {"max_iterations", cfg.max_iterations}}},
          {"seed", c.m.solver_seed_given ? c.m.solver.seed : c.seed}};
}

json spectrum_json(const DegreeSpectrum& d) {
  return {{"eigenvalues", d.eigenvalues}, {"zero_count", d.zero_count}, {"log_det", d.log_det}};
}

DegreeSpectrum spectrum_from_json(const json& j) {
  DegreeSpectrum d;
  d.eigenvalues = j.at("eigenvalues").get<std::vector<double>>();
  d.zero_count = j.at("zero_count").get<int>();
  d.log_det = j.at("log_det").get<double>();
  return d;
}

json torsion_payload(const TorsionResult& t) {
  json degrees = json::array();
  for (const DegreeSpectrum& d : t.spectrum.degrees) degrees.push_back(spectrum_json(d));
  return {{"log_torsion", t.log_torsion},
          {"torsion", t.torsion},
          {"acyclic", t.acyclic},
          {"metric_dependent", t.metric_dependent},
          {"spectrum", degrees}};
}

TorsionResult torsion_from_payload(const json& j) {
  TorsionResult t;
  t.log_torsion = j.at("log_torsion").get<double>();
  t.torsion = j.at("torsion").get<double>();
  t.acyclic = j.at("acyclic").get<bool>();
  t.metric_dependent = j.at("metric_dependent").get<bool>();
  for (const json& d : j.at("spectrum")) t.spectrum.degrees.push_back(spectrum_from_json(d));
  return t;
}

// Payload decode failures after a good checksum still count as corruption.
template <typename T, typename Decode>
std::optional<T> cached(Cache& cache, const json& key, Decode decode) {
  auto hit = cache.get(key);
  if (!hit) return std::nullopt;
  try {
    return decode(*hit);
  } catch (const std::exception&) {
    cache.report_malformed(key);
    return std::nullopt;
  }
}

json section_torsion(Context& c) {
  const CwFixture cw = cw_fixture(c.m.manifold);
  const RepModuli& mod = c.moduli();
  const double zero_tol = c.m.torsion.zero_tolerance;
  const TwistedComplex untwisted = build_untwisted_complex(cw);

  auto evaluate = [&](const Su2Rep& r) {
    const json key = {{"kind", "torsion-class"},
                      {"version", 1},
                      {"manifold", family_json(c.m.manifold)},
                      {"trace_coords", sig12(r.trace_coords)},
                      {"weights", "identity"},
                      {"zero_tolerance", zero_tol}};
    if (auto hit = cached<TorsionResult>(c.cache, key, torsion_from_payload)) return *hit;
    TorsionResult t = rs_torsion(build_twisted_complex(cw, r), {}, zero_tol);
    c.cache.put(key, torsion_payload(t));
    return t;
  };
  const TorsionSum sum = torsion_sum(cw, mod, evaluate, c.opt.workers);

  json classes = json::array();
  for (const ClassTorsion& ct : sum.classes) {
    json betti = json::array();
    for (const DegreeSpectrum& d : ct.result.spectrum.degrees) betti.push_back(d.zero_count);
    classes.push_back({{"trace_coords", sig12(ct.trace_coords)},
                       {"irreducible", ct.irreducible},
                       {"acyclic", ct.result.acyclic},
                       {"metric_dependent", ct.result.metric_dependent},
                       {"log_torsion", ct.result.log_torsion},
                       {"torsion", ct.result.torsion},
                       {"laplacian_kernels", betti}});
    if (ct.result.metric_dependent) {
      std::ostringstream os;
      os << "class with traces " << sig12(ct.trace_coords).dump()
         << " is not acyclic; its torsion depends on the cell inner products (identity used)";
      c.warn("torsion", Warning{"metric-dependent", os.str()});
    }
  }
  c.warn("torsion", Warning{"reading:torsion-weighting",
                            "log T = 1/2 sum_k (-1)^k k log det' Delta_k (degree-weighted log-determinants)"});
  return {{"total", sum.total},
          {"irreducible_subtotal", sum.irreducible_subtotal},
          {"class_count", sum.classes.size()},
          {"classes", classes},
          {"notes", sum.notes},
          {"fixture",
           {{"cells", cw.presentation.num_generators + static_cast<int>(cw.presentation.relators.size()) + 2},
            {"expected_betti", cw.expected_betti},
            {"untwisted_defect", untwisted.composition_defect()}}},
          {"tolerances", {{"zero_eigenvalue", zero_tol}, {"weights", "identity"}}}};
}

json section_casson(Context& c) {
  const GroupPresentation& p = c.group();
  const RepModuli& mod = c.moduli();
  if (mod.positive_dimensional)
    throw ModuliError("positive-dimensional representation moduli: a count of classes is not defined");
  if (mod.classes.empty()) throw ModuliError("empty representation moduli: nothing to count");
  const std::vector<int> reg = regularity_list(p, mod);
  json classes = json::array();
  std::size_t k = 0;
  for (const Su2Rep& r : mod.classes)
    if (r.irreducible) classes.push_back({{"trace_coords", sig12(r.trace_coords)}, {"twisted_h1", reg[k++]}});
  const int count = casson_count(mod, reg);
  const HomologySummary h1 = homology_h1(p);
  const bool sphere = h1.betti_1 == 0 && h1.torsion_coefficients.empty();
  json out = {{"count", count},
              {"kind", "unsigned Casson-type count"},
              {"weighting", "each irreducible class +1"},
              {"homology_sphere", sphere},
              {"irreducible_classes", classes},
              {"tolerances", {{"h1_rank", 1e-8}}}};
  if (!sphere) out["note"] = "not an integral homology sphere; the count is reported but is not a Casson invariant";
  return out;
}

LatticeConnection cs_connection(Context& c, std::string& source) {
  const auto& cs = c.m.chern_simons;
  if (cs.expressions) {
    source = "expressions";
    const auto& e = *cs.expressions;
    return LatticeConnection::sample(cs.n, [&](int mu, int a, double x, double y, double z) { return e[mu][a](x, y, z); });
  }
  if (cs.grid) {
    source = "grid";
    return connection_from_grid(read_grid(*cs.grid));
  }
  if (cs.random_scale > 0.0) {
    source = "random";
    return LatticeConnection::random(cs.n, cs.random_scale, c.derived_seed(cs.random_seed, 1));
  }
  source = "zero";
  return LatticeConnection(cs.n);
}

json section_cs(Context& c) {
  const auto& cs = c.m.chern_simons;
  std::string source;
  const LatticeConnection a = cs_connection(c, source);
  const StationarityReport r = stationarity_check(a, cs.step, cs.level, c.opt.workers);
  const double action = cs_action(a, cs.level, c.opt.workers);
  const double scale = std::max(1.0, r.field_scale);
  c.warn("cs-check", Warning{"reading:cs-normalization",
                             "action (k/4) sum_cubes tr(A cup dA + 2/3 A cup A cup A); su(2) basis T_a = -(i/2) sigma_a"});
  json out = {{"source", source},
              {"n", a.n()},
              {"level", cs.level},
              {"action", action},
              {"grad_norm", r.grad_norm},
              {"fd_grad_norm", r.fd_grad_norm},
              {"f_norm", r.f_norm},
              {"agreement", r.agreement},
              {"agreement_ok", r.agreement < kCsAgreementTol || r.grad_norm < kCsStationaryTol * scale},
              {"curvature_deviation", r.curvature_deviation},
              {"field_scale", r.field_scale},
              {"stationary", r.grad_norm < kCsStationaryTol * scale},
              {"fd_order", r.fd_order},
              {"resolution", {{"n", a.n()}, {"step", r.step}}},
              {"tolerances", {{"agreement", kCsAgreementTol}, {"stationary", kCsStationaryTol}}}};
  if (source == "random") out["seed"] = c.derived_seed(cs.random_seed, 1);
  return out;
}

CovectorField covector(const std::array<Expression, 3>& e) {
  return [&e](double x, double y, double z) { return std::array<double, 3>{e[0](x, y, z), e[1](x, y, z), e[2](x, y, z)}; };
}

json section_gv(Context& c) {
  std::vector<FoliationSpec> specs;
  json sources = json::array();
  for (const Manifest::Foliation& f : c.m.foliations) {
    FoliationSpec s;
    s.label = f.label;
    if (f.omega) s.omega = sample_one_form(f.n, covector(*f.omega));
    else s.omega = one_form_from_grid(read_grid(*f.omega_grid));
    if (f.theta) s.theta = sample_one_form(s.omega.n(), covector(*f.theta));
    if (f.has_transversal) {
      Transversal t;
      t.start = f.start;
      for (int r = 0; r < f.repeat; ++r) t.steps.insert(t.steps.end(), f.steps.begin(), f.steps.end());
      s.transversal = t;
    }
    sources.push_back({{"omega", f.omega ? "expressions" : "grid"}, {"theta", f.theta ? "given" : "solved"}});
    specs.push_back(std::move(s));
  }
  GvOptions opt;
  opt.integrability_tol = c.m.gv.integrability_tol;
  opt.theta_tol = c.m.gv.theta_tol;
  opt.tautness_tol = c.m.gv.tautness_tol;
  opt.strict = c.opt.strict;
  const GvInvariantReport rep = gv_invariant(specs, opt, c.opt.workers);
  c.warn("gv", rep.warnings);
  c.warn("gv", Warning{"reading:frobenius",
                       "theta is the pointwise minimal-norm solution of d omega = theta ^ omega when not given"});
  json entries = json::array();
  for (std::size_t i = 0; i < rep.entries.size(); ++i) {
    const GvEntry& e = rep.entries[i];
    entries.push_back({{"label", e.label},
                       {"n", specs[i].omega.n()},
                       {"gv", e.gv},
                       {"integrability", e.integrability},
                       {"theta_residual", e.theta_residual},
                       {"theta", sources[i]["theta"]},
                       {"omega", sources[i]["omega"]},
                       {"tautness", to_string(e.tautness)},
                       {"included", e.included}});
  }
  int included = 0;
  for (const GvEntry& e : rep.entries) included += e.included ? 1 : 0;
  return {{"total", rep.total},
          {"included_count", included},
          {"foliation_count", rep.entries.size()},
          {"entries", entries},
          {"resolution", {{"max_n", rep.resolution}}},
          {"tolerances",
           {{"integrability", opt.integrability_tol}, {"theta", opt.theta_tol}, {"tautness", opt.tautness_tol}}},
          {"strict", opt.strict}};
}

json section_leafwise(Context& c) {
  const auto& lw = c.m.leafwise;
  std::vector<Manifest::LeafwiseEntry> entries = lw.foliations;
  if (!lw.foliations_given && c.m.manifold.family == Family::Torus3) entries.push_back({"product", "product", 1.0});
  for (const auto& e : entries) {
    if (e.model != "product")
      throw UnsupportedError("foliation '" + e.label + "' uses model '" + e.model +
                             "'; only the product foliation has a leafwise spectral model");
    if (c.m.manifold.family != Family::Torus3)
      throw UnsupportedError("foliation '" + e.label + "': the product foliation model lives on Torus3, not " +
                             describe(c.m.manifold));
  }
  constexpr double zero_tol = 1e-10;
  json out_entries = json::array();
  double total = 0.0;
  for (const auto& e : entries) {
    const LeafMetric metric{e.leaf_scale};
    std::array<DegreeSpectrum, 3> sp;
    const json key = {{"kind", "leafwise-spectrum"},
                      {"version", 1},
                      {"truncation", lw.truncation},
                      {"leaf_scale", e.leaf_scale},
                      {"zero_tolerance", zero_tol}};
    auto hit = cached<std::array<DegreeSpectrum, 3>>(
        c.cache, key,
        [](const json& j) {
          std::array<DegreeSpectrum, 3> s;
          for (int k = 0; k < 3; ++k) s[k] = spectrum_from_json(j.at(k));
          return s;
        });
    if (hit) {
      sp = *hit;
    } else {
      parallel_for(3, c.opt.workers, [&](std::size_t k) {
        sp[k] = tangential_laplacian(static_cast<int>(k), lw.truncation, metric, zero_tol);
      });
      c.cache.put(key, json::array({spectrum_json(sp[0]), spectrum_json(sp[1]), spectrum_json(sp[2])}));
    }
    // The product foliation has the same leaf spectrum at every transverse point.
    const std::vector<std::array<DegreeSpectrum, 3>> per_point(lw.nz, sp);
    const LeafwiseTorsion t = leafwise_torsion_from_spectra(per_point, lw.truncation, metric);
    total += t.torsion;
    const bool identity2 = sp[2].eigenvalues == sp[0].eigenvalues;
    json logdets = json::array();
    for (int k = 0; k < 3; ++k) logdets.push_back(sp[k].log_det);
    out_entries.push_back({{"label", e.label},
                           {"model", e.model},
                           {"leaf_scale", e.leaf_scale},
                           {"log_torsion", t.log_torsion},
                           {"torsion", t.torsion},
                           {"kernel_dims", t.kernel_dims},
                           {"dim_alternating", t.dim_alternating},
                           {"log_det", logdets},
                           {"spec2_equals_spec0", identity2},
                           {"metric_dependent", t.metric_dependent}});
    if (e.leaf_scale != 1.0)
      c.warn("leafwise", Warning{"leafwise-metric-dependent",
                                 e.label + ": leafwise cohomology is nonzero, so T depends on the leaf metric (scale " +
                                     json(e.leaf_scale).dump() + " gives log T = " + json(t.log_torsion).dump() + ")"});
  }
  const Cs3Degeneracy d = tangential_cs3_degeneracy(2);
  c.warn("leafwise", Warning{"cs3-degenerate", d.note});
  c.warn("leafwise", Warning{"reading:leafwise-weighting",
                             "log T = 1/2 sum_k (-1)^k k log det' Delta_F,k; the alternating-dimension sum is "
                             "reported as dim_alternating"});
  json out = {{"total", total},
              {"entries", out_entries},
              {"tangential_cs3", {{"rank", d.rank}, {"lambda3_dimension", d.lambda3_dimension}, {"value", d.value}}},
              {"resolution", {{"truncation", lw.truncation}, {"nz", lw.nz}}},
              {"tolerances", {{"zero_eigenvalue", zero_tol}}}};
  if (entries.empty()) out["note"] = "no foliation with a leafwise model for " + describe(c.m.manifold);
  return out;
}

TrigPoly integer_probe(std::mt19937_64& rng, int degree) {
  TrigPoly p(degree);
  for (int k = -degree; k <= degree; ++k) {
    const double re = static_cast<double>(static_cast<int>(rng() % 11) - 5);
    const double im = static_cast<double>(static_cast<int>(rng() % 11) - 5);
    p.set(k, {re, im});
  }
  return p;
}

json section_cyclic(Context& c) {
  const auto& cy = c.m.cyclic;
  const int d = cy.degree;
  TrigPoly u = TrigPoly::monomial(cy.winding);
  if (cy.coefficients) {
    const int deg = static_cast<int>(cy.coefficients->size() / 2);
    std::vector<std::complex<double>> cs;
    for (const auto& [re, im] : *cy.coefficients) cs.emplace_back(re, im);
    u = TrigPoly::from_coefficients(deg, std::move(cs));
  }
  // Products of two probes need 2 D modes.
  const int headroom = 2 * d;
  const CyclicCochain tau = fundamental_cocycle(headroom);
  const Trilinear b = hochschild_b(tau);
  const std::uint64_t seed = c.derived_seed(cy.seed, 2);
  std::mt19937_64 rng(seed);
  double b_max = 0.0, lambda_max = 0.0;
  const CyclicCochain ltau = cyclic_lambda(tau);
  for (int i = 0; i < cy.probes; ++i) {
    const TrigPoly f0 = integer_probe(rng, d), f1 = integer_probe(rng, d), f2 = integer_probe(rng, d);
    b_max = std::max(b_max, std::abs(b(f0, f1, f2)));
    lambda_max = std::max(lambda_max, std::abs(ltau(f0, f1) - tau(f0, f1)));
  }
  const double pairing = k_pairing(u, tau);
  const int g = cy.g ? *cy.g : static_cast<int>(c.m.foliations.size());
  json tfcc = nullptr;
  if (g > 0) {
    const TfccSum s = tfcc_sum(g, headroom);
    tfcc = {{"g", g}, {"coefficient", s.coefficient}, {"pairing_with_e1", k_pairing(TrigPoly::monomial(1), s.cochain)}};
  }
  json out = {{"degree", d},
              {"headroom", headroom},
              {"probes", cy.probes},
              {"seed", seed},
              {"hochschild_b_max", b_max},
              {"cyclic_defect_max", lambda_max},
              {"unitary", cy.coefficients ? "coefficients" : "winding"},
              {"pairing", pairing},
              {"pairing_rounded", std::lround(pairing)},
              {"cyclic_current_rank", cyclic_current_rank(d, headroom)},
              {"current_map_rank", current_map_rank(d, headroom)},
              {"tfcc", tfcc},
              {"tolerances", {{"unitarity", 1e-10}, {"rank", 1e-10}}}};
  if (!cy.coefficients) out["winding"] = cy.winding;
  if (g == 0) out["note"] = "no foliations listed; the transverse cocycle sum is empty";
  return out;
}

using SectionFn = std::function<json(Context&)>;

const std::vector<std::pair<std::string, SectionFn>>& section_table() {
  static const std::vector<std::pair<std::string, SectionFn>> t = {
      {"reps", section_reps},         {"torsion", section_torsion}, {"casson", section_casson},
      {"cs-check", section_cs},       {"gv", section_gv},           {"leafwise", section_leafwise},
      {"cyclic", section_cyclic}};
  return t;
}

bool skippable(int code) { return code == kExitUnsupported || code == kExitModuli || code == kExitRegularity; }

json error_json(const std::exception& e) {
  return {{"type", error_type(e)}, {"message", e.what()}, {"exit_code", exit_code_for(e)}};
}

}  // namespace

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ParameterError*>(&e) || dynamic_cast<const ValidationError*>(&e) ||
      dynamic_cast<const DegreeError*>(&e))
    return kExitInvalid;
  if (dynamic_cast<const UnsupportedError*>(&e)) return kExitUnsupported;
  if (dynamic_cast<const RegularityError*>(&e)) return kExitRegularity;
  if (dynamic_cast<const TautnessError*>(&e)) return kExitTautness;
  if (dynamic_cast<const CacheError*>(&e)) return kExitCache;
  if (dynamic_cast<const ModuliError*>(&e) || dynamic_cast<const SingularityError*>(&e) ||
      dynamic_cast<const HeadroomError*>(&e))
    return kExitModuli;
  return kExitInternal;
}

std::string error_type(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
  if (dynamic_cast<const ParameterError*>(&e)) return "ParameterError";
  if (dynamic_cast<const ValidationError*>(&e)) return "ValidationError";
  if (dynamic_cast<const DegreeError*>(&e)) return "DegreeError";
  if (dynamic_cast<const UnsupportedError*>(&e)) return "UnsupportedError";
  if (dynamic_cast<const RegularityError*>(&e)) return "RegularityError";
  if (dynamic_cast<const TautnessError*>(&e)) return "TautnessError";
  if (dynamic_cast<const CacheError*>(&e)) return "CacheError";
  if (dynamic_cast<const ModuliError*>(&e)) return "ModuliError";
  if (dynamic_cast<const SingularityError*>(&e)) return "SingularityError";
  if (dynamic_cast<const HeadroomError*>(&e)) return "HeadroomError";
  return "InternalError";
}

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> s = {"reps", "torsion", "casson", "cs-check", "gv", "leafwise", "cyclic", "all"};
  return s;
}

RunResult run(const std::string& subcommand, const Manifest& manifest, const RunOptions& options, Cache& cache) {
  Context c{manifest, options, cache, options.seed ? *options.seed : manifest.seed};
  RunResult result;
  json sections = json::object();
  json error = nullptr;
  const bool all = subcommand == "all";
  bool known = all;
  const auto start_all = std::chrono::steady_clock::now();

  for (const auto& [name, fn] : section_table()) {
    if (!all && name != subcommand) continue;
    known = true;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      json s = fn(c);
      s["status"] = "ok";
      sections[name] = std::move(s);
    } catch (const std::exception& e) {
      const int code = exit_code_for(e);
      if (all && skippable(code)) {
        sections[name] = {{"status", "skipped"}, {"error", error_json(e)}};
        c.warn(name, Warning{"section-skipped", name + " skipped: " + e.what()});
      } else {
        sections[name] = {{"status", "error"}, {"error", error_json(e)}};
        error = error_json(e);
        error["section"] = name;
        result.exit_code = code;
      }
    }
    c.timings[name] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (!error.is_null()) break;
  }
  if (!known) throw ParameterError("unknown subcommand '" + subcommand + "'");

  // Cache warnings can arrive from worker threads; sort for a stable report.
  std::vector<Warning> cw = cache.take_warnings();
  std::sort(cw.begin(), cw.end(), [](const Warning& a, const Warning& b) { return a.message < b.message; });
  for (const Warning& w : cw) c.warn("cache", w);

  const Cache::Stats st = cache.stats();
  json& r = result.report;
  r["schema"] = kReportSchema;
  r["subcommand"] = subcommand;
  r["manifold"] = family_json(manifest.manifold);
  r["manifold"]["label"] = describe(manifest.manifold);
  r["seed"] = c.seed;
  r["strict"] = options.strict;
  r["status"] = error.is_null() ? "ok" : "error";
  if (!error.is_null()) r["error"] = error;
  r["sections"] = sections;
  r["warnings"] = c.warnings;
  c.timings["total"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_all).count();
  r["runtime"] = {{"timings_ms", c.timings},
                  {"workers", options.workers},
                  {"cache",
                   {{"enabled", cache.enabled()},
                    {"hits", st.hits},
                    {"misses", st.misses},
                    {"writes", st.writes},
                    {"corrupt", st.corrupt}}}};
  return result;
}

std::string deterministic_dump(const json& report) {
  json copy = report;
  copy.erase("runtime");
  return copy.dump(2);
}

std::string summarize(const json& r) {
  std::ostringstream os;
  os << "threefold " << r.value("subcommand", "?") << " on " << r["manifold"].value("label", "?") << ": "
     << r.value("status", "?") << "\n";
  auto num = [](const json& v) { return v.is_null() ? std::string("n/a") : v.dump(); };
  for (const std::string& name : subcommands()) {
    if (!r["sections"].contains(name)) continue;
    const json& s = r["sections"][name];
    os << "  " << name << ": ";
    const std::string status = s.value("status", "");
    if (status != "ok") {
      os << status << " (" << s["error"].value("type", "") << ": " << s["error"].value("message", "") << ")\n";
      continue;
    }
    if (name == "reps")
      os << s["class_count"] << " classes, " << s["irreducible_count"] << " irreducible";
    else if (name == "torsion")
      os << "sum T = " << num(s["total"]) << ", irreducible subtotal " << num(s["irreducible_subtotal"]);
    else if (name == "casson")
      os << s.value("kind", "") << " = " << s["count"];
    else if (name == "cs-check")
      os << "|grad| = " << num(s["grad_norm"]) << ", fd agreement " << num(s["agreement"]) << ", order "
         << num(s["fd_order"]);
    else if (name == "gv")
      os << "GV total " << num(s["total"]) << " over " << s["included_count"] << " of " << s["foliation_count"]
         << " foliations";
    else if (name == "leafwise")
      os << "sum T = " << num(s["total"]) << " over " << s["entries"].size() << " foliations";
    else if (name == "cyclic")
      os << "pairing " << num(s["pairing"]) << ", tfcc " << (s["tfcc"].is_null() ? "none" : s["tfcc"]["coefficient"].dump());
    os << "\n";
  }
  std::map<std::string, int> counts;
  for (const json& w : r["warnings"]) ++counts[w.value("code", "")];
  if (!counts.empty()) {
    os << "  warnings:";
    for (const auto& [code, n] : counts) os << " " << code << (n > 1 ? "x" + std::to_string(n) : "");
    os << "\n";
  }
  return os.str();
}

}  // namespace threefold
