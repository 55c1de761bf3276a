#include "threefold/app/manifest.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "threefold/errors.hpp"

namespace threefold {

namespace {

using nlohmann::json;

// Object reader that records which keys were consumed so unknown keys can be
// rejected once the block is read.
class Block {
 public:
  Block(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail(path_, "must be an object");
  }

  [[noreturn]] static void fail(const std::string& path, const std::string& what) {
    throw ValidationError("manifest " + path + " " + what);
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return j_.contains(key);
  }
  const json& raw(const std::string& key) {
    seen_.insert(key);
    if (!j_.contains(key)) fail(at(key), "is required");
    return j_.at(key);
  }
  std::string at(const std::string& key) const { return path_ + "." + key; }

  double number(const std::string& key, double fallback, double lo, double hi) {
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_number()) fail(at(key), "must be a number");
    const double d = v.get<double>();
    if (!(d >= lo && d <= hi)) fail(at(key), "must lie in [" + fmt(lo) + ", " + fmt(hi) + "]");
    return d;
  }
  std::int64_t integer(const std::string& key, std::int64_t fallback, std::int64_t lo, std::int64_t hi) {
    if (!has(key)) return fallback;
    return as_integer(j_.at(key), at(key), lo, hi);
  }
  std::string string(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_string()) fail(at(key), "must be a string");
    return v.get<std::string>();
  }
  std::optional<std::string> optional_string(const std::string& key) {
    if (!has(key)) return std::nullopt;
    return string(key);
  }

  void finish() const {
    for (const auto& [k, v] : j_.items())
      if (!seen_.count(k)) fail(at(k), "is not a recognized key");
  }

  static std::int64_t as_integer(const json& v, const std::string& path, std::int64_t lo, std::int64_t hi) {
    if (!v.is_number_integer()) fail(path, "must be an integer");
    const std::int64_t i = v.get<std::int64_t>();
    if (i < lo || i > hi) fail(path, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return i;
  }

 private:
  static std::string fmt(double d) {
    std::ostringstream os;
    os << d;
    return os.str();
  }
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

const json& array_of(const json& v, const std::string& path, std::size_t size = 0) {
  if (!v.is_array()) Block::fail(path, "must be an array");
  if (size && v.size() != size) Block::fail(path, "must have " + std::to_string(size) + " entries");
  return v;
}

Expression expression(const json& v, const std::string& path) {
  if (v.is_number()) return Expression::parse(v.dump());
  if (!v.is_string()) Block::fail(path, "must be an expression string");
  try {
    return Expression::parse(v.get<std::string>());
  } catch (const ParseError& e) {
    Block::fail(path, std::string("does not parse: ") + e.what());
  }
}

std::array<Expression, 3> expression3(const json& v, const std::string& path) {
  array_of(v, path, 3);
  return {expression(v[0], path + "[0]"), expression(v[1], path + "[1]"), expression(v[2], path + "[2]")};
}

std::array<int, 3> int3(const json& v, const std::string& path) {
  array_of(v, path, 3);
  std::array<int, 3> out{};
  for (int i = 0; i < 3; ++i)
    out[i] = static_cast<int>(Block::as_integer(v[i], path + "[" + std::to_string(i) + "]", -4096, 4096));
  return out;
}

std::string resolve(const std::string& base, const std::string& p) {
  const std::filesystem::path fp(p);
  return fp.is_absolute() ? p : (std::filesystem::path(base) / fp).lexically_normal().string();
}

std::uint64_t seed_value(const json& v, const std::string& path) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
    Block::fail(path, "must be a non-negative integer");
  return v.get<std::uint64_t>();
}

void read_manifold(Block& b, Manifest& m) {
  Block mb(b.raw("manifold"), "manifold");
  const std::string family = mb.string("family");
  try {
    m.manifold.family = parse_family(family);
  } catch (const ParameterError&) {
    Block::fail(mb.at("family"), "names an unknown family '" + family + "'");
  }
  if (mb.has("params")) {
    const json& ps = array_of(mb.raw("params"), mb.at("params"));
    for (std::size_t i = 0; i < ps.size(); ++i)
      m.manifold.params.push_back(
          static_cast<int>(Block::as_integer(ps[i], mb.at("params") + "[" + std::to_string(i) + "]", -100000, 100000)));
  }
  try {
    builtin_presentation(m.manifold);
  } catch (const ParameterError& e) {
    Block::fail(mb.at("params"), std::string("is invalid: ") + e.what());
  }
  mb.finish();
}

void read_solver(Block& b, Manifest& m) {
  if (!b.has("solver")) return;
  Block s(b.raw("solver"), "solver");
  SolverConfig& c = m.solver;
  c.tolerance = s.number("tolerance", c.tolerance, 1e-15, 1e-2);
  c.dedup_tolerance = s.number("dedup_tolerance", c.dedup_tolerance, 1e-14, 1e-1);
  c.commute_tolerance = s.number("commute_tolerance", c.commute_tolerance, 1e-14, 1e-1);
  c.grid = static_cast<int>(s.integer("grid", c.grid, 1, 200));
  c.max_iterations = static_cast<int>(s.integer("max_iterations", c.max_iterations, 0, 10000));
  c.random_seeds = static_cast<int>(s.integer("random_seeds", c.random_seeds, 1, 1000000));
  if (s.has("seed")) {
    c.seed = seed_value(s.raw("seed"), s.at("seed"));
    m.solver_seed_given = true;
  }
  s.finish();
}

void read_chern_simons(Block& b, Manifest& m, const std::string& base) {
  if (!b.has("chern_simons")) return;
  Block cb(b.raw("chern_simons"), "chern_simons");
  auto& cs = m.chern_simons;
  cs.n = static_cast<int>(cb.integer("n", cs.n, 2, 64));
  cs.level = cb.number("level", cs.level, -1e6, 1e6);
  cs.step = cb.number("step", cs.step, 1e-6, 1e-3);
  int sources = 0;
  if (cb.has("connection")) {
    ++sources;
    Block con(cb.raw("connection"), cb.at("connection"));
    const bool ex = con.has("expressions"), gr = con.has("grid");
    if (ex == gr) Block::fail(cb.at("connection"), "needs exactly one of 'expressions' or 'grid'");
    if (ex) {
      const json& rows = array_of(con.raw("expressions"), con.at("expressions"), 3);
      std::array<std::array<Expression, 3>, 3> e;
      for (int mu = 0; mu < 3; ++mu) e[mu] = expression3(rows[mu], con.at("expressions") + "[" + std::to_string(mu) + "]");
      cs.expressions = e;
    } else {
      cs.grid = resolve(base, con.string("grid"));
    }
    con.finish();
  }
  if (cb.has("random")) {
    ++sources;
    Block rb(cb.raw("random"), cb.at("random"));
    cs.random_scale = rb.number("scale", 0.1, 0.0, 1e3);
    if (rb.has("seed")) cs.random_seed = seed_value(rb.raw("seed"), rb.at("seed"));
    rb.finish();
  }
  if (sources > 1) Block::fail("chern_simons", "accepts only one of 'connection' or 'random'");
  cb.finish();
}

void read_foliations(Block& b, Manifest& m, const std::string& base) {
  if (!b.has("foliations")) return;
  const json& list = array_of(b.raw("foliations"), "foliations");
  std::set<std::string> labels;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string path = "foliations[" + std::to_string(i) + "]";
    Block fb(list[i], path);
    Manifest::Foliation f;
    f.label = fb.string("label");
    if (!labels.insert(f.label).second) Block::fail(fb.at("label"), "repeats label '" + f.label + "'");
    f.n = static_cast<int>(fb.integer("n", f.n, 4, 256));
    const bool ex = fb.has("omega"), gr = fb.has("omega_grid");
    if (ex == gr) Block::fail(path, "needs exactly one of 'omega' or 'omega_grid'");
    if (ex) f.omega = expression3(fb.raw("omega"), fb.at("omega"));
    else f.omega_grid = resolve(base, fb.string("omega_grid"));
    if (fb.has("theta")) f.theta = expression3(fb.raw("theta"), fb.at("theta"));
    if (fb.has("transversal")) {
      Block tb(fb.raw("transversal"), fb.at("transversal"));
      f.has_transversal = true;
      if (tb.has("start")) f.start = int3(tb.raw("start"), tb.at("start"));
      const json& steps = array_of(tb.raw("steps"), tb.at("steps"));
      if (steps.empty()) Block::fail(tb.at("steps"), "must not be empty");
      for (std::size_t s = 0; s < steps.size(); ++s)
        f.steps.push_back(int3(steps[s], tb.at("steps") + "[" + std::to_string(s) + "]"));
      f.repeat = static_cast<int>(tb.integer("repeat", 1, 1, 4096));
      tb.finish();
    }
    fb.finish();
    m.foliations.push_back(std::move(f));
  }
}

void read_gv(Block& b, Manifest& m) {
  if (!b.has("gv")) return;
  Block g(b.raw("gv"), "gv");
  m.gv.integrability_tol = g.number("integrability_tol", m.gv.integrability_tol, 0.0, 1e3);
  m.gv.theta_tol = g.number("theta_tol", m.gv.theta_tol, 0.0, 1e3);
  m.gv.tautness_tol = g.number("tautness_tol", m.gv.tautness_tol, 0.0, 1.0);
  g.finish();
}

void read_leafwise(Block& b, Manifest& m) {
  if (!b.has("leafwise")) return;
  Block lb(b.raw("leafwise"), "leafwise");
  auto& lw = m.leafwise;
  lw.truncation = static_cast<int>(lb.integer("truncation", lw.truncation, 0, 24));
  lw.nz = static_cast<int>(lb.integer("nz", lw.nz, 1, 256));
  if (lb.has("foliations")) {
    lw.foliations_given = true;
    const json& list = array_of(lb.raw("foliations"), lb.at("foliations"));
    for (std::size_t i = 0; i < list.size(); ++i) {
      Block eb(list[i], lb.at("foliations") + "[" + std::to_string(i) + "]");
      Manifest::LeafwiseEntry e;
      e.label = eb.string("label");
      if (auto model = eb.optional_string("model")) e.model = *model;
      e.leaf_scale = eb.number("leaf_scale", 1.0, 1e-6, 1e6);
      eb.finish();
      lw.foliations.push_back(std::move(e));
    }
  }
  lb.finish();
}

void read_cyclic(Block& b, Manifest& m) {
  if (!b.has("cyclic")) return;
  Block cb(b.raw("cyclic"), "cyclic");
  auto& cy = m.cyclic;
  cy.degree = static_cast<int>(cb.integer("degree", cy.degree, 1, 64));
  cy.probes = static_cast<int>(cb.integer("probes", cy.probes, 1, 10000));
  if (cb.has("seed")) cy.seed = seed_value(cb.raw("seed"), cb.at("seed"));
  if (cb.has("g")) cy.g = static_cast<int>(Block::as_integer(cb.raw("g"), cb.at("g"), 0, 1000000));
  if (cb.has("unitary")) {
    Block ub(cb.raw("unitary"), cb.at("unitary"));
    const bool w = ub.has("winding"), c = ub.has("coefficients");
    if (w == c) Block::fail(cb.at("unitary"), "needs exactly one of 'winding' or 'coefficients'");
    if (w) {
      cy.winding = static_cast<int>(ub.integer("winding", 1, -64, 64));
    } else {
      const json& list = array_of(ub.raw("coefficients"), ub.at("coefficients"));
      if (list.size() % 2 == 0) Block::fail(ub.at("coefficients"), "must have 2 D + 1 entries (modes -D..D)");
      std::vector<std::pair<double, double>> cs;
      for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string p = ub.at("coefficients") + "[" + std::to_string(i) + "]";
        const json& e = array_of(list[i], p, 2);
        if (!e[0].is_number() || !e[1].is_number()) Block::fail(p, "must be [re, im]");
        cs.emplace_back(e[0].get<double>(), e[1].get<double>());
      }
      cy.coefficients = std::move(cs);
    }
    ub.finish();
  }
  cb.finish();
}

}  // namespace

Manifest parse_manifest(const nlohmann::json& j, const std::string& base_dir) {
  Block root(j, "$");
  Manifest m;
  const std::string schema = root.string("schema");
  if (schema != Manifest::kSchema)
    Block::fail("$.schema", "is '" + schema + "', expected '" + std::string(Manifest::kSchema) + "'");
  read_manifold(root, m);
  if (root.has("seed")) m.seed = seed_value(root.raw("seed"), "$.seed");
  read_solver(root, m);
  if (root.has("torsion")) {
    Block t(root.raw("torsion"), "torsion");
    m.torsion.zero_tolerance = t.number("zero_tolerance", m.torsion.zero_tolerance, 1e-15, 1e-2);
    t.finish();
  }
  read_chern_simons(root, m, base_dir);
  read_foliations(root, m, base_dir);
  read_gv(root, m);
  read_leafwise(root, m);
  read_cyclic(root, m);
  if (auto out = root.optional_string("output")) m.output = *out;
  root.finish();
  return m;
}

Manifest load_manifest(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ValidationError("cannot open manifest " + path);
  json j;
  try {
    j = json::parse(is);
  } catch (const json::parse_error& e) {
    throw ValidationError("manifest " + path + " is not valid JSON: " + e.what());
  }
  const std::string base = std::filesystem::path(path).parent_path().string();
  Manifest m = parse_manifest(j, base.empty() ? "." : base);
  m.source_path = path;
  return m;
}

}  // namespace threefold
