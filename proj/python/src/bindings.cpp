#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "threefold/app/cache.hpp"
#include "threefold/app/expression.hpp"
#include "threefold/app/manifest.hpp"
#include "threefold/app/pipeline.hpp"
#include "threefold/chern_simons.hpp"
#include "threefold/cyclic.hpp"
#include "threefold/dec.hpp"
#include "threefold/errors.hpp"
#include "threefold/foliation_gv.hpp"
#include "threefold/leafwise.hpp"
#include "threefold/presentations.hpp"
#include "threefold/su2reps.hpp"
#include "threefold/twisted_torsion.hpp"

namespace py = pybind11;
using namespace threefold;

namespace {

FamilySpec family(const std::string& name, const std::vector<int>& params) { return {parse_family(name), params}; }

py::dict rep_dict(const Su2Rep& r) {
  py::dict d;
  std::vector<std::array<double, 4>> images;
  for (const Su2Element& g : r.generator_images) images.push_back({g.a, g.b, g.c, g.d});
  d["generator_images"] = images;
  d["trace_coords"] = r.trace_coords;
  d["irreducible"] = r.irreducible;
  d["residual"] = r.residual;
  return d;
}

std::array<Expression, 3> parse3(const std::array<std::string, 3>& text) {
  return {Expression::parse(text[0]), Expression::parse(text[1]), Expression::parse(text[2])};
}

}  // namespace

PYBIND11_MODULE(_threefold, m) {
  m.doc() = "3-manifold invariants: flat SU(2) moduli, torsion, Chern-Simons, Godbillon-Vey, leafwise torsion, cyclic cocycles";

  auto& base = py::register_exception<Error>(m, "ThreefoldError", PyExc_RuntimeError);
  py::register_exception<ParameterError>(m, "ParameterError", base.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<SingularityError>(m, "SingularityError", base.ptr());
  py::register_exception<UnsupportedError>(m, "UnsupportedError", base.ptr());
  py::register_exception<RegularityError>(m, "RegularityError", base.ptr());
  py::register_exception<ModuliError>(m, "ModuliError", base.ptr());
  py::register_exception<HeadroomError>(m, "HeadroomError", base.ptr());
  py::register_exception<TautnessError>(m, "TautnessError", base.ptr());
  py::register_exception<CacheError>(m, "CacheError", base.ptr());
  py::register_exception<DegreeError>(m, "DegreeError", base.ptr());

  m.def(
      "homology_h1",
      [](const std::string& name, const std::vector<int>& params) {
        const HomologySummary h = homology_h1(builtin_presentation(family(name, params)));
        py::dict d;
        d["betti_1"] = h.betti_1;
        d["torsion_coefficients"] = h.torsion_coefficients;
        return d;
      },
      py::arg("family"), py::arg("params") = std::vector<int>{});

  m.def(
      "enumerate_reps",
      [](const std::string& name, const std::vector<int>& params, std::uint64_t seed, int workers) {
        SolverConfig cfg;
        cfg.seed = seed;
        cfg.workers = workers;
        RepModuli mod;
        {
          py::gil_scoped_release release;
          mod = enumerate_reps(builtin_presentation(family(name, params)), cfg);
        }
        py::list classes;
        for (const Su2Rep& r : mod.classes) classes.append(rep_dict(r));
        py::dict d;
        d["classes"] = classes;
        d["irreducible_count"] = mod.irreducible_count();
        d["positive_dimensional"] = mod.positive_dimensional;
        std::vector<std::string> codes;
        for (const Warning& w : mod.warnings) codes.push_back(w.code);
        d["warnings"] = codes;
        return d;
      },
      py::arg("family"), py::arg("params") = std::vector<int>{}, py::arg("seed") = 1, py::arg("workers") = 1);

  m.def(
      "torsion_sum",
      [](const std::string& name, const std::vector<int>& params, int workers) {
        const CwFixture cw = cw_fixture(family(name, params));
        TorsionSum s;
        {
          py::gil_scoped_release release;
          s = torsion_sum(cw, enumerate_reps(cw.presentation), workers);
        }
        py::list classes;
        for (const ClassTorsion& c : s.classes) {
          py::dict e;
          e["trace_coords"] = c.trace_coords;
          e["irreducible"] = c.irreducible;
          e["torsion"] = c.result.torsion;
          e["log_torsion"] = c.result.log_torsion;
          e["acyclic"] = c.result.acyclic;
          classes.append(e);
        }
        py::dict d;
        d["total"] = s.total;
        d["irreducible_subtotal"] = s.irreducible_subtotal;
        d["classes"] = classes;
        return d;
      },
      py::arg("family"), py::arg("params") = std::vector<int>{}, py::arg("workers") = 1);

  m.def(
      "cs_stationarity",
      [](int n, double scale, std::uint64_t seed, double step, double level) {
        const LatticeConnection a = LatticeConnection::random(n, scale, seed);
        const StationarityReport r = stationarity_check(a, step, level);
        py::dict d;
        d["action"] = cs_action(a, level);
        d["grad_norm"] = r.grad_norm;
        d["fd_grad_norm"] = r.fd_grad_norm;
        d["agreement"] = r.agreement;
        d["fd_order"] = r.fd_order;
        d["f_norm"] = r.f_norm;
        return d;
      },
      py::arg("n") = 4, py::arg("scale") = 0.5, py::arg("seed") = 1, py::arg("step") = 1e-4, py::arg("level") = 1.0);

  m.def(
      "godbillon_vey",
      [](const std::array<std::string, 3>& omega, int n, std::optional<std::array<std::string, 3>> theta) {
        const auto w = parse3(omega);
        const DiscreteForm form = sample_one_form(n, [&](double x, double y, double z) {
          return std::array<double, 3>{w[0](x, y, z), w[1](x, y, z), w[2](x, y, z)};
        });
        check_nonsingular(form);
        DiscreteForm th = solve_theta(form).theta;
        if (theta) {
          const auto t = parse3(*theta);
          th = sample_one_form(n, [&](double x, double y, double z) {
            return std::array<double, 3>{t[0](x, y, z), t[1](x, y, z), t[2](x, y, z)};
          });
        }
        py::dict d;
        d["gv"] = gv_integral(th);
        d["integrability"] = integrability_residual(form);
        d["theta_residual"] = theta_residual(form, th);
        return d;
      },
      py::arg("omega"), py::arg("n") = 16, py::arg("theta") = std::nullopt);

  m.def(
      "leafwise_torsion",
      [](int truncation, int nz, double leaf_scale) {
        const LeafwiseTorsion t = leafwise_torsion(truncation, nz, LeafMetric{leaf_scale});
        py::dict d;
        d["log_torsion"] = t.log_torsion;
        d["torsion"] = t.torsion;
        d["kernel_dims"] = t.kernel_dims;
        d["dim_alternating"] = t.dim_alternating;
        return d;
      },
      py::arg("truncation"), py::arg("nz") = 1, py::arg("leaf_scale") = 1.0);

  m.def(
      "tangential_spectrum",
      [](int degree, int truncation, double leaf_scale) {
        return tangential_laplacian(degree, truncation, LeafMetric{leaf_scale}).eigenvalues;
      },
      py::arg("degree"), py::arg("truncation"), py::arg("leaf_scale") = 1.0);

  m.def(
      "winding_pairing",
      [](const std::vector<std::complex<double>>& coefficients, int g) {
        if (coefficients.size() % 2 == 0) throw ParameterError("coefficient list must have odd length 2 D + 1");
        const int degree = static_cast<int>(coefficients.size() / 2);
        const TrigPoly u = TrigPoly::from_coefficients(degree, coefficients);
        const CyclicCochain phi = g == 1 ? fundamental_cocycle(2 * degree) : tfcc_sum(g, 2 * degree).cochain;
        return k_pairing(u, phi);
      },
      py::arg("coefficients"), py::arg("g") = 1,
      "phi(u^-1, u) for the unitary u = sum_k c_k e^{ik theta}, c listed for k = -D..D; phi = g tau");

  m.def(
      "run",
      [](const std::string& subcommand, const std::string& manifest, int workers, bool strict,
         std::optional<std::uint64_t> seed, bool use_cache) {
        const Manifest mf = load_manifest(manifest);
        Cache cache = use_cache ? Cache::open(Cache::default_dir()) : Cache::disabled();
        RunOptions opt;
        opt.workers = workers;
        opt.strict = strict;
        opt.seed = seed;
        RunResult r;
        {
          py::gil_scoped_release release;
          r = run(subcommand, mf, opt, cache);
        }
        return py::make_tuple(r.report.dump(), r.exit_code, deterministic_dump(r.report));
      },
      py::arg("subcommand"), py::arg("manifest"), py::arg("workers") = 1, py::arg("strict") = false,
      py::arg("seed") = std::nullopt, py::arg("use_cache") = false);

  m.attr("subcommands") = subcommands();
}
