#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "threefold/app/expression.hpp"
#include "threefold/presentations.hpp"
#include "threefold/su2reps.hpp"

namespace threefold {

// Schema-validated run description. Every block except `manifold` is
// optional and falls back to the defaults below.
struct Manifest {
  static constexpr const char* kSchema = "threefold-manifest/1";

  FamilySpec manifold;
  std::uint64_t seed = 1;
  SolverConfig solver;
  bool solver_seed_given = false;

  struct Torsion {
    double zero_tolerance = 1e-10;
  } torsion;

  struct ChernSimons {
    int n = 4;
    double level = 1.0;
    double step = 1e-4;
    // Exactly one source: expressions[mu][a], a grid dump, or random links.
    std::optional<std::array<std::array<Expression, 3>, 3>> expressions;
    std::optional<std::string> grid;
    double random_scale = 0.0;  // 0 means the flat connection A = 0
    std::optional<std::uint64_t> random_seed;
  } chern_simons;

  struct Foliation {
    std::string label;
    int n = 16;
    std::optional<std::array<Expression, 3>> omega;
    std::optional<std::string> omega_grid;
    std::optional<std::array<Expression, 3>> theta;
    bool has_transversal = false;
    std::array<int, 3> start{0, 0, 0};
    std::vector<std::array<int, 3>> steps;
    int repeat = 1;
  };
  std::vector<Foliation> foliations;

  struct Gv {
    double integrability_tol = 5e-2;
    double theta_tol = 5e-2;
    double tautness_tol = 1e-3;
  } gv;

  struct LeafwiseEntry {
    std::string label;
    std::string model = "product";
    double leaf_scale = 1.0;
  };
  struct Leafwise {
    int truncation = 2;
    int nz = 1;
    bool foliations_given = false;
    std::vector<LeafwiseEntry> foliations;
  } leafwise;

  struct Cyclic {
    int degree = 3;
    int probes = 50;
    std::optional<std::uint64_t> seed;
    int winding = 1;  // u = e^{i winding theta} unless coefficients are given
    std::optional<std::vector<std::pair<double, double>>> coefficients;  // c_k for k = -D..D
    std::optional<int> g;  // number of foliations in the transverse sum
  } cyclic;

  std::optional<std::string> output;
  std::string source_path;
};

// Throws ValidationError (with a JSON path) on schema violations, unknown
// keys, bad types or out-of-range values. Relative file paths resolve
// against base_dir.
Manifest parse_manifest(const nlohmann::json& j, const std::string& base_dir = ".");
Manifest load_manifest(const std::string& path);

}  // namespace threefold
