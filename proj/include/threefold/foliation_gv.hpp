#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "threefold/dec.hpp"
#include "threefold/diagnostics.hpp"

namespace threefold {

// Closed lattice path: integer steps taken in order from `start`.
struct Transversal {
  std::array<int, 3> start{0, 0, 0};
  std::vector<std::array<int, 3>> steps;
};

struct FoliationSpec {
  std::string label;
  DiscreteForm omega{1, 1};
  std::optional<DiscreteForm> theta;  // solved when absent
  std::optional<Transversal> transversal;
};

// Throws SingularityError naming the vertex if the pointwise norm drops below
// 1e-6 times the mean norm.
void check_nonsingular(const DiscreteForm& omega);

// |omega ^ d omega| / (|omega| |d omega| + 1e-30), L2 norms over the grid.
double integrability_residual(const DiscreteForm& omega);

struct ThetaSolution {
  DiscreteForm theta{1, 1};
  // L2 norm of d omega - theta ^ omega at vertices, relative to |d omega|.
  double residual = 0.0;
};

// Pointwise minimal-norm solution of d omega = theta ^ omega:
// theta = (omega x curl omega) / |omega|^2 at each vertex.
ThetaSolution solve_theta(const DiscreteForm& omega);

// Relative residual of a given theta.
double theta_residual(const DiscreteForm& omega, const DiscreteForm& theta);

// Sum over cubes of theta ^ d theta, with theta averaged over the four
// parallel edges and d theta over the two parallel faces of each cube.
double gv_integral(const DiscreteForm& theta);

enum class Tautness { Taut, NotTaut, Inconclusive };
std::string to_string(Tautness t);

struct TautnessResult {
  Tautness status = Tautness::Inconclusive;
  std::string reason;
  double min_pairing = 0.0;  // smallest |<omega, step>| along the loop
};

// Axis steps pair with the edge cochain; other steps use the trapezoid rule
// on vertex components. Taut iff the loop closes and every pairing has the
// same sign with magnitude > tol * h * mean|omega| * |step|.
TautnessResult tautness_check(const FoliationSpec& spec, double tol = 1e-3);

struct GvOptions {
  // Smooth integrable forms have an O(h^2) discrete Frobenius defect.
  double integrability_tol = 5e-2;
  double theta_tol = 5e-2;
  double tautness_tol = 1e-3;
  bool strict = false;
};

struct GvEntry {
  std::string label;
  double gv = 0.0;
  double integrability = 0.0;
  double theta_residual = 0.0;
  Tautness tautness = Tautness::Inconclusive;
  bool included = false;
};

struct GvInvariantReport {
  double total = 0.0;
  int resolution = 0;
  std::vector<GvEntry> entries;
  std::vector<Warning> warnings;
};

// Sums gv_integral over foliations that pass integrability and tautness.
// Failing specs are excluded with a warning; in strict mode a tautness
// failure throws TautnessError.
GvInvariantReport gv_invariant(const std::vector<FoliationSpec>& specs, const GvOptions& opt = {}, int workers = 1);

}  // namespace threefold
