#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "threefold/diagnostics.hpp"
#include "threefold/presentations.hpp"
#include "threefold/su2.hpp"

namespace threefold {

struct SolverConfig {
  double tolerance = 1e-10;        // max relator deviation |R - 1| accepted
  double dedup_tolerance = 1e-6;   // trace-coordinate distance merging two classes
  double commute_tolerance = 1e-6; // irreducibility threshold on |[g_i, g_j] - 1|
  int grid = 10;                   // seeds per gauge-fixed parameter axis
  int max_iterations = 60;
  int random_seeds = 4000;         // seed budget once the gauge-fixed grid exceeds 3 axes
  std::uint64_t seed = 1;
  int workers = 1;
};

struct Su2Rep {
  std::vector<Su2Element> generator_images;
  // tr g_i for each i, then tr(g_i g_j) for i < j.
  std::vector<double> trace_coords;
  bool irreducible = false;
  double residual = 0.0;
  // Zariski tangent dimension of the representation variety at this point
  // minus the dimension of the conjugation orbit; > 0 flags a
  // positive-dimensional component.
  int local_dimension = 0;
};

struct RepModuli {
  std::vector<Su2Rep> classes;
  double dedup_tolerance = 1e-6;
  bool positive_dimensional = false;
  int seeds_tried = 0;
  int seeds_discarded = 0;
  std::vector<Warning> warnings;

  int irreducible_count() const;
};

std::vector<double> trace_coordinates(const std::vector<Su2Element>& images);
double relator_residual(const GroupPresentation& p, const std::vector<Su2Element>& images);
bool is_irreducible(const std::vector<Su2Element>& images, double tol);
bool is_irreducible(const Su2Rep& r, double tol);

// Packs generator images into a class record (traces, residual, irreducibility, local dimension).
Su2Rep make_rep(const GroupPresentation& p, std::vector<Su2Element> images, double commute_tol = 1e-6);

// Newton refinement of the relator map SU(2)^g -> SU(2)^r, linearized in the
// Lie algebra. Returns false if the residual does not reach cfg.tolerance.
bool refine(const GroupPresentation& p, std::vector<Su2Element>& images, const SolverConfig& cfg);

// Representation classes Hom(pi_1, SU(2)) / conjugation.
// One-generator groups are enumerated exactly; otherwise gauge-fixed grid
// seeds are refined by Newton iteration and deduplicated by trace coordinates.
RepModuli enumerate_reps(const GroupPresentation& p, const SolverConfig& cfg = {});

// Unsigned Casson-type count: the number of irreducible classes, each weighted +1.
// regularity[i] is the twisted H^1 dimension of the i-th irreducible class
// (in the order they appear in m.classes). Throws RegularityError if any is nonzero.
int casson_count(const RepModuli& m, const std::vector<int>& regularity);

}  // namespace threefold
