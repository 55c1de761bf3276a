#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "threefold/group_ring.hpp"
#include "threefold/presentations.hpp"
#include "threefold/spectrum.hpp"
#include "threefold/su2reps.hpp"

namespace threefold {

// A CW structure with one 0-cell, one 1-cell per generator, one 2-cell per
// relator and one 3-cell. The 3-cell boundary is a group-ring row vector
// (one entry per relator) annihilating the Fox Jacobian.
struct CwFixture {
  GroupPresentation presentation;
  std::vector<GroupRingElement> three_cell;
  // Untwisted complex Betti numbers in degrees 0..3.
  std::array<int, 4> expected_betti{};
};

// Frozen fixtures for S3, Lens(p,q), Brieskorn(2,3,5) and Torus3. Each fixture
// is checked on construction (d d = 0 and untwisted homology); other families
// throw UnsupportedError.
CwFixture cw_fixture(const FamilySpec& spec);

// dims[k] = complex dimension of C_k; boundary[k-1] : C_k -> C_{k-1}.
struct TwistedComplex {
  std::array<int, 4> dims{};
  std::array<Eigen::MatrixXcd, 3> boundary;

  // max over k of the operator norm of boundary[k-1] * boundary[k].
  double composition_defect() const;
};

// Complex of the universal cover tensored with the representation whose
// generator matrices are `images` (all of one square size).
TwistedComplex build_twisted_complex(const CwFixture& cw, std::span<const Eigen::MatrixXcd> images);
TwistedComplex build_twisted_complex(const CwFixture& cw, const Su2Rep& rep);
// Trivial one-dimensional coefficients.
TwistedComplex build_untwisted_complex(const CwFixture& cw);

std::array<int, 4> betti_numbers(const TwistedComplex& c, double rel_tol = 1e-10);

// Per-degree Hermitian positive definite inner products on C_0..C_3. Empty
// entries mean the identity.
using CochainWeights = std::array<Eigen::MatrixXcd, 4>;

// Laplacians Delta_k = d_k^+ d_k + d_{k+1} d_{k+1}^+ with adjoints in the
// weighted inner products. Throws ParameterError for non-HPD weights.
SpectrumSummary twisted_laplacians(const TwistedComplex& c, const CochainWeights& weights = {},
                                   double zero_tol = 1e-10);

struct TorsionResult {
  double log_torsion = 0.0;
  double torsion = 1.0;
  bool acyclic = false;
  // Set when some homology survives: the value then depends on the weights.
  bool metric_dependent = false;
  SpectrumSummary spectrum;
};

// log T = 1/2 sum_k (-1)^k k log det' Delta_k.
TorsionResult rs_torsion(const TwistedComplex& c, const CochainWeights& weights = {}, double zero_tol = 1e-10);

// dim H^1 of the presentation 2-complex with coefficients in su(2) under the
// adjoint action of the class. Zero means the class is a regular point.
int twisted_h1_dimension(const GroupPresentation& p, const std::vector<Su2Element>& images,
                         double rel_tol = 1e-8);

// Regularity list for casson_count, in irreducible-class order.
std::vector<int> regularity_list(const GroupPresentation& p, const RepModuli& m);

struct ClassTorsion {
  std::vector<double> trace_coords;
  bool irreducible = false;
  TorsionResult result;
};

struct TorsionSum {
  double total = 0.0;                 // sum of T over every class
  double irreducible_subtotal = 0.0;  // sum of T over irreducible classes
  std::vector<ClassTorsion> classes;
  std::vector<std::string> notes;
};

// Sums Ray-Singer torsions over the classes of a finite moduli set. Throws
// ModuliError for positive first Betti number or positive-dimensional moduli.
TorsionSum torsion_sum(const CwFixture& cw, const RepModuli& m, int workers = 1);
// Same, with the per-class torsion supplied by `evaluate` (e.g. a cached
// lookup). Calls may run concurrently.
using ClassTorsionFn = std::function<TorsionResult(const Su2Rep&)>;
TorsionSum torsion_sum(const CwFixture& cw, const RepModuli& m, const ClassTorsionFn& evaluate, int workers = 1);

}  // namespace threefold
