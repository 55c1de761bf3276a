#include "threefold/su2reps.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>

#include "threefold/errors.hpp"
#include "threefold/parallel.hpp"

namespace threefold {

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::VectorXd relator_vector(const GroupPresentation& p, const std::vector<Su2Element>& images) {
  Eigen::VectorXd f(4 * static_cast<Eigen::Index>(p.relators.size()));
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    const Su2Element r = evaluate(p.relators[i], images);
    f.segment<4>(4 * static_cast<Eigen::Index>(i)) << r.a - 1.0, r.b, r.c, r.d;
  }
  return f;
}

// Central-difference Jacobian of the relator vector under left perturbations
// g_k -> exp(eps e_a) g_k.
Eigen::MatrixXd relator_jacobian(const GroupPresentation& p, const std::vector<Su2Element>& images) {
  constexpr double eps = 1e-7;
  const Eigen::Index rows = 4 * static_cast<Eigen::Index>(p.relators.size());
  Eigen::MatrixXd jac(rows, 3 * static_cast<Eigen::Index>(images.size()));
  std::vector<Su2Element> probe = images;
  for (std::size_t k = 0; k < images.size(); ++k) {
    for (int a = 0; a < 3; ++a) {
      std::array<double, 3> v{0.0, 0.0, 0.0};
      v[a] = eps;
      probe[k] = Su2Element::exp(v) * images[k];
      const Eigen::VectorXd plus = relator_vector(p, probe);
      v[a] = -eps;
      probe[k] = Su2Element::exp(v) * images[k];
      const Eigen::VectorXd minus = relator_vector(p, probe);
      probe[k] = images[k];
      jac.col(3 * static_cast<Eigen::Index>(k) + a) = (plus - minus) / (2.0 * eps);
    }
  }
  return jac;
}

int numerical_rank(const Eigen::MatrixXd& m, double rel_tol) {
  if (m.size() == 0) return 0;
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  const double cutoff = rel_tol * std::max(1.0, s.size() ? s(0) : 0.0);
  return static_cast<int>((s.array() > cutoff).count());
}

bool all_central(const std::vector<Su2Element>& images, double tol) {
  return std::all_of(images.begin(), images.end(), [tol](const Su2Element& g) {
    return std::hypot(g.b, g.c, g.d) <= tol;
  });
}

int local_dimension(const GroupPresentation& p, const std::vector<Su2Element>& images, bool irreducible,
                    double commute_tol) {
  if (p.relators.empty()) return 3 * static_cast<int>(images.size()) - (irreducible ? 3 : 0);
  const int tangent = 3 * static_cast<int>(images.size()) - numerical_rank(relator_jacobian(p, images), 1e-6);
  const int orbit = irreducible ? 3 : (all_central(images, commute_tol) ? 0 : 2);
  return tangent - orbit;
}

// Seeds: first image on the diagonal circle, second in the (a,b,c,0) slice,
// the rest unconstrained.
std::vector<std::vector<Su2Element>> seed_set(int generators, const SolverConfig& cfg, bool& randomized) {
  const int n = std::max(cfg.grid, 2);
  const int axes = 1 + (generators >= 2 ? 2 : 0) + 3 * std::max(generators - 2, 0);
  std::vector<std::vector<Su2Element>> seeds;
  auto axis = [n](int i) { return kPi * i / (n - 1); };
  randomized = axes > 3;
  if (!randomized) {
    for (int i = 0; i < n; ++i) {
      if (generators == 1) {
        seeds.push_back({Su2Element::diagonal(axis(i))});
        continue;
      }
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          const double beta = axis(j), gamma = axis(k);
          seeds.push_back({Su2Element::diagonal(axis(i)),
                           Su2Element{std::cos(beta), std::sin(beta) * std::cos(gamma),
                                      std::sin(beta) * std::sin(gamma), 0.0}
                               .normalized()});
        }
    }
    return seeds;
  }
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> angle(0.0, kPi);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int s = 0; s < cfg.random_seeds; ++s) {
    std::vector<Su2Element> images;
    images.push_back(Su2Element::diagonal(angle(rng)));
    const double beta = angle(rng), gamma = angle(rng);
    images.push_back(
        Su2Element{std::cos(beta), std::sin(beta) * std::cos(gamma), std::sin(beta) * std::sin(gamma), 0.0}
            .normalized());
    for (int g = 2; g < generators; ++g)
      images.push_back(Su2Element{gauss(rng), gauss(rng), gauss(rng), gauss(rng)}.normalized());
    seeds.push_back(std::move(images));
  }
  return seeds;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

int RepModuli::irreducible_count() const {
  return static_cast<int>(std::count_if(classes.begin(), classes.end(), [](const Su2Rep& r) { return r.irreducible; }));
}

std::vector<double> trace_coordinates(const std::vector<Su2Element>& images) {
  std::vector<double> t;
  for (const Su2Element& g : images) t.push_back(g.trace());
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t j = i + 1; j < images.size(); ++j) t.push_back((images[i] * images[j]).trace());
  return t;
}

double relator_residual(const GroupPresentation& p, const std::vector<Su2Element>& images) {
  double r = 0.0;
  for (const Word& w : p.relators) r = std::max(r, evaluate(w, images).distance_to_identity());
  return r;
}

bool is_irreducible(const std::vector<Su2Element>& images, double tol) {
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t j = i + 1; j < images.size(); ++j)
      if (commutator(images[i], images[j]).distance_to_identity() > tol) return true;
  return false;
}

bool is_irreducible(const Su2Rep& r, double tol) { return is_irreducible(r.generator_images, tol); }

Su2Rep make_rep(const GroupPresentation& p, std::vector<Su2Element> images, double commute_tol) {
  Su2Rep r;
  r.trace_coords = trace_coordinates(images);
  r.residual = relator_residual(p, images);
  r.irreducible = is_irreducible(images, commute_tol);
  r.local_dimension = local_dimension(p, images, r.irreducible, commute_tol);
  r.generator_images = std::move(images);
  return r;
}

bool refine(const GroupPresentation& p, std::vector<Su2Element>& images, const SolverConfig& cfg) {
  Eigen::VectorXd f = relator_vector(p, images);
  // Damped Newton step; false when no halving reduces the residual.
  auto step_once = [&]() {
    const Eigen::MatrixXd jac = relator_jacobian(p, images);
    const Eigen::VectorXd step = -Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd>(jac).solve(f);
    double scale = 1.0;
    for (int halving = 0; halving < 30; ++halving) {
      std::vector<Su2Element> trial = images;
      for (std::size_t k = 0; k < images.size(); ++k) {
        const auto i = 3 * static_cast<Eigen::Index>(k);
        trial[k] = Su2Element::exp({scale * step(i), scale * step(i + 1), scale * step(i + 2)}) * images[k];
      }
      const Eigen::VectorXd ft = relator_vector(p, trial);
      if (ft.norm() < f.norm()) {
        images = std::move(trial);
        f = ft;
        return true;
      }
      scale *= 0.5;
    }
    return false;
  };
  bool converged = false;
  for (int it = 0; it < cfg.max_iterations; ++it) {
    if (relator_residual(p, images) <= cfg.tolerance) {
      converged = true;
      break;
    }
    if (!step_once()) break;
  }
  if (!converged) converged = relator_residual(p, images) <= cfg.tolerance;
  // Newton converges quadratically near a root: two more steps take an
  // accepted point to rounding level.
  if (converged && cfg.max_iterations > 0)
    for (int polish = 0; polish < 2 && f.norm() > 1e-15; ++polish)
      if (!step_once()) break;
  return converged;
}

RepModuli enumerate_reps(const GroupPresentation& p, const SolverConfig& cfg) {
  p.validate();
  RepModuli out;
  out.dedup_tolerance = cfg.dedup_tolerance;
  const HomologySummary h1 = homology_h1(p);
  if (h1.betti_1 > 0)
    out.warnings.push_back({"grid-limited-enumeration", "positive first Betti number: representation moduli need not be finite; "
                           "enumeration is grid-limited"});

  std::vector<std::vector<Su2Element>> candidates;
  if (p.num_generators == 1) {
    int order = 0;
    // A reduced one-generator relator is a single run x^e.
    for (const Word& w : p.relators) order = std::gcd(order, letter_count(w));
    if (order > 0) {
      for (int k = 0; k <= order / 2; ++k) candidates.push_back({Su2Element::diagonal(2.0 * kPi * k / order)});
      out.seeds_tried = order / 2 + 1;
    } else {
      const int n = std::max(cfg.grid, 2);
      for (int k = 0; k < n; ++k) candidates.push_back({Su2Element::diagonal(kPi * k / (n - 1))});
      out.seeds_tried = n;
    }
  } else {
    bool randomized = false;
    auto seeds = seed_set(p.num_generators, cfg, randomized);
    if (randomized)
      out.warnings.push_back({"randomized-seeds", "more than two generators: " + std::to_string(seeds.size()) +
                                                       " pseudo-random gauge-fixed seeds used instead of a full grid"});
    std::vector<std::optional<std::vector<Su2Element>>> refined(seeds.size());
    parallel_for(seeds.size(), cfg.workers, [&](std::size_t i) {
      std::vector<Su2Element> images = seeds[i];
      if (refine(p, images, cfg)) refined[i] = std::move(images);
    });
    out.seeds_tried = static_cast<int>(seeds.size());
    for (auto& r : refined) {
      if (r) candidates.push_back(std::move(*r));
      else ++out.seeds_discarded;
    }
    if (out.seeds_discarded > 0)
      out.warnings.push_back({"seeds-discarded", std::to_string(out.seeds_discarded) + " of " +
                                                      std::to_string(out.seeds_tried) +
                                                      " seeds discarded after Newton non-convergence"});
  }

  std::vector<std::vector<double>> kept_traces;
  std::vector<std::vector<Su2Element>> kept;
  for (auto& images : candidates) {
    auto t = trace_coordinates(images);
    const bool duplicate = std::any_of(kept_traces.begin(), kept_traces.end(), [&](const auto& k) {
      return max_abs_diff(k, t) < cfg.dedup_tolerance;
    });
    if (duplicate) continue;
    kept_traces.push_back(std::move(t));
    kept.push_back(std::move(images));
  }
  std::vector<Su2Rep> classes(kept.size());
  parallel_for(kept.size(), cfg.workers,
               [&](std::size_t i) { classes[i] = make_rep(p, std::move(kept[i]), cfg.commute_tolerance); });
  std::sort(classes.begin(), classes.end(),
            [](const Su2Rep& a, const Su2Rep& b) { return a.trace_coords > b.trace_coords; });
  out.classes = std::move(classes);

  for (const Su2Rep& r : out.classes)
    if (r.local_dimension > 0) out.positive_dimensional = true;
  if (out.positive_dimensional)
    out.warnings.push_back({"positive-dimensional",
                            "positive-dimensional component detected: classes listed are samples, not a finite moduli set"});
  if (out.classes.empty())
    out.warnings.push_back({"empty-moduli", "no representation found; the trivial representation should always exist"});
  return out;
}

int casson_count(const RepModuli& m, const std::vector<int>& regularity) {
  const int irreducible = m.irreducible_count();
  if (static_cast<int>(regularity.size()) != irreducible)
    throw ParameterError("regularity list has " + std::to_string(regularity.size()) + " entries for " +
                         std::to_string(irreducible) + " irreducible classes");
  for (std::size_t i = 0; i < regularity.size(); ++i)
    if (regularity[i] != 0)
      throw RegularityError("irreducible class " + std::to_string(i) + " has twisted H^1 of dimension " +
                            std::to_string(regularity[i]) + "; the count requires a regular moduli set");
  return irreducible;
}

}  // namespace threefold
