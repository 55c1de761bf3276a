#include "threefold/twisted_torsion.hpp"

#include <cmath>
#include <numeric>

#include "threefold/errors.hpp"
#include "threefold/parallel.hpp"

namespace threefold {

namespace {

GroupRingElement gen(int g, int e = 1) { return GroupRingElement(Word{{g, e}}); }

int rank_of(const Eigen::MatrixXcd& m, double rel_tol) {
  if (m.size() == 0) return 0;
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& s = svd.singularValues();
  const double cutoff = rel_tol * std::max(1.0, s(0));
  return static_cast<int>((s.array() > cutoff).count());
}

// Row-convention block matrix with blocks rho(entries[i][j]), returned as its
// full transpose (the column-convention boundary).
Eigen::MatrixXcd boundary_from_blocks(const std::vector<std::vector<GroupRingElement>>& entries,
                                      std::span<const Eigen::MatrixXcd> images, int dim, int cols_cells) {
  const auto rows = static_cast<Eigen::Index>(entries.size());
  Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(rows * dim, static_cast<Eigen::Index>(cols_cells) * dim);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (int j = 0; j < cols_cells; ++j)
      r.block(i * dim, j * dim, dim, dim) = evaluate(entries[i][j], images);
  return r.transpose();
}

void check_weight(const Eigen::MatrixXcd& w, int dim, int degree) {
  if (w.size() == 0) return;
  if (w.rows() != dim || w.cols() != dim)
    throw ParameterError("weight for degree " + std::to_string(degree) + " has the wrong size");
  const double scale = std::max(1.0, w.norm());
  if ((w - w.adjoint()).norm() > 1e-12 * scale)
    throw ParameterError("weight for degree " + std::to_string(degree) + " is not Hermitian");
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(w, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() <= 1e-14 * scale)
    throw ParameterError("weight for degree " + std::to_string(degree) + " is not positive definite");
}

Eigen::MatrixXcd weight_or_identity(const CochainWeights& w, int k, int dim) {
  return w[k].size() == 0 ? Eigen::MatrixXcd::Identity(dim, dim) : w[k];
}

CwFixture validated(CwFixture cw) {
  const TwistedComplex c = build_untwisted_complex(cw);
  if (c.composition_defect() > 1e-10)
    throw ValidationError("CW fixture " + cw.presentation.label + " fails d d = 0");
  if (betti_numbers(c) != cw.expected_betti)
    throw ValidationError("CW fixture " + cw.presentation.label + " has the wrong untwisted homology");
  return cw;
}

}  // namespace

CwFixture cw_fixture(const FamilySpec& spec) {
  CwFixture cw;
  cw.presentation = builtin_presentation(spec);
  const GroupRingElement one = GroupRingElement::one();
  switch (spec.family) {
    case Family::S3:
      cw.three_cell = {gen(0) - one};
      cw.expected_betti = {1, 0, 0, 1};
      break;
    case Family::Lens: {
      const int p = spec.params[0];
      const int q = spec.params.size() > 1 ? spec.params[1] : 1;
      int q_inv = 1;
      while ((static_cast<long long>(q_inv) * q - 1) % p != 0) ++q_inv;
      cw.three_cell = {gen(0, q_inv) - one};
      cw.expected_betti = {1, 0, 0, 1};
      break;
    }
    case Family::Brieskorn:
      if (spec.params != std::vector<int>{2, 3, 5})
        throw UnsupportedError("no CW fixture for " + describe(spec) + "; only Brieskorn(2,3,5) is frozen");
      // Relators x^2 y^-3 and (y^-1 x)^5 x^-2; the 3-cell row solves c J = 0
      // in the group ring of the binary icosahedral group.
      cw.three_cell = {one - gen(1), gen(0) - gen(1)};
      cw.expected_betti = {1, 0, 0, 1};
      break;
    case Family::Torus3:
      // Relators [x,y], [y,z], [z,x].
      cw.three_cell = {one - gen(2), one - gen(0), one - gen(1)};
      cw.expected_betti = {1, 3, 3, 1};
      break;
  }
  return validated(std::move(cw));
}

double TwistedComplex::composition_defect() const {
  double worst = 0.0;
  for (int k = 0; k + 1 < 3; ++k) {
    if (boundary[k].size() == 0 || boundary[k + 1].size() == 0) continue;
    const Eigen::MatrixXcd prod = boundary[k] * boundary[k + 1];
    if (prod.size() == 0) continue;
    worst = std::max(worst, Eigen::JacobiSVD<Eigen::MatrixXcd>(prod).singularValues()(0));
  }
  return worst;
}

TwistedComplex build_twisted_complex(const CwFixture& cw, std::span<const Eigen::MatrixXcd> images) {
  const GroupPresentation& p = cw.presentation;
  if (static_cast<int>(images.size()) != p.num_generators)
    throw ParameterError("expected " + std::to_string(p.num_generators) + " generator images, got " +
                         std::to_string(images.size()));
  const int dim = images.empty() ? 1 : static_cast<int>(images[0].rows());
  for (const auto& m : images)
    if (m.rows() != dim || m.cols() != dim) throw ParameterError("generator images differ in size");
  const int g = p.num_generators;
  const int r = static_cast<int>(p.relators.size());
  if (static_cast<int>(cw.three_cell.size()) != r) throw ParameterError("3-cell row does not match relators");

  std::vector<std::vector<GroupRingElement>> r1(g, std::vector<GroupRingElement>(1));
  for (int j = 0; j < g; ++j) r1[j][0] = gen(j) - GroupRingElement::one();
  std::vector<std::vector<GroupRingElement>> r2(r, std::vector<GroupRingElement>(g));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < g; ++j) r2[i][j] = fox_derivative(p.relators[i], j);
  const std::vector<std::vector<GroupRingElement>> r3{cw.three_cell};

  TwistedComplex c;
  c.dims = {dim, g * dim, r * dim, dim};
  c.boundary[0] = boundary_from_blocks(r1, images, dim, 1);
  c.boundary[1] = boundary_from_blocks(r2, images, dim, g);
  c.boundary[2] = boundary_from_blocks(r3, images, dim, r);
  return c;
}

TwistedComplex build_twisted_complex(const CwFixture& cw, const Su2Rep& rep) {
  std::vector<Eigen::MatrixXcd> images;
  for (const Su2Element& g : rep.generator_images) images.emplace_back(g.matrix());
  return build_twisted_complex(cw, images);
}

TwistedComplex build_untwisted_complex(const CwFixture& cw) {
  const std::vector<Eigen::MatrixXcd> images(cw.presentation.num_generators, Eigen::MatrixXcd::Identity(1, 1));
  return build_twisted_complex(cw, images);
}

std::array<int, 4> betti_numbers(const TwistedComplex& c, double rel_tol) {
  std::array<int, 5> rank{};  // rank[k] = rank of d_k, with d_0 = d_4 = 0
  for (int k = 1; k <= 3; ++k) rank[k] = rank_of(c.boundary[k - 1], rel_tol);
  std::array<int, 4> b{};
  for (int k = 0; k < 4; ++k) b[k] = c.dims[k] - rank[k] - rank[k + 1];
  return b;
}

SpectrumSummary twisted_laplacians(const TwistedComplex& c, const CochainWeights& weights, double zero_tol) {
  for (int k = 0; k < 4; ++k) check_weight(weights[k], c.dims[k], k);
  std::array<Eigen::MatrixXcd, 4> w;
  for (int k = 0; k < 4; ++k) w[k] = weight_or_identity(weights, k, c.dims[k]);

  SpectrumSummary out;
  for (int k = 0; k < 4; ++k) {
    const int n = c.dims[k];
    // W_k Delta_k = d_k^* W_{k-1} d_k + W_k d_{k+1} W_{k+1}^-1 d_{k+1}^* W_k.
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
    if (k >= 1) {
      const Eigen::MatrixXcd& d = c.boundary[k - 1];
      a += d.adjoint() * w[k - 1] * d;
    }
    if (k <= 2) {
      const Eigen::MatrixXcd& d = c.boundary[k];
      a += w[k] * d * w[k + 1].llt().solve(d.adjoint() * w[k]);
    }
    a = 0.5 * (a + a.adjoint()).eval();
    std::vector<double> ev;
    if (n > 0) {
      const Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> es(a, w[k], Eigen::EigenvaluesOnly);
      for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) ev.push_back(es.eigenvalues()(i));
    }
    out.degrees.push_back(summarize_spectrum(std::move(ev), zero_tol));
  }
  return out;
}

TorsionResult rs_torsion(const TwistedComplex& c, const CochainWeights& weights, double zero_tol) {
  TorsionResult t;
  t.spectrum = twisted_laplacians(c, weights, zero_tol);
  double sum = 0.0;
  bool acyclic = true;
  for (int k = 0; k < 4; ++k) {
    const DegreeSpectrum& d = t.spectrum.degrees[k];
    sum += (k % 2 == 0 ? 1.0 : -1.0) * k * d.log_det;
    if (d.zero_count > 0) acyclic = false;
  }
  t.log_torsion = 0.5 * sum;
  t.torsion = std::exp(t.log_torsion);
  t.acyclic = acyclic;
  t.metric_dependent = !acyclic;
  return t;
}

int twisted_h1_dimension(const GroupPresentation& p, const std::vector<Su2Element>& images, double rel_tol) {
  std::vector<Eigen::MatrixXcd> ad;
  for (const Su2Element& g : images) ad.emplace_back(g.adjoint().cast<std::complex<double>>());
  CwFixture two_complex;
  two_complex.presentation = p;
  two_complex.three_cell.assign(p.relators.size(), GroupRingElement());
  const TwistedComplex c = build_twisted_complex(two_complex, ad);
  return c.dims[1] - rank_of(c.boundary[0], rel_tol) - rank_of(c.boundary[1], rel_tol);
}

std::vector<int> regularity_list(const GroupPresentation& p, const RepModuli& m) {
  std::vector<int> out;
  for (const Su2Rep& r : m.classes)
    if (r.irreducible) out.push_back(twisted_h1_dimension(p, r.generator_images));
  return out;
}

TorsionSum torsion_sum(const CwFixture& cw, const RepModuli& m, int workers) {
  return torsion_sum(
      cw, m, [&cw](const Su2Rep& r) { return rs_torsion(build_twisted_complex(cw, r)); }, workers);
}

TorsionSum torsion_sum(const CwFixture& cw, const RepModuli& m, const ClassTorsionFn& evaluate, int workers) {
  const HomologySummary h1 = homology_h1(cw.presentation);
  if (h1.betti_1 > 0)
    throw ModuliError(cw.presentation.label + " has first Betti number " + std::to_string(h1.betti_1) +
                      "; the flat-connection moduli are not finite, so the torsion sum is undefined");
  if (m.positive_dimensional)
    throw ModuliError("positive-dimensional representation moduli: the torsion sum needs a finite set of classes");
  if (m.classes.empty()) throw ModuliError("empty representation moduli");

  TorsionSum out;
  out.classes.resize(m.classes.size());
  parallel_for(m.classes.size(), workers, [&](std::size_t i) {
    const Su2Rep& r = m.classes[i];
    out.classes[i] = {r.trace_coords, r.irreducible, evaluate(r)};
  });
  bool any_metric_dependent = false;
  for (const ClassTorsion& ct : out.classes) {
    out.total += ct.result.torsion;
    if (ct.irreducible) out.irreducible_subtotal += ct.result.torsion;
    any_metric_dependent = any_metric_dependent || ct.result.metric_dependent;
  }
  out.notes.push_back("sum runs over all " + std::to_string(m.classes.size()) +
                      " classes; finiteness of the class set is what makes the sum well defined");
  if (any_metric_dependent)
    out.notes.push_back("non-acyclic classes contribute metric-dependent values (identity cell metric used)");
  return out;
}

}  // namespace threefold
