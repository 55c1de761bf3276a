#include "threefold/leafwise.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "threefold/errors.hpp"
#include "threefold/parallel.hpp"

namespace threefold {

namespace {

using cd = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Per-mode leafwise complex C0 -> C1 -> C2 in physical units.
struct ModeComplex {
  Eigen::MatrixXcd d0;  // 2 x 1
  Eigen::MatrixXcd d1;  // 1 x 2
};

ModeComplex mode_complex(int m, int n) {
  const cd i(0.0, 1.0);
  ModeComplex c{Eigen::MatrixXcd(2, 1), Eigen::MatrixXcd(1, 2)};
  c.d0 << i * (kTwoPi * m), i * (kTwoPi * n);
  c.d1 << -i * (kTwoPi * n), i * (kTwoPi * m);
  return c;
}

// Eigenvalues of Delta_k for one mode with weights W0 = 1, W1 = diag(a, 1), W2 = 1.
std::vector<double> mode_eigenvalues(int k, int m, int n, double a) {
  const ModeComplex c = mode_complex(m, n);
  Eigen::MatrixXcd w1 = Eigen::MatrixXcd::Zero(2, 2);
  w1(0, 0) = a;
  w1(1, 1) = 1.0;
  Eigen::MatrixXcd wd;  // W_k Delta_k
  Eigen::MatrixXcd wk;
  switch (k) {
    case 0:
      wd = c.d0.adjoint() * w1 * c.d0;
      wk = Eigen::MatrixXcd::Identity(1, 1);
      break;
    case 1:
      wd = w1 * c.d0 * c.d0.adjoint() * w1 + c.d1.adjoint() * c.d1;
      wk = w1;
      break;
    default:
      wd = c.d1 * w1.inverse() * c.d1.adjoint();
      wk = Eigen::MatrixXcd::Identity(1, 1);
      break;
  }
  wd = 0.5 * (wd + wd.adjoint()).eval();
  const Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> es(wd, wk, Eigen::EigenvaluesOnly);
  std::vector<double> out;
  for (Eigen::Index j = 0; j < es.eigenvalues().size(); ++j) out.push_back(es.eigenvalues()(j));
  return out;
}

}  // namespace

LeafwiseForm::LeafwiseForm(int degree, int truncation, int nz)
    : degree_(degree), truncation_(truncation), nz_(nz) {
  if (degree < 0) throw DegreeError("leafwise degree must be non-negative");
  if (degree > 2) throw DegreeError("leafwise forms have degree at most 2: Lambda^3 of a rank-2 bundle is zero");
  if (truncation < 0 || nz < 1) throw ParameterError("leafwise form needs truncation >= 0 and nz >= 1");
  const std::size_t modes = static_cast<std::size_t>(2 * truncation + 1) * (2 * truncation + 1);
  coeffs_.assign(static_cast<std::size_t>(nz) * modes * components(), cd(0.0, 0.0));
}

std::size_t LeafwiseForm::index(int z, int m, int n, int comp) const {
  const int side = 2 * truncation_ + 1;
  if (z < 0 || z >= nz_ || std::abs(m) > truncation_ || std::abs(n) > truncation_ || comp < 0 ||
      comp >= components())
    throw ParameterError("leafwise index out of range");
  return ((static_cast<std::size_t>(z) * side + (m + truncation_)) * side + (n + truncation_)) * components() + comp;
}

cd& LeafwiseForm::at(int z, int m, int n, int comp) { return coeffs_[index(z, m, n, comp)]; }
cd LeafwiseForm::at(int z, int m, int n, int comp) const { return coeffs_[index(z, m, n, comp)]; }

cd LeafwiseForm::physical(int z, int m, int n, int comp) const {
  return at(z, m, n, comp) * std::pow(kTwoPi, scale_power_);
}

bool LeafwiseForm::is_real(double tol) const {
  const int t = truncation_;
  for (int z = 0; z < nz_; ++z)
    for (int m = -t; m <= t; ++m)
      for (int n = -t; n <= t; ++n)
        for (int c = 0; c < components(); ++c)
          if (std::abs(at(z, m, n, c) - std::conj(at(z, -m, -n, c))) > tol) return false;
  return true;
}

LeafwiseForm d_f(const LeafwiseForm& f) {
  if (f.degree() >= 2) throw DegreeError("d_f of a top-degree leafwise form: there are no leafwise 3-forms");
  LeafwiseForm out(f.degree() + 1, f.truncation(), f.nz());
  out.set_scale_power(f.scale_power() + 1);
  const int t = f.truncation();
  const cd i(0.0, 1.0);
  for (int z = 0; z < f.nz(); ++z)
    for (int m = -t; m <= t; ++m)
      for (int n = -t; n <= t; ++n) {
        if (f.degree() == 0) {
          out.at(z, m, n, 0) = i * static_cast<double>(m) * f.at(z, m, n);
          out.at(z, m, n, 1) = i * static_cast<double>(n) * f.at(z, m, n);
        } else {
          // d(g_x dx + g_y dy) = (d_x g_y - d_y g_x) dx ^ dy
          out.at(z, m, n) = i * static_cast<double>(m) * f.at(z, m, n, 1) - i * static_cast<double>(n) * f.at(z, m, n, 0);
        }
      }
  return out;
}

DegreeSpectrum tangential_laplacian(int k, int truncation, const LeafMetric& metric, double zero_tol) {
  if (k < 0 || k > 2) throw DegreeError("tangential Laplacian degree must lie in 0..2");
  if (truncation < 0) throw ParameterError("truncation must be non-negative");
  if (!(metric.a > 0.0)) throw ParameterError("leaf metric scale must be positive");
  std::vector<double> ev;
  for (int m = -truncation; m <= truncation; ++m)
    for (int n = -truncation; n <= truncation; ++n)
      for (double e : mode_eigenvalues(k, m, n, metric.a)) ev.push_back(e);
  return summarize_spectrum(std::move(ev), zero_tol);
}

LeafwiseTorsion leafwise_torsion(int truncation, int nz, const LeafMetric& metric, int workers) {
  if (nz < 1) throw ParameterError("nz must be positive");
  std::vector<std::array<DegreeSpectrum, 3>> per_point(nz);
  parallel_for(static_cast<std::size_t>(nz), workers, [&](std::size_t z) {
    for (int k = 0; k < 3; ++k) per_point[z][k] = tangential_laplacian(k, truncation, metric);
  });
  return leafwise_torsion_from_spectra(per_point, truncation, metric);
}

LeafwiseTorsion leafwise_torsion_from_spectra(const std::vector<std::array<DegreeSpectrum, 3>>& per_point,
                                              int truncation, const LeafMetric& metric) {
  if (per_point.empty()) throw ParameterError("nz must be positive");
  const int nz = static_cast<int>(per_point.size());
  LeafwiseTorsion out;
  out.truncation = truncation;
  out.nz = nz;
  out.metric = metric;
  double sum = 0.0;
  for (const auto& sp : per_point) {
    double local = 0.0;
    for (int k = 0; k < 3; ++k) local += (k % 2 == 0 ? 1.0 : -1.0) * k * sp[k].log_det;
    sum += 0.5 * local / nz;
  }
  out.log_torsion = sum;
  out.torsion = std::exp(sum);
  out.spectra = per_point[0];
  for (int k = 0; k < 3; ++k) out.kernel_dims[k] = out.spectra[k].zero_count;
  out.dim_alternating = 0.5 * (out.kernel_dims[0] - out.kernel_dims[1] + out.kernel_dims[2]);
  out.metric_dependent = out.kernel_dims[0] + out.kernel_dims[1] + out.kernel_dims[2] > 0;
  return out;
}

FoliationTorsionSum foliation_torsion_sum(const std::vector<LeafwiseModel>& foliations, int truncation, int nz,
                                          int workers) {
  for (const LeafwiseModel& f : foliations)
    if (f.model != "product")
      throw UnsupportedError("foliation '" + f.label + "' uses model '" + f.model +
                             "'; only the product foliation has a leafwise spectral model");
  FoliationTorsionSum out;
  for (const LeafwiseModel& f : foliations) {
    LeafwiseTorsion t = leafwise_torsion(truncation, nz, f.metric, workers);
    out.total += t.torsion;
    out.entries.emplace_back(f.label, std::move(t));
  }
  return out;
}

Cs3Degeneracy tangential_cs3_degeneracy(int rank) {
  if (rank < 0) throw ParameterError("bundle rank must be non-negative");
  Cs3Degeneracy d;
  d.rank = rank;
  d.lambda3_dimension = rank < 3 ? 0 : rank * (rank - 1) * (rank - 2) / 6;
  d.value = 0.0;
  d.note = d.lambda3_dimension == 0
               ? "Lambda^3 F* = 0 for a rank-" + std::to_string(rank) +
                     " tangential bundle: every tangential 3-form vanishes, so the tangential Chern-Simons "
                     "integral is 0; 3-forms on the whole manifold are not considered"
               : "Lambda^3 F* has dimension " + std::to_string(d.lambda3_dimension) +
                     "; no codimension-1 foliation of a 3-manifold has a tangential bundle of this rank";
  return d;
}

}  // namespace threefold
