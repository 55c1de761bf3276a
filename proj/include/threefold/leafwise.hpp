#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "threefold/spectrum.hpp"

namespace threefold {

// Leafwise k-form (k = 0, 1, 2) on the product foliation of T^3 by the
// 2-tori z = const, expanded in e^{2 pi i (m x + n y)} for |m|, |n| <= M at
// each of nz transverse grid points. Components per mode: 1 for k = 0,
// (dx, dy) for k = 1, dx ^ dy for k = 2.
//
// The physical coefficient is stored * (2 pi)^scale_power. d_f multiplies by
// the integers i m, i n and raises scale_power, so d_f(d_f(.)) vanishes
// without rounding for integer data.
class LeafwiseForm {
 public:
  LeafwiseForm(int degree, int truncation, int nz);

  int degree() const { return degree_; }
  int truncation() const { return truncation_; }
  int nz() const { return nz_; }
  int components() const { return degree_ == 1 ? 2 : 1; }
  int scale_power() const { return scale_power_; }
  void set_scale_power(int p) { scale_power_ = p; }

  std::complex<double>& at(int z, int m, int n, int comp = 0);
  std::complex<double> at(int z, int m, int n, int comp = 0) const;
  std::complex<double> physical(int z, int m, int n, int comp = 0) const;
  const std::vector<std::complex<double>>& coefficients() const { return coeffs_; }

  // True when coefficient(-m,-n) = conj(coefficient(m,n)) within tol.
  bool is_real(double tol = 0.0) const;

 private:
  std::size_t index(int z, int m, int n, int comp) const;
  int degree_, truncation_, nz_;
  int scale_power_ = 0;
  std::vector<std::complex<double>> coeffs_;
};

// Leafwise exterior derivative. Throws DegreeError for degree-2 input.
LeafwiseForm d_f(const LeafwiseForm& f);

// Leaf metric model: 1-form inner product diag(a, 1), functions and 2-forms
// unweighted. a = 1 is the flat product metric.
struct LeafMetric {
  double a = 1.0;
};

// Spectrum of Delta_F on degree k at one transverse point (identical at every z
// for the product foliation). Eigenvalues in physical units, 4 pi^2 (m^2 + n^2)
// for the flat metric.
DegreeSpectrum tangential_laplacian(int k, int truncation, const LeafMetric& metric = {}, double zero_tol = 1e-10);

struct LeafwiseTorsion {
  double log_torsion = 0.0;
  double torsion = 1.0;
  std::array<int, 3> kernel_dims{};
  // 1/2 sum (-1)^i dim H^i, the alternating-dimension reading, reported alongside.
  double dim_alternating = 0.0;
  bool metric_dependent = false;
  int truncation = 0;
  int nz = 0;
  LeafMetric metric;
  std::array<DegreeSpectrum, 3> spectra;  // at one transverse point
};

// log T = 1/2 sum_k (-1)^k k log det' Delta_{F,k}, averaged over the nz
// transverse points with weight 1/nz.
LeafwiseTorsion leafwise_torsion(int truncation, int nz = 1, const LeafMetric& metric = {}, int workers = 1);
// Same assembly from precomputed per-point spectra (one triple per transverse point).
LeafwiseTorsion leafwise_torsion_from_spectra(const std::vector<std::array<DegreeSpectrum, 3>>& per_point,
                                              int truncation, const LeafMetric& metric);

struct LeafwiseModel {
  std::string label;
  std::string model = "product";  // only the product foliation has a leafwise spectrum here
  LeafMetric metric;
};

struct FoliationTorsionSum {
  double total = 0.0;
  std::vector<std::pair<std::string, LeafwiseTorsion>> entries;
};

// Sum of T over the list. Throws UnsupportedError naming the first
// foliation without a leafwise model.
FoliationTorsionSum foliation_torsion_sum(const std::vector<LeafwiseModel>& foliations, int truncation, int nz = 1,
                                          int workers = 1);

struct Cs3Degeneracy {
  int rank = 2;
  int lambda3_dimension = 0;  // binomial(rank, 3)
  double value = 0.0;
  std::string note;
};

// Tangential 3-forms live in Lambda^3 F*, which is zero for rank-2 F.
Cs3Degeneracy tangential_cs3_degeneracy(int rank = 2);

}  // namespace threefold
