#pragma once

#include <array>
#include <functional>
#include <vector>

namespace threefold {

// A k-cochain on the periodic n^3 cubical grid over T^3 (spacing h = 1/n).
// Degrees 0 and 3 hold one value per vertex/cube. Degrees 1 and 2 hold three
// values per vertex:
//   1-form component mu: edge from v to v + e_mu;
//   2-form component mu: face at v spanned by the two other axes (nu < rho),
//   oriented by e_nu ^ e_rho.
// Stored values are integrals over the cell.
class DiscreteForm {
 public:
  DiscreteForm(int degree, int n);

  int degree() const { return degree_; }
  int n() const { return n_; }
  double spacing() const { return 1.0 / n_; }
  int components() const { return (degree_ == 1 || degree_ == 2) ? 3 : 1; }
  std::size_t size() const { return values_.size(); }

  std::size_t index(int x, int y, int z, int comp = 0) const;
  // Periodic access; coordinates may be any integers.
  double operator()(int x, int y, int z, int comp = 0) const { return values_[index(x, y, z, comp)]; }
  double& at(int x, int y, int z, int comp = 0) { return values_[index(x, y, z, comp)]; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  DiscreteForm& operator+=(const DiscreteForm& o);
  DiscreteForm& operator*=(double s);

 private:
  int degree_;
  int n_;
  std::vector<double> values_;
};

DiscreteForm operator+(DiscreteForm a, const DiscreteForm& b);
DiscreteForm operator*(double s, DiscreteForm a);

// Exterior derivative; d(d(f)) = 0 holds up to rounding.
DiscreteForm exterior_derivative(const DiscreteForm& f);

// Orientation sign s_mu of dx^mu ^ dx^nu ^ dx^rho (nu < rho the other axes).
int face_sign(int mu);

using ScalarField = std::function<double(double x, double y, double z)>;
using CovectorField = std::function<std::array<double, 3>(double x, double y, double z)>;

DiscreteForm sample_function(int n, const ScalarField& f);
// Edge integrals of a continuum 1-form by 3-point Gauss quadrature.
DiscreteForm sample_one_form(int n, const CovectorField& w);

// Vertex-collocated components of a 1-form (average of the two edges through
// the vertex, divided by h).
std::array<double, 3> vertex_covector(const DiscreteForm& w, int x, int y, int z);
// Vertex-collocated components of a 2-form as an axial vector (average of the
// four faces with normal mu touching the vertex, divided by h^2, signed so
// that d of a 1-form gives its curl).
std::array<double, 3> vertex_axial(const DiscreteForm& f, int x, int y, int z);

// Edge cochain from vertex components: h times the mean of the endpoint values.
DiscreteForm one_form_from_vertices(int n, const std::vector<std::array<double, 3>>& v);

}  // namespace threefold
