#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace threefold {

// su(2) basis T_a = -(i/2) sigma_a, so [T_a, T_b] = eps_abc T_c.
Eigen::Matrix2cd su2_basis(int a);
Eigen::Matrix2cd su2_from_coeffs(const std::array<double, 3>& u);
std::array<double, 3> su2_coeffs(const Eigen::Matrix2cd& m);

// su(2)-valued 1-cochain on the periodic n^3 grid over T^3 with spacing
// h = 1/n. link(mu, x, y, z) is the value on the edge from (x,y,z) to
// (x,y,z) + e_mu, i.e. the line integral of A along that edge.
class LatticeConnection {
 public:
  explicit LatticeConnection(int n);

  int n() const { return n_; }
  double spacing() const { return 1.0 / n_; }
  std::size_t link_count() const { return links_.size(); }
  std::size_t index(int mu, int x, int y, int z) const;

  const Eigen::Matrix2cd& link(int mu, int x, int y, int z) const { return links_[index(mu, x, y, z)]; }
  const Eigen::Matrix2cd& link(std::size_t i) const { return links_[i]; }
  // Throws ValidationError unless m is traceless and anti-Hermitian to 1e-12.
  void set_link(int mu, int x, int y, int z, const Eigen::Matrix2cd& m);
  void set_link(std::size_t i, const Eigen::Matrix2cd& m);

  // Samples continuum components A_mu = sum_a f(mu, a, p) T_a at edge midpoints.
  static LatticeConnection sample(int n, const std::function<double(int mu, int a, double x, double y, double z)>& f);
  // Independent uniform coefficients in [-scale, scale] per link and basis direction.
  static LatticeConnection random(int n, double scale, std::uint64_t seed);

 private:
  int n_;
  std::vector<Eigen::Matrix2cd> links_;
};

// Plaquette field, plaquette(mu, nu, x, y, z) for mu < nu, based at (x,y,z).
struct PlaquetteField {
  int n = 0;
  std::vector<Eigen::Matrix2cd> values;  // index ((x*n + y)*n + z)*3 + plane, plane 0=xy, 1=xz, 2=yz
  const Eigen::Matrix2cd& at(int plane, int x, int y, int z) const {
    return values[((static_cast<std::size_t>(x) * n + y) * n + z) * 3 + plane];
  }
  double norm() const;
};

// F = dA + A cup A.
PlaquetteField curvature(const LatticeConnection& a, int workers = 1);

// (k/4) sum over cubes of tr(A cup dA + (2/3) A cup A cup A). The trace is real
// for su(2) data; an imaginary part above 1e-10 (relative) throws.
double cs_action(const LatticeConnection& a, double level = 1.0, int workers = 1);

// Exact gradient of cs_action with respect to the coefficients u^a of every
// link, laid out as [link][a].
std::vector<double> cs_gradient(const LatticeConnection& a, double level = 1.0, int workers = 1);

// Central differences of cs_action in every link coefficient.
std::vector<double> cs_gradient_fd(const LatticeConnection& a, double step, double level = 1.0, int workers = 1);

// Continuum first variation (k/2) tr(dA ^ F) discretized with F averaged
// over the plaquettes dual to each link.
std::vector<double> curvature_gradient(const LatticeConnection& a, double level = 1.0, int workers = 1);

struct StationarityReport {
  double grad_norm = 0.0;     // |exact gradient|
  double fd_grad_norm = 0.0;  // |finite-difference gradient|
  double f_norm = 0.0;        // |F| over plaquettes
  double agreement = 0.0;     // |fd - exact| / max(|exact|, 1e-12)
  double curvature_deviation = 0.0;  // same ratio for the curvature gradient
  double field_scale = 0.0;   // max link coefficient magnitude
  double step = 0.0;
  // log2 of the ratio of directional central-difference errors at step and
  // step/2 along a fixed pseudo-random direction; 2 for a smooth action.
  double fd_order = 0.0;
};

// Error of the central difference of cs_action along `direction` at `step`,
// against the exact directional derivative.
double directional_fd_error(const LatticeConnection& a, const LatticeConnection& direction, double step,
                            double level = 1.0);

// Throws ParameterError unless step lies in [1e-6, 1e-3].
StationarityReport stationarity_check(const LatticeConnection& a, double step, double level = 1.0, int workers = 1);

}  // namespace threefold
