#pragma once

#include <array>
#include <cmath>
#include <span>

#include <Eigen/Dense>

#include "threefold/presentations.hpp"

namespace threefold {

// Unit quaternion a + b i + c j + d k, identified with
//   [[a + b i,  c + d i],
//    [-c + d i, a - b i]]  in SU(2).
// Products renormalize so that |q| = 1 holds to rounding.
struct Su2Element {
  double a = 1.0, b = 0.0, c = 0.0, d = 0.0;

  static Su2Element identity() { return {}; }
  // exp of the pure quaternion v (v in R^3 ~ su(2)); rotation angle |v| in the i,j,k plane.
  static Su2Element exp(const std::array<double, 3>& v);
  // Diagonal element a + b i with angle theta.
  static Su2Element diagonal(double theta) { return {std::cos(theta), std::sin(theta), 0.0, 0.0}; }

  double norm() const { return std::sqrt(a * a + b * b + c * c + d * d); }
  Su2Element normalized() const;
  Su2Element inverse() const { return {a, -b, -c, -d}; }
  Su2Element pow(int n) const;
  double trace() const { return 2.0 * a; }
  // Operator norm of (this - 1); equals |q - 1| for quaternions.
  double distance_to_identity() const;
  std::array<double, 3> imaginary() const { return {b, c, d}; }

  Eigen::Matrix2cd matrix() const;
  // Adjoint action on su(2) ~ R^3 as a rotation matrix.
  Eigen::Matrix3d adjoint() const;

  friend Su2Element operator*(const Su2Element& p, const Su2Element& q);
};

double distance(const Su2Element& p, const Su2Element& q);

// Value of a word with generator images substituted.
Su2Element evaluate(const Word& w, std::span<const Su2Element> images);

inline Su2Element commutator(const Su2Element& g, const Su2Element& h) {
  return g * h * g.inverse() * h.inverse();
}

}  // namespace threefold
