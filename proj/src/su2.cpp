#include "threefold/su2.hpp"

namespace threefold {

Su2Element Su2Element::exp(const std::array<double, 3>& v) {
  const double angle = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  if (angle < 1e-300) return identity();
  const double s = std::sin(angle) / angle;
  return Su2Element{std::cos(angle), s * v[0], s * v[1], s * v[2]}.normalized();
}

Su2Element Su2Element::normalized() const {
  const double n = norm();
  return {a / n, b / n, c / n, d / n};
}

Su2Element Su2Element::pow(int n) const {
  Su2Element base = n >= 0 ? *this : inverse();
  Su2Element out = identity();
  for (unsigned k = static_cast<unsigned>(n >= 0 ? n : -n); k; k >>= 1) {
    if (k & 1u) out = out * base;
    base = base * base;
  }
  return out;
}

double Su2Element::distance_to_identity() const {
  return std::sqrt((a - 1.0) * (a - 1.0) + b * b + c * c + d * d);
}

Eigen::Matrix2cd Su2Element::matrix() const {
  using C = std::complex<double>;
  Eigen::Matrix2cd m;
  m << C(a, b), C(c, d), C(-c, d), C(a, -b);
  return m;
}

Eigen::Matrix3d Su2Element::adjoint() const {
  Eigen::Matrix3d r;
  r << a * a + b * b - c * c - d * d, 2 * (b * c - a * d), 2 * (b * d + a * c),
      2 * (b * c + a * d), a * a - b * b + c * c - d * d, 2 * (c * d - a * b),
      2 * (b * d - a * c), 2 * (c * d + a * b), a * a - b * b - c * c + d * d;
  return r;
}

Su2Element operator*(const Su2Element& p, const Su2Element& q) {
  return Su2Element{p.a * q.a - p.b * q.b - p.c * q.c - p.d * q.d,
                    p.a * q.b + p.b * q.a + p.c * q.d - p.d * q.c,
                    p.a * q.c - p.b * q.d + p.c * q.a + p.d * q.b,
                    p.a * q.d + p.b * q.c - p.c * q.b + p.d * q.a}
      .normalized();
}

double distance(const Su2Element& p, const Su2Element& q) {
  return std::sqrt((p.a - q.a) * (p.a - q.a) + (p.b - q.b) * (p.b - q.b) +
                   (p.c - q.c) * (p.c - q.c) + (p.d - q.d) * (p.d - q.d));
}

Su2Element evaluate(const Word& w, std::span<const Su2Element> images) {
  Su2Element out = Su2Element::identity();
  for (const Letter& l : w) out = out * images[static_cast<std::size_t>(l.gen)].pow(l.exp);
  return out;
}

}  // namespace threefold
