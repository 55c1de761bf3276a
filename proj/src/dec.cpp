#include "threefold/dec.hpp"

#include <cmath>

#include "threefold/errors.hpp"

namespace threefold {

namespace {

int wrap(int c, int n) { return ((c % n) + n) % n; }

std::array<int, 2> others(int mu) {
  switch (mu) {
    case 0: return {1, 2};
    case 1: return {0, 2};
    default: return {0, 1};
  }
}

std::array<int, 3> step(std::array<int, 3> p, int mu, int by = 1) {
  p[mu] += by;
  return p;
}

}  // namespace

DiscreteForm::DiscreteForm(int degree, int n) : degree_(degree), n_(n) {
  if (degree < 0 || degree > 3) throw ParameterError("form degree must lie in 0..3");
  if (n < 1) throw ParameterError("grid size must be positive");
  values_.assign(static_cast<std::size_t>(n) * n * n * components(), 0.0);
}

std::size_t DiscreteForm::index(int x, int y, int z, int comp) const {
  const std::size_t v = (static_cast<std::size_t>(wrap(x, n_)) * n_ + wrap(y, n_)) * n_ + wrap(z, n_);
  return v * static_cast<std::size_t>(components()) + comp;
}

DiscreteForm& DiscreteForm::operator+=(const DiscreteForm& o) {
  if (o.degree_ != degree_ || o.n_ != n_) throw ParameterError("adding forms of different shape");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
  return *this;
}

DiscreteForm& DiscreteForm::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

DiscreteForm operator+(DiscreteForm a, const DiscreteForm& b) { return a += b; }
DiscreteForm operator*(double s, DiscreteForm a) { return a *= s; }

int face_sign(int mu) { return mu == 1 ? -1 : 1; }

DiscreteForm exterior_derivative(const DiscreteForm& f) {
  const int n = f.n();
  if (f.degree() == 3) return DiscreteForm(3, n);  // top degree: d = 0
  DiscreteForm out(f.degree() + 1, n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        const std::array<int, 3> p{x, y, z};
        auto val = [&](std::array<int, 3> q, int c) { return f(q[0], q[1], q[2], c); };
        switch (f.degree()) {
          case 0:
            for (int mu = 0; mu < 3; ++mu) out.at(x, y, z, mu) = val(step(p, mu), 0) - val(p, 0);
            break;
          case 1:
            for (int mu = 0; mu < 3; ++mu) {
              const auto [nu, rho] = others(mu);
              out.at(x, y, z, mu) =
                  val(p, nu) + val(step(p, nu), rho) - val(step(p, rho), nu) - val(p, rho);
            }
            break;
          case 2: {
            double s = 0.0;
            for (int mu = 0; mu < 3; ++mu) s += face_sign(mu) * (val(step(p, mu), mu) - val(p, mu));
            out.at(x, y, z) = s;
            break;
          }
        }
      }
  return out;
}

DiscreteForm sample_function(int n, const ScalarField& f) {
  DiscreteForm out(0, n);
  const double h = 1.0 / n;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) out.at(x, y, z) = f(x * h, y * h, z * h);
  return out;
}

DiscreteForm sample_one_form(int n, const CovectorField& w) {
  DiscreteForm out(1, n);
  const double h = 1.0 / n;
  // Gauss-Legendre nodes and weights on [0, 1].
  const double g = std::sqrt(0.6);
  const std::array<double, 3> nodes{0.5 * (1.0 - g), 0.5, 0.5 * (1.0 + g)};
  const std::array<double, 3> weights{5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int mu = 0; mu < 3; ++mu) {
          double s = 0.0;
          for (int q = 0; q < 3; ++q) {
            std::array<double, 3> p{x * h, y * h, z * h};
            p[mu] += nodes[q] * h;
            s += weights[q] * w(p[0], p[1], p[2])[mu];
          }
          out.at(x, y, z, mu) = h * s;
        }
  return out;
}

std::array<double, 3> vertex_covector(const DiscreteForm& w, int x, int y, int z) {
  const double h = w.spacing();
  std::array<double, 3> v{};
  for (int mu = 0; mu < 3; ++mu) {
    const auto q = step({x, y, z}, mu, -1);
    v[mu] = 0.5 * (w(x, y, z, mu) + w(q[0], q[1], q[2], mu)) / h;
  }
  return v;
}

std::array<double, 3> vertex_axial(const DiscreteForm& f, int x, int y, int z) {
  const double h = f.spacing();
  std::array<double, 3> v{};
  for (int mu = 0; mu < 3; ++mu) {
    const auto [nu, rho] = others(mu);
    double s = 0.0;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        const auto q = step(step({x, y, z}, nu, -a), rho, -b);
        s += f(q[0], q[1], q[2], mu);
      }
    v[mu] = face_sign(mu) * 0.25 * s / (h * h);
  }
  return v;
}

DiscreteForm one_form_from_vertices(int n, const std::vector<std::array<double, 3>>& v) {
  DiscreteForm out(1, n);
  if (v.size() != static_cast<std::size_t>(n) * n * n) throw ParameterError("vertex field has the wrong size");
  const double h = 1.0 / n;
  auto at = [&](std::array<int, 3> p) -> const std::array<double, 3>& {
    return v[(static_cast<std::size_t>(wrap(p[0], n)) * n + wrap(p[1], n)) * n + wrap(p[2], n)];
  };
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int mu = 0; mu < 3; ++mu)
          out.at(x, y, z, mu) = 0.5 * h * (at({x, y, z})[mu] + at(step({x, y, z}, mu))[mu]);
  return out;
}

}  // namespace threefold
