#include "threefold/chern_simons.hpp"

#include <cmath>
#include <complex>
#include <random>

#include "threefold/errors.hpp"
#include "threefold/parallel.hpp"

namespace threefold {

namespace {

using cd = std::complex<double>;

// Sign of the permutation (mu, nu, rho) of (0, 1, 2).
int levi_civita(int mu, int nu, int rho) {
  return (mu - nu) * (nu - rho) * (rho - mu) / 2;
}

int plane_of(int mu, int nu) { return mu + nu - 1; }  // (0,1)->0, (0,2)->1, (1,2)->2

struct Term {
  double coef;
  int len;
  std::array<std::size_t, 3> links;
};

class Stencil {
 public:
  explicit Stencil(const LatticeConnection& a) : a_(a), n_(a.n()) {}

  std::size_t link(int mu, std::array<int, 3> p) const {
    for (int& c : p) c = ((c % n_) + n_) % n_;
    return a_.index(mu, p[0], p[1], p[2]);
  }

  // Terms of tr(A cup dA + (2/3) A cup A cup A) on the cube based at p.
  template <typename Visit>
  void cube(std::array<int, 3> p, Visit&& visit) const {
    auto shift = [](std::array<int, 3> q, int mu) {
      ++q[mu];
      return q;
    };
    for (int mu = 0; mu < 3; ++mu) {
      const int nu = mu == 0 ? 1 : 0;
      const int rho = mu == 2 ? 1 : 2;
      const double eps = levi_civita(mu, nu, rho);
      const std::size_t front = link(mu, p);
      const auto q = shift(p, mu);
      // dA_{nu rho}(q) = a_nu(q) + a_rho(q+e_nu) - a_nu(q+e_rho) - a_rho(q)
      visit(Term{eps, 2, {front, link(nu, q), 0}});
      visit(Term{eps, 2, {front, link(rho, shift(q, nu)), 0}});
      visit(Term{-eps, 2, {front, link(nu, shift(q, rho)), 0}});
      visit(Term{-eps, 2, {front, link(rho, q), 0}});
    }
    static constexpr std::array<std::array<int, 3>, 6> perms = {
        {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
    for (const auto& s : perms) {
      const auto p1 = shift(p, s[0]);
      const auto p2 = shift(p1, s[1]);
      visit(Term{(2.0 / 3.0) * levi_civita(s[0], s[1], s[2]), 3, {link(s[0], p), link(s[1], p1), link(s[2], p2)}});
    }
  }

  const LatticeConnection& a_;
  int n_;
};

cd action_sum(const LatticeConnection& a, int workers) {
  const int n = a.n();
  const Stencil st(a);
  std::vector<cd> slab(n);
  parallel_for(static_cast<std::size_t>(n), workers, [&](std::size_t ix) {
    cd s = 0.0;
    for (int iy = 0; iy < n; ++iy)
      for (int iz = 0; iz < n; ++iz)
        st.cube({static_cast<int>(ix), iy, iz}, [&](const Term& t) {
          Eigen::Matrix2cd m = a.link(t.links[0]);
          for (int k = 1; k < t.len; ++k) m = m * a.link(t.links[k]);
          s += t.coef * m.trace();
        });
    slab[ix] = s;
  });
  cd total = 0.0;
  for (const cd& s : slab) total += s;
  return total;
}

double max_coefficient(const LatticeConnection& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.link_count(); ++i)
    for (double u : su2_coeffs(a.link(i))) m = std::max(m, std::abs(u));
  return m;
}

double norm_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double relative_gap(const std::vector<double>& a, const std::vector<double>& ref) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] - ref[i]) * (a[i] - ref[i]);
  // Floor keeps the ratio finite at A = 0, where both gradients vanish.
  return std::sqrt(d) / std::max(norm_of(ref), 1e-12);
}

}  // namespace

Eigen::Matrix2cd su2_basis(int a) {
  const cd i(0.0, 1.0);
  Eigen::Matrix2cd s;
  switch (a) {
    case 0: s << 0, 1, 1, 0; break;
    case 1: s << 0, -i, i, 0; break;
    default: s << 1, 0, 0, -1; break;
  }
  return -0.5 * i * s;
}

Eigen::Matrix2cd su2_from_coeffs(const std::array<double, 3>& u) {
  return u[0] * su2_basis(0) + u[1] * su2_basis(1) + u[2] * su2_basis(2);
}

std::array<double, 3> su2_coeffs(const Eigen::Matrix2cd& m) {
  std::array<double, 3> u{};
  for (int a = 0; a < 3; ++a) u[a] = -2.0 * (su2_basis(a) * m).trace().real();
  return u;
}

LatticeConnection::LatticeConnection(int n) : n_(n) {
  if (n < 1) throw ParameterError("lattice size must be positive");
  links_.assign(3 * static_cast<std::size_t>(n) * n * n, Eigen::Matrix2cd::Zero());
}

std::size_t LatticeConnection::index(int mu, int x, int y, int z) const {
  return ((static_cast<std::size_t>(x) * n_ + y) * n_ + z) * 3 + mu;
}

void LatticeConnection::set_link(std::size_t i, const Eigen::Matrix2cd& m) {
  const double scale = std::max(1.0, m.norm());
  if (std::abs(m.trace()) > 1e-12 * scale || (m + m.adjoint()).norm() > 1e-12 * scale)
    throw ValidationError("connection value at link " + std::to_string(i) + " is not in su(2)");
  links_[i] = m;
}

void LatticeConnection::set_link(int mu, int x, int y, int z, const Eigen::Matrix2cd& m) {
  set_link(index(mu, x, y, z), m);
}

LatticeConnection LatticeConnection::sample(
    int n, const std::function<double(int mu, int a, double x, double y, double z)>& f) {
  LatticeConnection c(n);
  const double h = c.spacing();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int mu = 0; mu < 3; ++mu) {
          std::array<double, 3> p{x * h, y * h, z * h};
          p[mu] += 0.5 * h;
          std::array<double, 3> u{};
          for (int a = 0; a < 3; ++a) u[a] = h * f(mu, a, p[0], p[1], p[2]);
          c.links_[c.index(mu, x, y, z)] = su2_from_coeffs(u);
        }
  return c;
}

LatticeConnection LatticeConnection::random(int n, double scale, std::uint64_t seed) {
  LatticeConnection c(n);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-scale, scale);
  for (auto& m : c.links_) {
    std::array<double, 3> u{};
    for (double& x : u) x = dist(rng);
    m = su2_from_coeffs(u);
  }
  return c;
}

double PlaquetteField::norm() const {
  double s = 0.0;
  for (const auto& m : values) s += m.squaredNorm();
  return std::sqrt(s);
}

PlaquetteField curvature(const LatticeConnection& a, int workers) {
  const int n = a.n();
  const Stencil st(a);
  PlaquetteField f;
  f.n = n;
  f.values.assign(3 * static_cast<std::size_t>(n) * n * n, Eigen::Matrix2cd::Zero());
  parallel_for(static_cast<std::size_t>(n), workers, [&](std::size_t xs) {
    const int x = static_cast<int>(xs);
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int mu = 0; mu < 3; ++mu)
          for (int nu = mu + 1; nu < 3; ++nu) {
            std::array<int, 3> p{x, y, z}, pm = p, pn = p;
            ++pm[mu];
            ++pn[nu];
            const auto& a_mu = a.link(st.link(mu, p));
            const auto& a_nu = a.link(st.link(nu, p));
            const auto& a_nu_m = a.link(st.link(nu, pm));
            const auto& a_mu_n = a.link(st.link(mu, pn));
            const Eigen::Matrix2cd da = a_mu + a_nu_m - a_mu_n - a_nu;
            const Eigen::Matrix2cd aa = a_mu * a_nu_m - a_nu * a_mu_n;
            f.values[((static_cast<std::size_t>(x) * n + y) * n + z) * 3 + plane_of(mu, nu)] = da + aa;
          }
  });
  return f;
}

double cs_action(const LatticeConnection& a, double level, int workers) {
  const cd s = 0.25 * level * action_sum(a, workers);
  if (std::abs(s.imag()) > 1e-10 * std::max(1.0, std::abs(s.real())))
    throw ValidationError("Chern-Simons trace has imaginary part " + std::to_string(s.imag()));
  return s.real();
}

std::vector<double> cs_gradient(const LatticeConnection& a, double level, int) {
  const int n = a.n();
  const Stencil st(a);
  std::vector<Eigen::Matrix2cd> g(a.link_count(), Eigen::Matrix2cd::Zero());
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        st.cube({x, y, z}, [&](const Term& t) {
          // d tr(M_1 ... M_len) / d M_p = tr(T . M_{p+1} ... M_len M_1 ... M_{p-1})
          for (int p = 0; p < t.len; ++p) {
            Eigen::Matrix2cd rest = Eigen::Matrix2cd::Identity();
            for (int k = 1; k < t.len; ++k) rest = rest * a.link(t.links[(p + k) % t.len]);
            g[t.links[p]] += t.coef * rest;
          }
        });
  std::vector<double> out(3 * a.link_count());
  for (std::size_t i = 0; i < g.size(); ++i)
    for (int b = 0; b < 3; ++b) out[3 * i + b] = 0.25 * level * (su2_basis(b) * g[i]).trace().real();
  return out;
}

std::vector<double> cs_gradient_fd(const LatticeConnection& a, double step, double level, int workers) {
  const std::size_t total = 3 * a.link_count();
  std::vector<double> out(total);
  const int threads = std::max(1, workers);
  parallel_for(static_cast<std::size_t>(threads), threads, [&](std::size_t t) {
    LatticeConnection probe = a;
    for (std::size_t i = t; i < total; i += static_cast<std::size_t>(threads)) {
      const std::size_t l = i / 3;
      const Eigen::Matrix2cd orig = a.link(l);
      const Eigen::Matrix2cd dir = su2_basis(static_cast<int>(i % 3));
      probe.set_link(l, orig + step * dir);
      const double plus = cs_action(probe, level, 1);
      probe.set_link(l, orig - step * dir);
      const double minus = cs_action(probe, level, 1);
      probe.set_link(l, orig);
      out[i] = (plus - minus) / (2.0 * step);
    }
  });
  return out;
}

std::vector<double> curvature_gradient(const LatticeConnection& a, double level, int workers) {
  const int n = a.n();
  const PlaquetteField f = curvature(a, workers);
  std::vector<double> out(3 * a.link_count());
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int mu = 0; mu < 3; ++mu) {
          const int nu = mu == 0 ? 1 : 0;
          const int rho = mu == 2 ? 1 : 2;
          Eigen::Matrix2cd avg = Eigen::Matrix2cd::Zero();
          for (int s = 0; s < 2; ++s)
            for (int tn = 0; tn < 2; ++tn)
              for (int tr = 0; tr < 2; ++tr) {
                std::array<int, 3> p{x, y, z};
                p[mu] += s;
                p[nu] -= tn;
                p[rho] -= tr;
                for (int& c : p) c = ((c % n) + n) % n;
                avg += f.at(plane_of(nu, rho), p[0], p[1], p[2]);
              }
          avg *= levi_civita(mu, nu, rho) / 8.0;
          const std::size_t l = a.index(mu, x, y, z);
          for (int b = 0; b < 3; ++b) out[3 * l + b] = 0.5 * level * (su2_basis(b) * avg).trace().real();
        }
  return out;
}

double directional_fd_error(const LatticeConnection& a, const LatticeConnection& direction, double step,
                            double level) {
  if (direction.n() != a.n()) throw ParameterError("direction field has a different grid size");
  LatticeConnection plus = a, minus = a;
  for (std::size_t i = 0; i < a.link_count(); ++i) {
    plus.set_link(i, a.link(i) + step * direction.link(i));
    minus.set_link(i, a.link(i) - step * direction.link(i));
  }
  const auto g = cs_gradient(a, level);
  double exact = 0.0;
  for (std::size_t i = 0; i < a.link_count(); ++i) {
    const auto v = su2_coeffs(direction.link(i));
    for (int b = 0; b < 3; ++b) exact += g[3 * i + b] * v[b];
  }
  const double fd = (cs_action(plus, level) - cs_action(minus, level)) / (2.0 * step);
  return std::abs(fd - exact);
}

StationarityReport stationarity_check(const LatticeConnection& a, double step, double level, int workers) {
  if (!(step >= 1e-6 && step <= 1e-3)) throw ParameterError("finite-difference step must lie in [1e-6, 1e-3]");
  StationarityReport r;
  r.step = step;
  const auto exact = cs_gradient(a, level, workers);
  const auto fd = cs_gradient_fd(a, step, level, workers);
  const auto curv = curvature_gradient(a, level, workers);
  r.grad_norm = norm_of(exact);
  r.fd_grad_norm = norm_of(fd);
  r.f_norm = curvature(a, workers).norm();
  r.agreement = relative_gap(fd, exact);
  r.curvature_deviation = relative_gap(curv, exact);
  r.field_scale = max_coefficient(a);
  const LatticeConnection dir = LatticeConnection::random(a.n(), 1.0, 0x5eed);
  const double e1 = directional_fd_error(a, dir, step, level);
  const double e2 = directional_fd_error(a, dir, 0.5 * step, level);
  r.fd_order = (e1 > 0.0 && e2 > 0.0) ? std::log2(e1 / e2) : 0.0;
  return r;
}

}  // namespace threefold
