#include "threefold/foliation_gv.hpp"

#include <cmath>
#include <numeric>

#include "threefold/errors.hpp"
#include "threefold/parallel.hpp"

namespace threefold {

namespace {

using Vec3 = std::array<double, 3>;

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

template <typename F>
void for_each_vertex(int n, F&& f) {
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) f(x, y, z);
}

double mean_norm(const DiscreteForm& omega) {
  double s = 0.0;
  for_each_vertex(omega.n(), [&](int x, int y, int z) {
    const Vec3 w = vertex_covector(omega, x, y, z);
    s += std::sqrt(dot(w, w));
  });
  const double n = omega.n();
  return s / (n * n * n);
}

void require_one_form(const DiscreteForm& f, const char* what) {
  if (f.degree() != 1) throw ParameterError(std::string(what) + " must be a 1-form");
}

}  // namespace

void check_nonsingular(const DiscreteForm& omega) {
  require_one_form(omega, "omega");
  const double mean = mean_norm(omega);
  const int n = omega.n();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        const Vec3 w = vertex_covector(omega, x, y, z);
        if (std::sqrt(dot(w, w)) <= 1e-6 * mean || mean == 0.0)
          throw SingularityError("defining form vanishes at vertex (" + std::to_string(x) + "," + std::to_string(y) +
                                 "," + std::to_string(z) + ")");
      }
}

double integrability_residual(const DiscreteForm& omega) {
  check_nonsingular(omega);
  const DiscreteForm dw = exterior_derivative(omega);
  double num = 0.0, nw = 0.0, nc = 0.0;
  const int n = omega.n();
  const double cell = std::pow(omega.spacing(), 3);
  for_each_vertex(n, [&](int x, int y, int z) {
    const Vec3 w = vertex_covector(omega, x, y, z);
    const Vec3 c = vertex_axial(dw, x, y, z);
    num += dot(w, c) * dot(w, c) * cell;
    nw += dot(w, w) * cell;
    nc += dot(c, c) * cell;
  });
  return std::sqrt(num) / (std::sqrt(nw) * std::sqrt(nc) + 1e-30);
}

ThetaSolution solve_theta(const DiscreteForm& omega) {
  check_nonsingular(omega);
  const int n = omega.n();
  const DiscreteForm dw = exterior_derivative(omega);
  std::vector<Vec3> theta(static_cast<std::size_t>(n) * n * n);
  double res = 0.0, ref = 0.0;
  std::size_t i = 0;
  for_each_vertex(n, [&](int x, int y, int z) {
    const Vec3 w = vertex_covector(omega, x, y, z);
    const Vec3 c = vertex_axial(dw, x, y, z);
    const double w2 = dot(w, w);
    Vec3 t = cross(w, c);
    for (double& v : t) v /= w2;
    const Vec3 r = cross(t, w);
    for (int k = 0; k < 3; ++k) res += (c[k] - r[k]) * (c[k] - r[k]);
    ref += dot(c, c);
    theta[i++] = t;
  });
  return {one_form_from_vertices(n, theta), std::sqrt(res) / (std::sqrt(ref) + 1e-30)};
}

double theta_residual(const DiscreteForm& omega, const DiscreteForm& theta) {
  require_one_form(omega, "omega");
  require_one_form(theta, "theta");
  if (omega.n() != theta.n()) throw ParameterError("omega and theta live on different grids");
  const DiscreteForm dw = exterior_derivative(omega);
  double res = 0.0, ref = 0.0;
  for_each_vertex(omega.n(), [&](int x, int y, int z) {
    const Vec3 w = vertex_covector(omega, x, y, z);
    const Vec3 t = vertex_covector(theta, x, y, z);
    const Vec3 c = vertex_axial(dw, x, y, z);
    const Vec3 r = cross(t, w);
    for (int k = 0; k < 3; ++k) res += (c[k] - r[k]) * (c[k] - r[k]);
    ref += dot(c, c) + dot(t, t) * dot(w, w);
  });
  return std::sqrt(res) / (std::sqrt(ref) + 1e-30);
}

double gv_integral(const DiscreteForm& theta) {
  require_one_form(theta, "theta");
  const DiscreteForm dt = exterior_derivative(theta);
  const int n = theta.n();
  double total = 0.0;
  for_each_vertex(n, [&](int x, int y, int z) {
    double cube = 0.0;
    for (int mu = 0; mu < 3; ++mu) {
      const int nu = mu == 0 ? 1 : 0;
      const int rho = mu == 2 ? 1 : 2;
      double t = 0.0;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          std::array<int, 3> p{x, y, z};
          p[nu] += a;
          p[rho] += b;
          t += theta(p[0], p[1], p[2], mu);
        }
      std::array<int, 3> q{x, y, z};
      ++q[mu];
      const double f = 0.5 * (dt(x, y, z, mu) + dt(q[0], q[1], q[2], mu));
      cube += face_sign(mu) * 0.25 * t * f;
    }
    total += cube;
  });
  return total;
}

std::string to_string(Tautness t) {
  switch (t) {
    case Tautness::Taut: return "taut";
    case Tautness::NotTaut: return "not-taut";
    default: return "inconclusive";
  }
}

TautnessResult tautness_check(const FoliationSpec& spec, double tol) {
  TautnessResult r;
  if (!spec.transversal || spec.transversal->steps.empty()) {
    r.status = Tautness::Inconclusive;
    r.reason = "no transversal loop supplied";
    return r;
  }
  const DiscreteForm& w = spec.omega;
  const int n = w.n();
  const Transversal& loop = *spec.transversal;
  std::array<long long, 3> total{0, 0, 0};
  for (const auto& s : loop.steps)
    for (int k = 0; k < 3; ++k) total[k] += s[k];
  for (int k = 0; k < 3; ++k)
    if (total[k] % n != 0) {
      r.status = Tautness::NotTaut;
      r.reason = "loop does not close on the grid";
      return r;
    }
  const double h = w.spacing();
  const double mean = mean_norm(w);
  std::array<int, 3> p = loop.start;
  int sign = 0;
  r.min_pairing = INFINITY;
  for (std::size_t i = 0; i < loop.steps.size(); ++i) {
    const auto& s = loop.steps[i];
    const int nonzero = (s[0] != 0) + (s[1] != 0) + (s[2] != 0);
    const double len = std::sqrt(static_cast<double>(s[0] * s[0] + s[1] * s[1] + s[2] * s[2]));
    if (nonzero == 0) throw ParameterError("transversal contains a zero step");
    std::array<int, 3> q{p[0] + s[0], p[1] + s[1], p[2] + s[2]};
    double pairing = 0.0;
    int axis = -1;
    for (int k = 0; k < 3; ++k)
      if (s[k] != 0) axis = k;
    if (nonzero == 1 && std::abs(s[axis]) == 1) {
      pairing = s[axis] > 0 ? w(p[0], p[1], p[2], axis) : -w(q[0], q[1], q[2], axis);
    } else {
      const Vec3 a = vertex_covector(w, p[0], p[1], p[2]);
      const Vec3 b = vertex_covector(w, q[0], q[1], q[2]);
      for (int k = 0; k < 3; ++k) pairing += 0.5 * h * (a[k] + b[k]) * s[k];
    }
    r.min_pairing = std::min(r.min_pairing, std::abs(pairing));
    const int sg = pairing > 0 ? 1 : (pairing < 0 ? -1 : 0);
    if (std::abs(pairing) <= tol * h * mean * len) {
      r.status = Tautness::NotTaut;
      r.reason = "step " + std::to_string(i) + " is tangent to the leaves";
      return r;
    }
    if (sign != 0 && sg != sign) {
      r.status = Tautness::NotTaut;
      r.reason = "step " + std::to_string(i) + " crosses the leaves backwards";
      return r;
    }
    sign = sg;
    p = q;
  }
  r.status = Tautness::Taut;
  r.reason = "every step crosses the leaves in the same direction";
  return r;
}

GvInvariantReport gv_invariant(const std::vector<FoliationSpec>& specs, const GvOptions& opt, int workers) {
  GvInvariantReport rep;
  rep.entries.resize(specs.size());
  std::vector<TautnessResult> taut(specs.size());
  parallel_for(specs.size(), workers, [&](std::size_t i) {
    const FoliationSpec& s = specs[i];
    GvEntry& e = rep.entries[i];
    e.label = s.label;
    e.integrability = integrability_residual(s.omega);
    DiscreteForm theta = s.theta ? *s.theta : solve_theta(s.omega).theta;
    e.theta_residual = theta_residual(s.omega, theta);
    e.gv = gv_integral(theta);
    taut[i] = tautness_check(s, opt.tautness_tol);
    e.tautness = taut[i].status;
  });
  for (std::size_t i = 0; i < specs.size(); ++i) {
    GvEntry& e = rep.entries[i];
    rep.resolution = std::max(rep.resolution, specs[i].omega.n());
    bool ok = true;
    if (e.integrability > opt.integrability_tol) {
      rep.warnings.push_back({"non-integrable", e.label + ": integrability residual " +
                                                    std::to_string(e.integrability) + " exceeds tolerance; excluded"});
      ok = false;
    }
    if (e.theta_residual > opt.theta_tol)
      rep.warnings.push_back({"theta-residual", e.label + ": theta solves d omega = theta ^ omega only to " +
                                                    std::to_string(e.theta_residual)});
    if (e.tautness != Tautness::Taut) {
      const std::string code = e.tautness == Tautness::NotTaut ? "not-taut" : "tautness-inconclusive";
      if (opt.strict) throw TautnessError(e.label + ": " + taut[i].reason);
      rep.warnings.push_back({code, e.label + ": " + taut[i].reason + "; excluded"});
      ok = false;
    }
    e.included = ok;
    if (ok) rep.total += e.gv;
  }
  return rep;
}

}  // namespace threefold
