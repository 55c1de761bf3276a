#include "threefold/cyclic.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "threefold/errors.hpp"

namespace threefold {

namespace {
using cd = std::complex<double>;
}

TrigPoly::TrigPoly(int degree) : degree_(degree) {
  if (degree < 0) throw ParameterError("trigonometric polynomial degree must be non-negative");
  c_.assign(2 * static_cast<std::size_t>(degree) + 1, cd(0.0, 0.0));
}

TrigPoly TrigPoly::monomial(int k, cd c) {
  TrigPoly p(std::abs(k));
  p.set(k, c);
  return p;
}

TrigPoly TrigPoly::from_coefficients(int degree, std::vector<cd> c) {
  if (c.size() != 2 * static_cast<std::size_t>(degree) + 1)
    throw ParameterError("coefficient list must have 2 D + 1 entries");
  TrigPoly p(degree);
  p.c_ = std::move(c);
  return p;
}

cd TrigPoly::coeff(int k) const { return std::abs(k) > degree_ ? cd(0.0, 0.0) : c_[k + degree_]; }

void TrigPoly::set(int k, cd c) {
  if (std::abs(k) > degree_) throw ParameterError("mode " + std::to_string(k) + " exceeds the degree bound");
  c_[k + degree_] = c;
}

int TrigPoly::effective_degree() const {
  for (int k = degree_; k > 0; --k)
    if (coeff(k) != cd(0.0, 0.0) || coeff(-k) != cd(0.0, 0.0)) return k;
  return 0;
}

TrigPoly TrigPoly::conj() const {
  TrigPoly p(degree_);
  for (int k = -degree_; k <= degree_; ++k) p.set(k, std::conj(coeff(-k)));
  return p;
}

cd TrigPoly::evaluate(double theta) const {
  cd s = 0.0;
  for (int k = -degree_; k <= degree_; ++k) s += coeff(k) * std::polar(1.0, k * theta);
  return s;
}

bool TrigPoly::is_real(double tol) const {
  for (int k = -degree_; k <= degree_; ++k)
    if (std::abs(coeff(k) - std::conj(coeff(-k))) > tol) return false;
  return true;
}

TrigPoly operator+(const TrigPoly& a, const TrigPoly& b) {
  TrigPoly p(std::max(a.degree(), b.degree()));
  for (int k = -p.degree(); k <= p.degree(); ++k) p.set(k, a.coeff(k) + b.coeff(k));
  return p;
}

TrigPoly operator-(const TrigPoly& a, const TrigPoly& b) { return a + cd(-1.0, 0.0) * b; }

TrigPoly operator*(cd s, const TrigPoly& a) {
  TrigPoly p(a.degree());
  for (int k = -a.degree(); k <= a.degree(); ++k) p.set(k, s * a.coeff(k));
  return p;
}

TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
  TrigPoly p(a.degree() + b.degree());
  for (int j = -a.degree(); j <= a.degree(); ++j)
    for (int k = -b.degree(); k <= b.degree(); ++k) p.c_[j + k + p.degree_] += a.coeff(j) * b.coeff(k);
  return p;
}

Product multiply(const TrigPoly& a, const TrigPoly& b, int bound) {
  const TrigPoly full = a * b;
  Product out{TrigPoly(std::min(bound, full.degree()))};
  for (int k = -full.degree(); k <= full.degree(); ++k) {
    if (std::abs(k) <= bound) out.value.set(k, full.coeff(k));
    else if (full.coeff(k) != cd(0.0, 0.0)) out.truncated = true;
  }
  return out;
}

CyclicCochain::CyclicCochain(int headroom) : headroom_(headroom) {
  if (headroom < 0) throw ParameterError("cochain headroom must be non-negative");
  const std::size_t side = 2 * static_cast<std::size_t>(headroom) + 1;
  kernel_.assign(side * side, cd(0.0, 0.0));
}

std::size_t CyclicCochain::index(int j, int k) const {
  return static_cast<std::size_t>(j + headroom_) * (2 * headroom_ + 1) + (k + headroom_);
}

cd CyclicCochain::kernel(int j, int k) const {
  if (std::abs(j) > headroom_ || std::abs(k) > headroom_) return 0.0;
  return kernel_[index(j, k)];
}

void CyclicCochain::set_kernel(int j, int k, cd v) {
  if (std::abs(j) > headroom_ || std::abs(k) > headroom_) throw HeadroomError("kernel index beyond headroom");
  kernel_[index(j, k)] = v;
}

cd CyclicCochain::operator()(const TrigPoly& f0, const TrigPoly& f1) const {
  const int d0 = f0.effective_degree(), d1 = f1.effective_degree();
  if (d0 > headroom_ || d1 > headroom_)
    throw HeadroomError("cochain built for modes up to " + std::to_string(headroom_) + " evaluated on degree " +
                        std::to_string(std::max(d0, d1)));
  cd s = 0.0;
  for (int j = -d0; j <= d0; ++j) {
    const cd a = f0.coeff(j);
    if (a == cd(0.0, 0.0)) continue;
    for (int k = -d1; k <= d1; ++k) s += kernel(j, k) * a * f1.coeff(k);
  }
  return s;
}

CyclicCochain operator+(const CyclicCochain& a, const CyclicCochain& b) {
  CyclicCochain c(std::max(a.headroom(), b.headroom()));
  const int h = c.headroom();
  for (int j = -h; j <= h; ++j)
    for (int k = -h; k <= h; ++k) c.set_kernel(j, k, a.kernel(j, k) + b.kernel(j, k));
  return c;
}

CyclicCochain operator*(cd s, const CyclicCochain& a) {
  CyclicCochain c(a.headroom());
  const int h = a.headroom();
  for (int j = -h; j <= h; ++j)
    for (int k = -h; k <= h; ++k) c.set_kernel(j, k, s * a.kernel(j, k));
  return c;
}

double distance(const CyclicCochain& a, const CyclicCochain& b) {
  const int h = std::max(a.headroom(), b.headroom());
  double m = 0.0;
  for (int j = -h; j <= h; ++j)
    for (int k = -h; k <= h; ++k) m = std::max(m, std::abs(a.kernel(j, k) - b.kernel(j, k)));
  return m;
}

CyclicCochain fundamental_cocycle(int headroom) {
  CyclicCochain t(headroom);
  for (int k = -headroom; k <= headroom; ++k) t.set_kernel(-k, k, static_cast<double>(k));
  return t;
}

Trilinear hochschild_b(const CyclicCochain& phi) {
  return [phi](const TrigPoly& f0, const TrigPoly& f1, const TrigPoly& f2) {
    return phi(f0 * f1, f2) - phi(f0, f1 * f2) + phi(f2 * f0, f1);
  };
}

CyclicCochain cyclic_lambda(const CyclicCochain& phi) {
  CyclicCochain out(phi.headroom());
  const int h = phi.headroom();
  for (int j = -h; j <= h; ++j)
    for (int k = -h; k <= h; ++k) out.set_kernel(j, k, -phi.kernel(k, j));
  return out;
}

bool is_closed(const Current1& c, double tol) {
  for (int m = -c.density.degree(); m <= c.density.degree(); ++m)
    if (m != 0 && std::abs(c.density.coeff(m)) > tol) return false;
  return true;
}

CyclicCochain current_to_cocycle(const Current1& c, int headroom) {
  CyclicCochain out(headroom);
  for (int j = -headroom; j <= headroom; ++j)
    for (int k = -headroom; k <= headroom; ++k)
      out.set_kernel(j, k, static_cast<double>(k) * c.density.coeff(-j - k));
  return out;
}

namespace {

Eigen::VectorXcd flatten(const CyclicCochain& c) {
  const int h = c.headroom();
  Eigen::VectorXcd v((2 * h + 1) * (2 * h + 1));
  Eigen::Index i = 0;
  for (int j = -h; j <= h; ++j)
    for (int k = -h; k <= h; ++k) v(i++) = c.kernel(j, k);
  return v;
}

int rank_of(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0;
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(m);
  lu.setThreshold(1e-10);
  return static_cast<int>(lu.rank());
}

}  // namespace

int current_map_rank(int density_degree, int headroom) {
  const int count = 2 * density_degree + 1;
  Eigen::MatrixXcd images((2 * headroom + 1) * (2 * headroom + 1), count);
  for (int m = -density_degree; m <= density_degree; ++m)
    images.col(m + density_degree) = flatten(current_to_cocycle({TrigPoly::monomial(m)}, headroom));
  return rank_of(images);
}

int cyclic_current_rank(int density_degree, int headroom) {
  const int count = 2 * density_degree + 1;
  const Eigen::Index rows = (2 * headroom + 1) * (2 * headroom + 1);
  Eigen::MatrixXcd images(rows, count), defect(rows, count);
  for (int m = -density_degree; m <= density_degree; ++m) {
    const CyclicCochain phi = current_to_cocycle({TrigPoly::monomial(m)}, headroom);
    images.col(m + density_degree) = flatten(phi);
    defect.col(m + density_degree) = flatten(cyclic_lambda(phi)) - flatten(phi);
  }
  // Densities with lambda phi_c = phi_c, then the span of their cocycles.
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(defect);
  lu.setThreshold(1e-10);
  const Eigen::MatrixXcd cyclic_densities = lu.kernel();
  if (lu.rank() == count) return 0;
  return rank_of(images * cyclic_densities);
}

double k_pairing(const TrigPoly& u, const CyclicCochain& phi) {
  const TrigPoly inv = u.conj();
  const TrigPoly one = u * inv;
  for (int k = -one.degree(); k <= one.degree(); ++k) {
    const cd expect = k == 0 ? cd(1.0, 0.0) : cd(0.0, 0.0);
    if (std::abs(one.coeff(k) - expect) > 1e-10)
      throw ValidationError("k_pairing needs a unitary trigonometric polynomial (u u* = 1)");
  }
  return phi(inv, u).real();
}

TfccSum tfcc_sum(int g, int headroom) {
  if (g <= 0) throw ParameterError("the number of foliations must be positive");
  return {cd(static_cast<double>(g), 0.0) * fundamental_cocycle(headroom), g};
}

}  // namespace threefold
