#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace threefold {

// Trigonometric polynomial sum_{|k| <= D} c_k e^{ik theta}.
class TrigPoly {
 public:
  explicit TrigPoly(int degree = 0);
  static TrigPoly monomial(int k, std::complex<double> c = 1.0);
  static TrigPoly from_coefficients(int degree, std::vector<std::complex<double>> c);  // c[k + degree]

  int degree() const { return degree_; }
  // Zero outside the stored range.
  std::complex<double> coeff(int k) const;
  void set(int k, std::complex<double> c);
  // Largest |k| with a nonzero coefficient (0 for the zero polynomial).
  int effective_degree() const;

  // Pointwise complex conjugate (c_k -> conj(c_{-k})).
  TrigPoly conj() const;
  std::complex<double> evaluate(double theta) const;
  bool is_real(double tol = 0.0) const;

  friend TrigPoly operator+(const TrigPoly& a, const TrigPoly& b);
  friend TrigPoly operator-(const TrigPoly& a, const TrigPoly& b);
  friend TrigPoly operator*(std::complex<double> s, const TrigPoly& a);
  // Exact product, degree D_a + D_b.
  friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b);

 private:
  int degree_;
  std::vector<std::complex<double>> c_;
};

struct Product {
  TrigPoly value;
  bool truncated = false;  // coefficients beyond the bound were discarded
};
// Product truncated at |k| <= bound, with the truncation flagged.
Product multiply(const TrigPoly& a, const TrigPoly& b, int bound);

// Bilinear functional phi(f0, f1) = sum_{j,k} K(j,k) (f0)_j (f1)_k with
// kernel supported in |j|, |k| <= headroom. Evaluating on inputs with modes
// beyond the headroom throws HeadroomError.
class CyclicCochain {
 public:
  explicit CyclicCochain(int headroom);

  int headroom() const { return headroom_; }
  std::complex<double> kernel(int j, int k) const;
  void set_kernel(int j, int k, std::complex<double> v);

  std::complex<double> operator()(const TrigPoly& f0, const TrigPoly& f1) const;

  friend CyclicCochain operator+(const CyclicCochain& a, const CyclicCochain& b);
  friend CyclicCochain operator*(std::complex<double> s, const CyclicCochain& a);
  // Max kernel difference.
  friend double distance(const CyclicCochain& a, const CyclicCochain& b);

 private:
  std::size_t index(int j, int k) const;
  int headroom_;
  std::vector<std::complex<double>> kernel_;
};

// tau(f0, f1) = (1 / 2 pi i) \oint f0 df1 = sum_k k (f0)_{-k} (f1)_k.
CyclicCochain fundamental_cocycle(int headroom);

// (b phi)(f0, f1, f2) = phi(f0 f1, f2) - phi(f0, f1 f2) + phi(f2 f0, f1).
using Trilinear = std::function<std::complex<double>(const TrigPoly&, const TrigPoly&, const TrigPoly&)>;
Trilinear hochschild_b(const CyclicCochain& phi);

// (lambda phi)(f0, f1) = -phi(f1, f0); phi is cyclic iff lambda phi = phi.
CyclicCochain cyclic_lambda(const CyclicCochain& phi);

// A 1-current on S^1 with density sum_m c_m e^{im theta}.
struct Current1 {
  TrigPoly density;
};
// A 1-current c is closed iff c(df) = 0 for every f, i.e. its density is constant.
bool is_closed(const Current1& c, double tol = 0.0);

// phi_c(f0, f1) = c(f0 df1) / 2 pi i = sum_{m+j+k=0} k c_m (f0)_j (f1)_k.
CyclicCochain current_to_cocycle(const Current1& c, int headroom);

// Dimension of the space of cyclic cocycles in the image of currents with
// density degree <= density_degree. Degree-1 Hochschild coboundaries vanish
// on a commutative algebra, so this is the rank modulo coboundaries.
int cyclic_current_rank(int density_degree, int headroom);
// Rank of current_to_cocycle on densities of degree <= density_degree.
int current_map_rank(int density_degree, int headroom);

// phi(u^{-1}, u) for unitary u (|u| = 1 on the circle, checked on
// coefficients to 1e-10). Throws ValidationError otherwise.
double k_pairing(const TrigPoly& u, const CyclicCochain& phi);

struct TfccSum {
  CyclicCochain cochain{0};
  int coefficient = 0;  // multiple of the fundamental class generator
};
// g copies of the fundamental cocycle. Throws ParameterError for g <= 0.
TfccSum tfcc_sum(int g, int headroom);

}  // namespace threefold
