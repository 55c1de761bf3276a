#include "threefold/spectrum.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "threefold/errors.hpp"

namespace threefold {

DegreeSpectrum summarize_spectrum(std::vector<double> eigenvalues, double zero_tol) {
  std::sort(eigenvalues.begin(), eigenvalues.end());
  DegreeSpectrum out;
  const double radius = eigenvalues.empty() ? 0.0 : std::max(std::abs(eigenvalues.front()), eigenvalues.back());
  const double cutoff = zero_tol * std::max(1.0, radius);
  for (double& e : eigenvalues) {
    if (e <= cutoff) {
      e = std::max(e, 0.0);
      ++out.zero_count;
    } else {
      out.log_det += std::log(e);
    }
  }
  out.eigenvalues = std::move(eigenvalues);
  return out;
}

double zeta_log_det(std::span<const double> eigenvalues, double threshold) {
  double s = 0.0;
  for (const double e : eigenvalues)
    if (e > threshold) s += std::log(e);
  return s;
}

namespace {

// Forward-mode value/derivative pair in s.
struct Dual {
  double v = 0.0, d = 0.0;
};
Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
Dual operator*(double k, Dual a) { return {k * a.v, k * a.d}; }
Dual operator/(Dual a, Dual b) { return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)}; }
// base^(-s) for a constant base > 0.
Dual pow_neg(double base, Dual s) {
  const double lb = std::log(base);
  const double v = std::exp(-s.v * lb);
  return {v, -lb * v * s.d};
}

Dual zeta_dual(Dual s) {
  // Bernoulli numbers B_2, B_4, ..., B_20.
  constexpr std::array<double, 10> bernoulli = {1.0 / 6,          -1.0 / 30,       1.0 / 42,
                                                -1.0 / 30,        5.0 / 66,        -691.0 / 2730,
                                                7.0 / 6,          -3617.0 / 510,   43867.0 / 798,
                                                -174611.0 / 330};
  constexpr int n_terms = 40;
  const double big_n = n_terms;
  Dual sum;
  for (int n = 1; n < n_terms; ++n) sum = sum + pow_neg(n, s);
  const Dual one{1.0, 0.0};
  sum = sum + (big_n * pow_neg(big_n, s)) / (s - one);
  sum = sum + 0.5 * pow_neg(big_n, s);
  // B_2k / (2k)! * s (s+1) ... (s+2k-2) * N^(-s-2k+1)
  Dual rising = s;
  double factorial = 2.0;
  double n_power = 1.0 / big_n;
  for (std::size_t k = 1; k <= bernoulli.size(); ++k) {
    sum = sum + (bernoulli[k - 1] / factorial * n_power) * (rising * pow_neg(big_n, s));
    const double a = 2.0 * static_cast<double>(k) - 1.0;  // next two rising factors
    rising = rising * (s + Dual{a, 0.0}) * (s + Dual{a + 1.0, 0.0});
    factorial *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
    n_power /= big_n * big_n;
  }
  return sum;
}

}  // namespace

ZetaValue riemann_zeta(double s) {
  if (s == 1.0) throw ParameterError("riemann_zeta: pole at s = 1");
  const Dual z = zeta_dual({s, 1.0});
  return {z.v, z.d};
}

double zeta_log_det_analytic(const PowerLawSpectrum& spec) {
  if (spec.scale <= 0.0 || spec.exponent <= 0.0 || spec.multiplicity <= 0)
    throw ParameterError("power-law spectrum needs positive scale, exponent and multiplicity");
  // zeta_L(s) = m * scale^-s * zeta_R(exponent * s), differentiated at s = 0.
  const Dual s{0.0, 1.0};
  const Dual zr = zeta_dual(spec.exponent * s);
  const Dual zl = static_cast<double>(spec.multiplicity) * (pow_neg(spec.scale, s) * zr);
  return -zl.d;
}

}  // namespace threefold
