#pragma once

#include <span>
#include <vector>

namespace threefold {

struct DegreeSpectrum {
  std::vector<double> eigenvalues;  // ascending
  int zero_count = 0;               // dimension of the kernel (a Betti number)
  double log_det = 0.0;             // sum of logs of the nonzero eigenvalues
};

// One entry per form degree.
struct SpectrumSummary {
  std::vector<DegreeSpectrum> degrees;
};

// Sorts, counts eigenvalues <= zero_tol * max(1, spectral radius) as zero and
// sums the logs of the rest. Slightly negative rounding noise is clamped to 0.
DegreeSpectrum summarize_spectrum(std::vector<double> eigenvalues, double zero_tol = 1e-10);

// log det' = -zeta'(0) for a finite spectrum: the sum of log(lambda) over
// eigenvalues above `threshold`. Empty or all-zero spectra give 0.
double zeta_log_det(std::span<const double> eigenvalues, double threshold = 1e-10);

// lambda_n = scale * n^exponent for n = 1, 2, ..., each with `multiplicity`.
// Its zeta function is multiplicity * scale^-s * zeta_R(exponent * s).
struct PowerLawSpectrum {
  double scale = 1.0;
  double exponent = 2.0;
  int multiplicity = 2;
};

// Analytic-continuation route: -zeta'(0) for a power-law spectrum, with
// zeta_R and zeta_R' evaluated by Euler-Maclaurin summation.
double zeta_log_det_analytic(const PowerLawSpectrum& s);

// Riemann zeta and its derivative at real s != 1 (Euler-Maclaurin).
struct ZetaValue {
  double value = 0.0;
  double derivative = 0.0;
};
ZetaValue riemann_zeta(double s);

}  // namespace threefold
