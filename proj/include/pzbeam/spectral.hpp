#pragma once

#include <array>
#include <complex>
#include <optional>

#include "pzbeam/control.hpp"
#include "pzbeam/models.hpp"

namespace pzbeam {

struct Spectrum {
  std::vector<std::complex<double>> eigenvalues;  // sorted by Re desc, Im desc
  Eigen::MatrixXcd vectors;                       // state-space eigenvectors (optional)
  double abscissa = 0;                            // max Re
  double max_abs = 0;
  double min_abs = 0;
  bool zero_eigenvalue = false;                   // |lambda| < 1e-9 * max_abs
  std::vector<std::complex<double>> axis_eigenvalues;  // |Re| < 1e-8 max(1,|Im|)

  // index of the eigenvalue with largest real part among Im >= 0
  int dominant_index() const;
};

// Dense spectrum of the first-order generator (balanced LAPACK solve).
// Requires state dimension <= 2000.
Spectrum spectrum(const DiscreteSystem& sys, bool with_vectors = false);

// residual ||A x - lambda x|| / (||x|| (|lambda| + ||A||_est)) for one pair
double eigenpair_residual(const DiscreteSystem& sys, std::complex<double> lambda,
                          const Eigen::VectorXcd& x);

// Roots of the bending-free charge quartic
//   z^4 + (mu h3 tau^2/(beta B4) - B2^2 gamma varsigma h2 h3/B4 - C varsigma) z^2
//       - C varsigma mu h3 tau^2 / (beta B4) = 0
// solved as a quadratic in z^2.
struct CharacteristicRoots {
  std::array<std::complex<double>, 4> lambda;
  std::complex<double> s_plus, s_minus;  // z^2 roots, by real part
  int real_pairs = 0;
  int imag_pairs = 0;
};
CharacteristicRoots characteristic_roots_mm(const CompositeSpec& spec, double tau);

// Tuned parameter set plus the explicit two-sine mode of the undamped
// resonance construction.
struct ResonanceCertificate {
  int n = 0, m = 0;
  double a1 = 0, a2 = 0;   // wavenumbers (2n-1)pi/2L, (2m-1)pi/2L
  double tau = 0;          // mode frequency
  double b1 = 0, b2 = 0;   // shear amplitudes
  std::string knob;
  double knob_value = 0;
  double p_at_end = 0;         // p_nm(L); must vanish for the feedback to idle
  bool parity_admissible = false;
  double residual_max = 0;     // continuum ODE residual, max norm
};

double certificate_p(const ResonanceCertificate& cert, double x);
double certificate_phi(const ResonanceCertificate& cert, double x);

// max-norm residual of the two bending-free eigenproblem ODEs on
// n_samples+1 uniform points, relative to the coefficient scale
double certificate_residual(const CompositeSpec& spec, const ResonanceCertificate& cert,
                            int n_samples);

struct ResonanceOutcome {
  bool feasible = false;
  std::optional<ResonanceCertificate> certificate;
  double knob_lo = 0, knob_hi = 0;
  double mismatch_lo = 0, mismatch_hi = 0;  // Vieta mismatch at the interval ends
  std::string note;
};

// 1-D root find on `knob` in [lo, hi] so that both -a1^2 and -a2^2 are roots
// of the characteristic quartic at a common tau. Reports infeasibility with
// the scanned interval when the mismatch never changes sign.
ResonanceOutcome resonance_search(const CompositeSpec& spec, int n, int m,
                                  const std::string& knob, double lo, double hi);

struct UndampedModeReport {
  std::complex<double> nearest_eigenvalue;
  bool spectrum_match = false;
  double energy_ratio = 0;  // E(T)/E(0) over 10 periods
  bool passed = false;
  std::string note;
};

// Checks a certificate against the closed bending-free system: the spectrum
// must contain ~i*tau and the interpolated mode must retain its energy.
// Failures are reported, not thrown.
UndampedModeReport verify_undamped_mode(const DiscreteSystem& closed_bending_free,
                                        const ResonanceCertificate& cert);

// Closed-loop spectrum of the (v1, v3, p) subsystem under the (g1, V) pair.
Spectrum inertial_sliding_abscissa(const CompositeSpec& spec, const Grid& grid, double k1,
                                   double k2);

struct ScanPoint {
  double mu = 0;         // trial frequency
  double sigma_min = 0;  // normalized smallest singular value
};

// For each trial frequency, stacks the rn-static eigenproblem rows with the
// three tip-observation rows and reports sigma_min/sigma_max after row
// equilibration. A profile bounded away from zero means the overdetermined
// problem only has the trivial solution.
std::vector<ScanPoint> overdetermined_scan(const CompositeSpec& spec, const Grid& grid,
                                           const std::vector<double>& mu_grid);

}  // namespace pzbeam
