#include "pzbeam/materials.hpp"

#include <cmath>

namespace pzbeam {

namespace {

void require_positive(double v, const char* field) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ValidationError(std::string("composite spec: field '") + field +
                          "' must be strictly positive, got " + std::to_string(v));
  }
}

void require_nonnegative(double v, const char* field) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw ValidationError(std::string("composite spec: field '") + field +
                          "' must be nonnegative, got " + std::to_string(v));
  }
}

}  // namespace

void CompositeSpec::validate() const {
  require_positive(L, "length");
  require_positive(h1, "layers.1.thickness");
  require_positive(h2, "layers.2.thickness");
  require_positive(h3, "layers.3.thickness");
  require_positive(rho1, "layers.1.density");
  require_positive(rho2, "layers.2.density");
  require_positive(rho3, "layers.3.density");
  require_positive(alpha1, "layers.1.stiffness");
  require_positive(alpha2, "layers.2.stiffness");
  require_positive(alpha3_1, "layers.3.stiffness");
  require_positive(G2, "layers.2.shear_modulus");
  require_nonnegative(gamma, "piezo.gamma");
  require_positive(beta, "piezo.beta");
  require_nonnegative(mu, "piezo.mu");
}

DerivedCoefficients derive_rn(const CompositeSpec& s) {
  s.validate();
  DerivedCoefficients c;
  c.H = (s.h1 + 2.0 * s.h2 + s.h3) / 2.0;
  c.m = s.rho1 * s.h1 + s.rho2 * s.h2 + s.rho3 * s.h3;
  c.K1 = (s.rho1 * s.h1 * s.h1 * s.h1 + s.rho3 * s.h3 * s.h3 * s.h3) / 12.0;
  c.alpha3 = s.alpha3_1 + s.gamma * s.gamma * s.beta;
  c.K2 = (s.alpha1 * s.h1 * s.h1 * s.h1 + c.alpha3 * s.h3 * s.h3 * s.h3) / 12.0;
  c.varsigma = s.G2 / s.h2;
  return c;
}

DerivedCoefficients derive_mm(const CompositeSpec& s) {
  s.validate();
  DerivedCoefficients c = derive_rn(s);

  const double a1 = s.alpha1, a2 = s.alpha2, a3 = c.alpha3, a31 = s.alpha3_1;
  const double h1 = s.h1, h2 = s.h2, h3 = s.h3;
  const double H = c.H;

  // Shared denominator. B4 keeps the purely elastic alpha3_1 in its 12-term,
  // matching the printed constant set; with gamma = 0 the two coincide.
  const double D = a2 * h2 * h2 * (4.0 * a1 * h1 + a2 * h2 + 4.0 * a3 * h3) +
                   12.0 * a1 * a3 * h1 * h2 * h3;
  const double D4 = a2 * h2 * h2 * (4.0 * a1 * h1 + a2 * h2 + 4.0 * a3 * h3) +
                    12.0 * a1 * a31 * h1 * h2 * h3;
  if (!(D > 0.0) || !(D4 > 0.0)) {
    throw ValidationError("derive_mm: nonpositive sandwich-constant denominator");
  }

  c.A = (a1 * h1 * h1 * h1 + a3 * h3 * h3 * h3 +
         a2 * h2 * h2 *
             (3.0 * a2 * h2 * (a1 * h1 * h1 * h1 + a3 * h3 * h3 * h3) +
              12.0 * a1 * a3 * h1 * h3 * (h1 * h1 + h3 * h3 - h1 * h3)) /
             D) /
        12.0;
  c.B1 = (a2 * (a2 * h2 * h2 + 3.0 * a1 * h1 * h1 + 4.0 * a1 * h1 * h2 +
                3.0 * a3 * h3 * h3 + 4.0 * a3 * h2 * h3) +
          12.0 * a1 * a3 * H * h1 * h3) /
         D;
  c.B2 = (6.0 * a2 * h2 + 12.0 * a1 * h1) / D;
  c.B3 = (0.5 * a2 * a2 * h2 * h2 * h2 * h3 * h3 +
          2.0 * a1 * a2 * h1 * h2 * h2 * h3 * h3 -
          a1 * a2 * h1 * h1 * h2 * h2 * h3) /
         D;
  c.B4 = (a2 * a2 * h2 * h2 * h2 * h3 + 12.0 * a1 * a31 * h1 * h2 * h3 * h3 +
          4.0 * a1 * a2 * h1 * h2 * h2 * h3 + 4.0 * a2 * a31 * h2 * h2 * h3 * h3) /
         D4;
  c.C = 12.0 * (a1 * h1 + a2 * h2 + a3 * h3) /
        (a2 * h2 * (4.0 * a1 * h1 + a2 * h2 + 4.0 * a3 * h3) + 12.0 * a1 * a3 * h1 * h3);
  c.xi = c.C * c.varsigma;

  const double g = s.gamma, b = s.beta;
  c.tilde_A = c.A - g * g * b * c.B3 * c.B3 / c.B4;
  c.tilde_B = c.B1 - g * c.B2 * c.B3 / c.B4;
  c.tilde_C = c.C + g * h2 * h3 * c.B2 * c.B2 / c.B4;
  return c;
}

DerivedCoefficients derive_all(const CompositeSpec& s) { return derive_mm(s); }

DefinitenessReport check_definiteness(const CompositeSpec& s) {
  DefinitenessReport r;
  const DerivedCoefficients c = derive_all(s);

  // 2x2 symmetric [[alpha3, -gb], [-gb, beta]]: eigenvalues by closed form.
  const double gb = s.gamma * s.beta;
  const double tr = c.alpha3 + s.beta;
  const double det = c.alpha3 * s.beta - gb * gb;
  const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
  const double lam_min = tr / 2.0 - disc;
  const double lam_max = tr / 2.0 + disc;
  r.rn_matrix_pd = lam_min > 0.0;
  r.rn_condition = (lam_min > 0.0) ? lam_max / lam_min
                                   : std::numeric_limits<double>::infinity();

  r.mm_det = c.A * c.B4 - s.gamma * s.gamma * s.beta * c.B3 * c.B3;
  r.mm_det_positive = r.mm_det > 0.0;
  return r;
}

}  // namespace pzbeam
