#pragma once

#include <stdexcept>
#include <string>

namespace pzbeam {

// Process exit codes shared by the CLI and the error taxonomy below.
enum ExitCode : int {
  exit_ok = 0,
  exit_config = 2,     // bad config file / bad parameters / violated preconditions
  exit_assembly = 3,   // assembled operator violates a structural invariant
  exit_numerical = 4,  // factorization or eigensolver breakdown
};

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class AssemblyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raw per-layer material and geometry parameters of the three-layer composite.
// Layer 1 is the stiff face, layer 2 the compliant core, layer 3 the piezoelectric
// face. SI units throughout; gamma and mu may be zero (mu = 0 selects the
// electrostatic model family), everything else must be strictly positive.
struct CompositeSpec {
  double L = 1.0;        // beam length [m]
  double h1 = 0, h2 = 0, h3 = 0;        // layer thicknesses [m]
  double rho1 = 0, rho2 = 0, rho3 = 0;  // layer densities [kg/m^3]
  double alpha1 = 0;     // c11 of layer 1 [Pa]
  double alpha2 = 0;     // c11 of layer 2 [Pa]
  double alpha3_1 = 0;   // c11 of layer 3 (purely elastic part) [Pa]
  double G2 = 0;         // core shear modulus [Pa]
  double gamma = 0;      // piezoelectric coupling gamma_31
  double beta = 0;       // impermittivity 1/eps_33
  double mu = 0;         // magnetic permeability [H/m]

  // Throws ValidationError naming the offending field.
  void validate() const;
};

// Every derived constant the five models use.
struct DerivedCoefficients {
  // thickness/inertia set
  double H = 0;         // (h1 + 2 h2 + h3)/2
  double m = 0;         // rho1 h1 + rho2 h2 + rho3 h3
  double K1 = 0;        // (rho1 h1^3 + rho3 h3^3)/12
  double K2 = 0;        // (alpha1 h1^3 + alpha3 h3^3)/12
  double alpha3 = 0;    // alpha3_1 + gamma^2 beta
  double varsigma = 0;  // G2 / h2
  // sandwich constants
  double A = 0, B1 = 0, B2 = 0, B3 = 0, B4 = 0, C = 0;
  double xi = 0;        // C * varsigma
  // electrostatic sandwich constants
  double tilde_A = 0;   // A - gamma^2 beta B3^2 / B4
  double tilde_B = 0;   // B1 - gamma B2 B3 / B4
  double tilde_C = 0;   // C + gamma h2 h3 B2^2 / B4
};

}  // namespace pzbeam
