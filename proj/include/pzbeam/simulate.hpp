#pragma once

#include "pzbeam/models.hpp"

namespace pzbeam {

struct EnergyTrace {
  std::vector<std::string> obs_names;
  std::vector<double> t;
  std::vector<double> e_total, e_kin, e_pot;
  std::vector<std::vector<double>> obs;  // [sample][channel]

  size_t size() const { return t.size(); }
};

struct IntegrationResult {
  EnergyTrace trace;
  Eigen::VectorXd final_state;
};

// Implicit-midpoint integration of the (possibly closed) system. The step
// map is one cached factorization of (M + dt^2/4 K + dt/2 (D+R)); for the
// conservative case the scheme preserves the quadratic energy exactly.
IntegrationResult integrate(const DiscreteSystem& sys, const Eigen::VectorXd& x0, double T,
                            double dt, int stride = 1);

struct DecayFit {
  double rate = 0;       // positive decay constant of E(t) ~ e^{-rate t}
  double r_squared = 0;
};

// Least-squares slope of log E(t) over [t_start, t_end].
DecayFit fit_decay(const EnergyTrace& trace, double t_start, double t_end);

// 1e-3 L / c_max with c_max the fastest layer wave speed.
double default_dt(const CompositeSpec& spec);

}  // namespace pzbeam
