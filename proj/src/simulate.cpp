#include "pzbeam/simulate.hpp"

#include <Eigen/LU>
#include <cmath>

namespace pzbeam {

IntegrationResult integrate(const DiscreteSystem& sys, const Eigen::VectorXd& x0, double T,
                            double dt, int stride) {
  if (!(dt > 0.0)) throw ValidationError("integrate: dt must be positive");
  if (!(T >= dt)) throw ValidationError("integrate: T must be at least dt");
  if (x0.size() != sys.state_dim()) throw ValidationError("integrate: state dimension mismatch");
  if (stride < 1) throw ValidationError("integrate: stride must be >= 1");

  const int n = sys.n;
  const long steps = std::lround(T / dt);
  const Eigen::MatrixXd Rv = sys.velocity_form();

  // midpoint step in Schur form: positions eliminated against velocities
  Eigen::MatrixXd lhs = sys.M + (dt * dt / 4.0) * sys.K + (dt / 2.0) * Rv;
  Eigen::MatrixXd rhs = sys.M - (dt * dt / 4.0) * sys.K - (dt / 2.0) * Rv;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(lhs);

  Eigen::VectorXd x = x0.head(n);
  Eigen::VectorXd v = x0.tail(n);

  EnergyTrace trace;
  for (const auto& ch : sys.channels) trace.obs_names.push_back(ch.name);
  auto record = [&](double t) {
    trace.t.push_back(t);
    const double ek = 0.5 * v.dot(sys.M * v);
    const double ep = 0.5 * x.dot(sys.K * x);
    trace.e_kin.push_back(ek);
    trace.e_pot.push_back(ep);
    trace.e_total.push_back(ek + ep);
    std::vector<double> readings(sys.channels.size());
    for (size_t i = 0; i < sys.channels.size(); ++i) readings[i] = sys.channels[i].obs.dot(v);
    trace.obs.push_back(std::move(readings));
  };

  record(0.0);
  Eigen::VectorXd vnew(n), vmid(n);
  for (long k = 1; k <= steps; ++k) {
    vnew = lu.solve(rhs * v - dt * (sys.K * x));
    if (!vnew.allFinite()) {
      throw NumericalError("integrate: linear solve produced non-finite values at step " +
                           std::to_string(k));
    }
    vmid = 0.5 * (v + vnew);
    x += dt * vmid;
    v = vnew;
    if (k % stride == 0 || k == steps) record(double(k) * dt);
  }

  IntegrationResult res;
  res.trace = std::move(trace);
  res.final_state.resize(2 * n);
  res.final_state << x, v;
  return res;
}

DecayFit fit_decay(const EnergyTrace& trace, double t_start, double t_end) {
  if (!(t_end > t_start)) throw ValidationError("fit_decay: empty window");
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  long cnt = 0;
  for (size_t i = 0; i < trace.size(); ++i) {
    const double t = trace.t[i];
    if (t < t_start || t > t_end) continue;
    const double e = trace.e_total[i];
    if (!(e > 0.0)) {
      throw ValidationError("fit_decay: nonpositive energy inside the window");
    }
    const double y = std::log(e);
    sx += t; sy += y; sxx += t * t; sxy += t * y; syy += y * y;
    ++cnt;
  }
  if (cnt < 3) throw ValidationError("fit_decay: window contains fewer than 3 samples");
  const double den = cnt * sxx - sx * sx;
  const double slope = (cnt * sxy - sx * sy) / den;
  DecayFit fit;
  fit.rate = -slope;
  const double ss_tot = syy - sy * sy / cnt;
  const double intercept = (sy - slope * sx) / cnt;
  double ss_res = 0;
  for (size_t i = 0; i < trace.size(); ++i) {
    const double t = trace.t[i];
    if (t < t_start || t > t_end) continue;
    const double r = std::log(trace.e_total[i]) - (intercept + slope * t);
    ss_res += r * r;
  }
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

double default_dt(const CompositeSpec& spec) {
  spec.validate();
  double c_max = 0.0;
  c_max = std::max(c_max, std::sqrt(spec.alpha1 / spec.rho1));
  c_max = std::max(c_max, std::sqrt(spec.alpha2 / spec.rho2));
  c_max = std::max(c_max, std::sqrt(spec.alpha3_1 / spec.rho3));
  return 1e-3 * spec.L / c_max;
}

}  // namespace pzbeam
