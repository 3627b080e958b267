#include "pzbeam/spectral.hpp"

#include <lapacke.h>

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "pzbeam/simulate.hpp"

namespace pzbeam {

int Spectrum::dominant_index() const {
  int best = -1;
  for (size_t i = 0; i < eigenvalues.size(); ++i) {
    if (eigenvalues[i].imag() < 0) continue;
    if (best < 0 || eigenvalues[i].real() > eigenvalues[best].real()) best = int(i);
  }
  return best >= 0 ? best : 0;
}

Spectrum spectrum(const DiscreteSystem& sys, bool with_vectors) {
  const int dim = sys.state_dim();
  if (dim > 2000) {
    throw ValidationError("spectrum: state dimension " + std::to_string(dim) +
                          " exceeds the dense-solve budget (2000)");
  }
  Eigen::MatrixXd A = sys.generator();  // column-major

  std::vector<double> wr(dim), wi(dim), vr(with_vectors ? size_t(dim) * dim : 1);
  const lapack_int info =
      LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', with_vectors ? 'V' : 'N', dim, A.data(), dim,
                    wr.data(), wi.data(), nullptr, 1, vr.data(), with_vectors ? dim : 1);
  if (info != 0) {
    throw NumericalError("spectrum: dgeev failed to converge (info = " + std::to_string(info) +
                         ")");
  }

  std::vector<int> order(dim);
  for (int i = 0; i < dim; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (wr[a] != wr[b]) return wr[a] > wr[b];
    return wi[a] > wi[b];
  });

  Spectrum sp;
  sp.eigenvalues.resize(dim);
  if (with_vectors) sp.vectors.resize(dim, dim);
  for (int k = 0; k < dim; ++k) {
    const int j = order[k];
    sp.eigenvalues[k] = {wr[j], wi[j]};
    if (with_vectors) {
      Eigen::VectorXcd v(dim);
      if (wi[j] == 0.0) {
        for (int r = 0; r < dim; ++r) v[r] = vr[size_t(j) * dim + r];
      } else {
        // LAPACK stores conjugate pairs in adjacent columns (re, im)
        const int jre = wi[j] > 0.0 ? j : j - 1;
        const double sign = wi[j] > 0.0 ? 1.0 : -1.0;
        for (int r = 0; r < dim; ++r) {
          v[r] = std::complex<double>(vr[size_t(jre) * dim + r],
                                      sign * vr[size_t(jre + 1) * dim + r]);
        }
      }
      sp.vectors.col(k) = v;
    }
  }

  sp.abscissa = -std::numeric_limits<double>::infinity();
  sp.max_abs = 0;
  sp.min_abs = std::numeric_limits<double>::infinity();
  for (const auto& lam : sp.eigenvalues) {
    sp.abscissa = std::max(sp.abscissa, lam.real());
    sp.max_abs = std::max(sp.max_abs, std::abs(lam));
    sp.min_abs = std::min(sp.min_abs, std::abs(lam));
    if (std::abs(lam.real()) < 1e-8 * std::max(1.0, std::abs(lam.imag()))) {
      sp.axis_eigenvalues.push_back(lam);
    }
  }
  sp.zero_eigenvalue = sp.min_abs < 1e-9 * sp.max_abs;
  return sp;
}

double eigenpair_residual(const DiscreteSystem& sys, std::complex<double> lambda,
                          const Eigen::VectorXcd& x) {
  const int n = sys.n;
  const Eigen::VectorXcd xp = x.head(n), xv = x.tail(n);
  Eigen::VectorXcd Sx(2 * n), Ex(2 * n);
  Sx.head(n) = xv;
  Sx.tail(n) = -(sys.K * xp) - (sys.velocity_form() * xv);
  Ex.head(n) = xp;
  Ex.tail(n) = sys.M * xv;
  const double num = (Sx - lambda * Ex).norm();
  const double den = Ex.norm() * std::abs(lambda) + Sx.norm();
  return den > 0 ? num / den : num;
}

namespace {

struct QuarticCoefs {
  double a = 0;   // mu h3 tau^2 / (beta B4)
  double b = 0;   // gamma h2 h3 varsigma B2 / B4
  double c = 0;   // C varsigma
  double B2 = 0;
};

QuarticCoefs quartic_coefs(const CompositeSpec& spec, double tau) {
  const DerivedCoefficients co = derive_all(spec);
  QuarticCoefs q;
  q.a = spec.mu * spec.h3 * tau * tau / (spec.beta * co.B4);
  q.b = spec.gamma * spec.h2 * spec.h3 * co.varsigma * co.B2 / co.B4;
  q.c = co.C * co.varsigma;
  q.B2 = co.B2;
  return q;
}

}  // namespace

CharacteristicRoots characteristic_roots_mm(const CompositeSpec& spec, double tau) {
  const QuarticCoefs q = quartic_coefs(spec, tau);
  const double P = q.a - q.b * q.B2 - q.c;
  const double Q = -q.a * q.c;
  const std::complex<double> disc = std::sqrt(std::complex<double>(P * P - 4.0 * Q, 0.0));
  CharacteristicRoots r;
  r.s_plus = (-P + disc) / 2.0;
  r.s_minus = (-P - disc) / 2.0;
  if (r.s_plus.real() < r.s_minus.real()) std::swap(r.s_plus, r.s_minus);
  const std::complex<double> l1 = std::sqrt(r.s_plus);
  const std::complex<double> l2 = std::sqrt(r.s_minus);
  r.lambda = {l1, -l1, l2, -l2};
  auto classify = [&](std::complex<double> s) {
    const double tol = 1e-12 * (std::abs(s) + 1.0);
    if (s.real() > tol && std::abs(s.imag()) <= tol) r.real_pairs++;
    else if (s.real() < -tol && std::abs(s.imag()) <= tol) r.imag_pairs++;
  };
  classify(r.s_plus);
  classify(r.s_minus);
  return r;
}

double certificate_p(const ResonanceCertificate& c, double x) {
  return std::sin(c.a2 * x) - std::sin(c.a1 * x);
}

double certificate_phi(const ResonanceCertificate& c, double x) {
  return c.b2 * std::sin(c.a2 * x) - c.b1 * std::sin(c.a1 * x);
}

double certificate_residual(const CompositeSpec& spec, const ResonanceCertificate& cert,
                            int n_samples) {
  const DerivedCoefficients co = derive_all(spec);
  const double vs = co.varsigma;
  const double scale = co.C * vs + spec.beta * co.B4 + spec.gamma * spec.beta * spec.h2 *
                                                           spec.h3 * vs * co.B2 +
                       spec.mu * spec.h3 * cert.tau * cert.tau;
  double worst = 0;
  for (int i = 0; i <= n_samples; ++i) {
    const double x = spec.L * double(i) / double(n_samples);
    const double s1 = std::sin(cert.a1 * x), s2 = std::sin(cert.a2 * x);
    const double p = s2 - s1;
    const double pxx = -cert.a2 * cert.a2 * s2 + cert.a1 * cert.a1 * s1;
    const double phi = cert.b2 * s2 - cert.b1 * s1;
    const double phixx = -cert.b2 * cert.a2 * cert.a2 * s2 + cert.b1 * cert.a1 * cert.a1 * s1;
    // shear equation: C vs phi - phi_xx + B2 p_xx = 0
    const double r1 = co.C * vs * phi - phixx + co.B2 * pxx;
    // charge equation: -beta B4 p_xx + gamma beta h2 h3 vs B2 phi = mu h3 tau^2 p
    const double r2 = -spec.beta * co.B4 * pxx +
                      spec.gamma * spec.beta * spec.h2 * spec.h3 * vs * co.B2 * phi -
                      spec.mu * spec.h3 * cert.tau * cert.tau * p;
    worst = std::max(worst, std::max(std::abs(r1), std::abs(r2)) / scale);
  }
  return worst;
}

ResonanceOutcome resonance_search(const CompositeSpec& spec, int n, int m,
                                  const std::string& knob, double lo, double hi) {
  if (n <= 0 || m <= 0 || n == m) {
    throw ValidationError("resonance_search: n, m must be distinct positive integers");
  }
  if (knob != "mu" && knob != "G2" && knob != "beta") {
    throw ValidationError("resonance_search: knob must be one of mu | G2 | beta");
  }
  if (!(lo > 0.0) || !(hi > lo)) {
    throw ValidationError("resonance_search: knob interval must satisfy 0 < lo < hi");
  }

  const double a1 = (2.0 * n - 1.0) * M_PI / (2.0 * spec.L);
  const double a2 = (2.0 * m - 1.0) * M_PI / (2.0 * spec.L);

  auto with_knob = [&](double v) {
    CompositeSpec s2 = spec;
    if (knob == "mu") s2.mu = v;
    else if (knob == "G2") s2.G2 = v;
    else s2.beta = v;
    return s2;
  };

  // Requiring -a1^2 to be a quartic root fixes a = a1^2 (a1^2 + b B2 + c)/(a1^2 + c);
  // the mismatch is the quartic residual at -a2^2, normalized.
  auto mismatch = [&](double v) {
    const QuarticCoefs q = quartic_coefs(with_knob(v), 1.0);
    if (q.b == 0.0) return std::numeric_limits<double>::quiet_NaN();
    const double a_req = a1 * a1 * (a1 * a1 + q.b * q.B2 + q.c) / (a1 * a1 + q.c);
    const double P = a_req - q.b * q.B2 - q.c;
    const double g = a2 * a2 * a2 * a2 - P * a2 * a2 - a_req * q.c;
    return g / (a2 * a2 * a2 * a2 + a_req * q.c);
  };

  ResonanceOutcome out;
  out.knob_lo = lo;
  out.knob_hi = hi;
  out.mismatch_lo = mismatch(lo);
  out.mismatch_hi = mismatch(hi);
  if (std::isnan(out.mismatch_lo)) {
    out.note = "gamma = 0 decouples shear from charge; no resonance structure";
    return out;
  }

  const int samples = 256;
  double prev_v = lo, prev_g = out.mismatch_lo;
  double root = std::numeric_limits<double>::quiet_NaN();
  for (int i = 1; i <= samples; ++i) {
    const double v = lo * std::pow(hi / lo, double(i) / samples);
    const double g = mismatch(v);
    if (prev_g == 0.0 || (prev_g < 0.0) != (g < 0.0)) {
      double va = prev_v, vb = v, ga = prev_g;
      for (int it = 0; it < 200; ++it) {
        const double vm = 0.5 * (va + vb);
        const double gm = mismatch(vm);
        if ((gm < 0.0) == (ga < 0.0)) {
          va = vm;
          ga = gm;
        } else {
          vb = vm;
        }
      }
      root = 0.5 * (va + vb);
      break;
    }
    prev_v = v;
    prev_g = g;
  }

  if (std::isnan(root)) {
    out.note = "no sign change of the simultaneous-root mismatch over the scanned interval";
    return out;
  }

  const CompositeSpec tuned = with_knob(root);
  const QuarticCoefs q = quartic_coefs(tuned, 1.0);
  const double a_req = a1 * a1 * (a1 * a1 + q.b * q.B2 + q.c) / (a1 * a1 + q.c);
  ResonanceCertificate cert;
  cert.n = n;
  cert.m = m;
  cert.a1 = a1;
  cert.a2 = a2;
  cert.tau = std::sqrt(a_req * tuned.beta * derive_all(tuned).B4 / (tuned.mu * tuned.h3));
  cert.b1 = (a_req - a1 * a1) / q.b;
  cert.b2 = (a_req - a2 * a2) / q.b;
  cert.knob = knob;
  cert.knob_value = root;
  cert.p_at_end = certificate_p(cert, spec.L);
  cert.parity_admissible = std::abs(cert.p_at_end) < 1e-9;
  cert.residual_max = certificate_residual(tuned, cert, 10 * 64);
  out.feasible = true;
  out.certificate = cert;
  return out;
}

UndampedModeReport verify_undamped_mode(const DiscreteSystem& sys,
                                        const ResonanceCertificate& cert) {
  UndampedModeReport rep;
  const Spectrum sp = spectrum(sys);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& lam : sp.eigenvalues) {
    const double d = std::abs(lam - std::complex<double>(0.0, cert.tau));
    if (d < best) {
      best = d;
      rep.nearest_eigenvalue = lam;
    }
  }
  const bool re_ok = std::abs(rep.nearest_eigenvalue.real()) < 1e-8 * cert.tau;
  const bool im_ok = std::abs(rep.nearest_eigenvalue.imag() - cert.tau) < 0.02 * cert.tau;
  rep.spectrum_match = re_ok && im_ok;

  // interpolate the mode onto the p block and run 10 periods
  const Block* pb = sys.block("p");
  if (pb == nullptr || pb->size != sys.n) {
    rep.note = "system is not a pure charge subsystem";
    return rep;
  }
  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(sys.state_dim());
  for (int i = 1; i <= sys.grid.N; ++i) {
    x0[pb->offset + i - 1] = certificate_p(cert, sys.grid.he() * i);
  }
  const double period = 2.0 * M_PI / cert.tau;
  const double T = 10.0 * period;
  const double dt = period / 400.0;
  const auto res = integrate(sys, x0, T, dt, 50);
  const double e0 = res.trace.e_total.front();
  const double eT = res.trace.e_total.back();
  rep.energy_ratio = e0 > 0 ? eT / e0 : 0.0;
  rep.passed = rep.spectrum_match && rep.energy_ratio > 0.999;
  if (!rep.passed) {
    rep.note = "mode decays or spectrum has no imaginary-axis eigenvalue near tau";
  }
  return rep;
}

Spectrum inertial_sliding_abscissa(const CompositeSpec& spec, const Grid& grid, double k1,
                                   double k2) {
  const DiscreteSystem rn = assemble(ModelKind::RnDynamic, spec, grid);
  const DiscreteSystem sub = inertial_sliding_subsystem(rn);
  FeedbackLaw law;
  law.kind = ModelKind::RnDynamic;
  law.gains = {{"g1", k1}, {"V", k2}};
  return spectrum(close_loop(sub, law));
}

std::vector<ScanPoint> overdetermined_scan(const CompositeSpec& spec, const Grid& grid,
                                           const std::vector<double>& mu_grid) {
  std::vector<ScanPoint> out;
  if (mu_grid.empty()) return out;
  const DiscreteSystem sys = assemble(ModelKind::RnStatic, spec, grid);
  const int n = sys.n;
  Eigen::MatrixXd stacked(n + 3, n);
  for (const double mu : mu_grid) {
    stacked.topRows(n) = sys.K - mu * mu * sys.M;
    stacked.row(n) = sys.channel("g1")->obs.transpose();
    stacked.row(n + 1) = sys.channel("V")->obs.transpose();
    stacked.row(n + 2) = sys.channel("M")->obs.transpose();
    for (int r = 0; r < n + 3; ++r) {
      const double nr = stacked.row(r).norm();
      if (nr > 0) stacked.row(r) /= nr;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked);
    const auto& sv = svd.singularValues();
    out.push_back({mu, sv[sv.size() - 1] / sv[0]});
  }
  return out;
}

}  // namespace pzbeam
