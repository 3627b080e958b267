#include "pzbeam/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

namespace pzbeam {

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open output file: " + path);
  out << content;
}

std::string coefficients_csv(const CompositeSpec& spec, const DerivedCoefficients& c) {
  std::string s = "name,value\n";
  auto row = [&](const char* name, double v) {
    s += name;
    s += ',';
    s += format_double(v);
    s += '\n';
  };
  row("H", c.H);
  row("m", c.m);
  row("K1", c.K1);
  row("K2", c.K2);
  row("alpha3", c.alpha3);
  row("varsigma", c.varsigma);
  row("A", c.A);
  row("B1", c.B1);
  row("B2", c.B2);
  row("B3", c.B3);
  row("B4", c.B4);
  row("C", c.C);
  row("xi", c.xi);
  row("tilde_A", c.tilde_A);
  row("tilde_B", c.tilde_B);
  row("tilde_C", c.tilde_C);
  const DefinitenessReport rep = check_definiteness(spec);
  row("rn_matrix_pd", rep.rn_matrix_pd ? 1.0 : 0.0);
  row("rn_condition", rep.rn_condition);
  row("mm_det", rep.mm_det);
  return s;
}

std::string system_meta_csv(const DiscreteSystem& sys) {
  std::string s = "name,value\n";
  auto row = [&](const std::string& name, double v) {
    s += name + "," + format_double(v) + "\n";
  };
  for (const auto& b : sys.blocks) row("dof." + b.name, double(b.size));
  row("dof.total", double(sys.n));
  row("norm.M", sys.M.norm());
  row("norm.K", sys.K.norm());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> em(sys.M), ek(sys.K);
  row("gram.M.min", em.eigenvalues().minCoeff());
  row("gram.M.max", em.eigenvalues().maxCoeff());
  row("gram.K.min", ek.eigenvalues().minCoeff());
  row("gram.K.max", ek.eigenvalues().maxCoeff());
  row("channels", double(sys.channels.size()));
  return s;
}

std::string trace_csv(const EnergyTrace& trace) {
  std::string s = "t,E_total,E_kin,E_pot";
  for (const auto& nm : trace.obs_names) s += ",obs_" + nm;
  s += '\n';
  for (size_t i = 0; i < trace.size(); ++i) {
    s += format_double(trace.t[i]);
    s += ',' + format_double(trace.e_total[i]);
    s += ',' + format_double(trace.e_kin[i]);
    s += ',' + format_double(trace.e_pot[i]);
    for (double o : trace.obs[i]) s += ',' + format_double(o);
    s += '\n';
  }
  return s;
}

std::string spectrum_csv(const Spectrum& sp) {
  std::string s = "re,im\n";
  for (const auto& lam : sp.eigenvalues) {
    s += format_double(lam.real()) + ',' + format_double(lam.imag()) + '\n';
  }
  return s;
}

std::string scan_csv(const std::vector<ScanPoint>& points) {
  std::string s = "mu,sigma_min\n";
  for (const auto& p : points) s += format_double(p.mu) + ',' + format_double(p.sigma_min) + '\n';
  return s;
}

std::string resonance_csv(const ResonanceOutcome& o) {
  std::string s = "name,value\n";
  auto row = [&](const char* name, const std::string& v) { s += std::string(name) + "," + v + "\n"; };
  row("feasible", o.feasible ? "1" : "0");
  row("knob_lo", format_double(o.knob_lo));
  row("knob_hi", format_double(o.knob_hi));
  row("mismatch_lo", format_double(o.mismatch_lo));
  row("mismatch_hi", format_double(o.mismatch_hi));
  if (o.certificate) {
    const auto& c = *o.certificate;
    row("n", std::to_string(c.n));
    row("m", std::to_string(c.m));
    row("a1", format_double(c.a1));
    row("a2", format_double(c.a2));
    row("tau", format_double(c.tau));
    row("b1", format_double(c.b1));
    row("b2", format_double(c.b2));
    row("knob", c.knob);
    row("knob_value", format_double(c.knob_value));
    row("p_at_end", format_double(c.p_at_end));
    row("parity_admissible", c.parity_admissible ? "1" : "0");
    row("residual_max", format_double(c.residual_max));
  }
  if (!o.note.empty()) row("note", o.note);
  return s;
}

std::string trace_svg(const EnergyTrace& trace) {
  const int W = 720, Hh = 420, ml = 70, mr = 20, mt = 20, mb = 45;
  double tmin = trace.t.front(), tmax = trace.t.back();
  double emin = 1e300, emax = -1e300;
  for (double e : trace.e_total) {
    if (e > 0) {
      emin = std::min(emin, e);
      emax = std::max(emax, e);
    }
  }
  if (!(emax > 0)) {
    emin = 1e-16;
    emax = 1.0;
  }
  const double le0 = std::log10(emin), le1 = std::log10(std::max(emax, emin * 1.0000001));
  auto xmap = [&](double t) {
    return ml + (W - ml - mr) * (t - tmin) / std::max(tmax - tmin, 1e-300);
  };
  auto ymap = [&](double e) {
    const double l = std::log10(std::max(e, emin * 1e-3));
    return Hh - mb - (Hh - mt - mb) * (l - le0) / std::max(le1 - le0, 1e-12);
  };
  std::string s =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(W) + "\" height=\"" +
      std::to_string(Hh) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<line x1=\"" + std::to_string(ml) + "\" y1=\"" + std::to_string(mt) + "\" x2=\"" +
       std::to_string(ml) + "\" y2=\"" + std::to_string(Hh - mb) + "\" stroke=\"black\"/>\n";
  s += "<line x1=\"" + std::to_string(ml) + "\" y1=\"" + std::to_string(Hh - mb) + "\" x2=\"" +
       std::to_string(W - mr) + "\" y2=\"" + std::to_string(Hh - mb) + "\" stroke=\"black\"/>\n";
  s += "<text x=\"" + std::to_string(W / 2) + "\" y=\"" + std::to_string(Hh - 10) +
       "\" font-size=\"13\" text-anchor=\"middle\">t [s]</text>\n";
  s += "<text x=\"15\" y=\"" + std::to_string(Hh / 2) +
       "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 15 " +
       std::to_string(Hh / 2) + ")\">log10 E</text>\n";
  s += "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
  for (size_t i = 0; i < trace.size(); ++i) {
    s += format_double(xmap(trace.t[i])) + "," + format_double(ymap(trace.e_total[i]));
    if (i + 1 < trace.size()) s += ' ';
  }
  s += "\"/>\n</svg>\n";
  return s;
}

}  // namespace pzbeam
