#pragma once

#include <optional>

#include "pzbeam/control.hpp"

namespace pzbeam {

struct SweepSpec {
  std::string knob;  // mu | G2 | beta | gamma | gain
  double lo = 0, hi = 0;
  int count = 0;
};

struct RunConfig {
  CompositeSpec spec;
  ModelKind model = ModelKind::RnStatic;
  int N = 64;
  double T = 10.0;
  double dt = 0.0;  // 0: use default_dt(spec)
  int stride = 1;
  std::vector<double> gains;  // empty: unit gains on the standard law
  std::string out_dir = "out";
  bool plot = false;
  double shear_damping = 0.0;
  std::optional<SweepSpec> sweep;
  int resonance_n = 1;
  int resonance_m = 3;
  std::string resonance_knob = "mu";
  double resonance_lo = 0, resonance_hi = 0;  // 0: auto interval around spec value
  FeedbackLaw::MmStaticVariant mm_variant = FeedbackLaw::MmStaticVariant::PxiTrace;
};

// Line-based `key = value` file, `#` comments. Duplicate, unknown, or missing
// required keys raise ValidationError naming the key and line.
RunConfig parse_config(const std::string& path);

// Shared by the CLI: parse one double strictly (full consumption).
double parse_double_strict(const std::string& text, const std::string& what);

SweepSpec parse_sweep(const std::string& text);  // knob:lo:hi:count
std::vector<double> parse_gains(const std::string& text);  // comma-separated

}  // namespace pzbeam
