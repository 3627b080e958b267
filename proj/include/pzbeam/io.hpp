#pragma once

#include <string>
#include <vector>

#include "pzbeam/materials.hpp"
#include "pzbeam/simulate.hpp"
#include "pzbeam/spectral.hpp"

namespace pzbeam {

// Shortest round-trip decimal representation (byte-deterministic).
std::string format_double(double v);

void write_text_file(const std::string& path, const std::string& content);

// coefficients.csv: name,value
std::string coefficients_csv(const CompositeSpec& spec, const DerivedCoefficients& c);
// system.meta.csv: per-block dof counts, matrix norms, Gram extremal eigenvalues
std::string system_meta_csv(const DiscreteSystem& sys);
// trace.csv: t,E_total,E_kin,E_pot,obs_<channel>...
std::string trace_csv(const EnergyTrace& trace);
// spectrum.csv: re,im
std::string spectrum_csv(const Spectrum& sp);
// scan.csv: mu,sigma_min
std::string scan_csv(const std::vector<ScanPoint>& points);
// resonance.csv: certificate fields or the infeasibility record
std::string resonance_csv(const ResonanceOutcome& outcome);

// log-scale energy plot (plain polyline SVG, no dependencies)
std::string trace_svg(const EnergyTrace& trace);

}  // namespace pzbeam
