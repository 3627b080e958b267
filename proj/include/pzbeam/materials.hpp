#pragma once

#include "pzbeam/types.hpp"

namespace pzbeam {

// Longitudinal/bending subset: H, m, K1, K2, alpha3, varsigma.
DerivedCoefficients derive_rn(const CompositeSpec& spec);

// Sandwich subset: A, B1..B4, C, xi and the tilde constants.
DerivedCoefficients derive_mm(const CompositeSpec& spec);

// Both subsets in one pass (what model assembly consumes).
DerivedCoefficients derive_all(const CompositeSpec& spec);

struct DefinitenessReport {
  bool rn_matrix_pd = false;   // [[alpha3, -gamma beta], [-gamma beta, beta]] > 0
  double rn_condition = 0;     // 2x2 spectral condition number
  double mm_det = 0;           // A B4 - gamma^2 beta B3^2
  bool mm_det_positive = false;
  bool ok() const { return rn_matrix_pd && mm_det_positive; }
};

// Report-only: never throws for indefinite inputs.
DefinitenessReport check_definiteness(const CompositeSpec& spec);

}  // namespace pzbeam
