#pragma once

#include <vector>

#include "pzbeam/types.hpp"

namespace pzbeam {

// Uniform 1-D mesh of (0, L) with N elements.
struct Grid {
  double L = 1.0;
  int N = 0;
  double he() const { return L / N; }
  std::vector<double> nodes() const;
};

// N >= 4, L > 0; throws ValidationError otherwise.
Grid build_grid(double L, int N);

}  // namespace pzbeam
