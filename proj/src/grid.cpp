#include "pzbeam/grid.hpp"

namespace pzbeam {

std::vector<double> Grid::nodes() const {
  std::vector<double> x(N + 1);
  for (int i = 0; i <= N; ++i) x[i] = L * double(i) / double(N);
  return x;
}

Grid build_grid(double L, int N) {
  if (!(L > 0.0)) throw ValidationError("grid: length must be positive");
  if (N < 4) throw ValidationError("grid: N must be at least 4, got " + std::to_string(N));
  return Grid{L, N};
}

}  // namespace pzbeam
