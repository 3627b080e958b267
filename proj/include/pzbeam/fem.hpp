#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>

#include "pzbeam/grid.hpp"

namespace pzbeam {

// Conforming scalar spaces on the uniform grid, both clamped at x = 0:
//   P1      - piecewise linear (H1), nodal values at nodes 1..N
//   Hermite - piecewise cubic (H2), dofs (value, he*slope) at nodes 1..N
enum class SpaceKind { P1, Hermite };

// 5-point Gauss-Legendre on [0,1]; exact through polynomial degree 9,
// which covers every product of traces used below.
struct Quad5 {
  static constexpr int n = 5;
  static const std::array<double, 5> xi;
  static const std::array<double, 5> w;
};

// A linear functional of the global position dofs with element-local support.
struct Row {
  static constexpr int cap = 12;
  int n = 0;
  std::array<int, cap> idx{};
  std::array<double, cap> c{};

  void clear() { n = 0; }
  void add(int gdof, double coef);  // silently drops constrained (-1) dofs
  Eigen::VectorXd dense(int dim) const;
};

struct Field {
  std::string name;
  SpaceKind kind = SpaceKind::P1;
  int offset = 0;
  int N = 0;
  double he = 0;

  int dim() const { return kind == SpaceKind::P1 ? N : 2 * N; }
  int ndof_local() const { return kind == SpaceKind::P1 ? 2 : 4; }
  int gdof(int element, int local) const;

  // trace of the field at quadrature point q of `element`; deriv in {0,1,2}
  // (2 only for Hermite). Accumulates scale * trace into `out`.
  void trace(int element, int q, int deriv, double scale, Row& out) const;

  // point functionals at x = L, written into a full-length vector
  void point_value_end(Eigen::VectorXd& into, double scale = 1.0) const;
  void point_slope_end(Eigen::VectorXd& into, double scale = 1.0) const;

  // nodal interpolation of a smooth function (value; slope for Hermite)
  template <class F, class dF>
  void interpolate(const F& f, const dF& fx, Eigen::VectorXd& into) const {
    for (int i = 1; i <= N; ++i) {
      const double x = he * i;
      if (kind == SpaceKind::P1) {
        into[offset + i - 1] = f(x);
      } else {
        into[offset + 2 * (i - 1)] = f(x);
        into[offset + 2 * (i - 1) + 1] = he * fx(x);
      }
    }
  }
};

// Bilinear-form accumulation into a dense matrix. `cw` carries the
// quadrature weight times the element length times the form coefficient.
struct FormAssembler {
  Eigen::MatrixXd& K;
  explicit FormAssembler(Eigen::MatrixXd& K_) : K(K_) {}

  // energy term (1/2) coef q(x)^2        -> K += cw * r^T r
  void square(const Row& r, double cw);
  // energy term coef qa(x) qb(x)         -> K += cw * (a^T b + b^T a)
  void pair(const Row& a, const Row& b, double cw);
  // rectangular R(i,j) += cw * a_i * b_j
  static void rect(Eigen::MatrixXd& R, const Row& a, const Row& b, double cw);
};

}  // namespace pzbeam
