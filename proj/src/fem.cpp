#include "pzbeam/fem.hpp"

#include <cmath>

namespace pzbeam {

// Gauss-Legendre nodes/weights mapped from [-1,1] to [0,1].
const std::array<double, 5> Quad5::xi = {
    0.5 - 0.45308992296933199640 /* sqrt(5+2 sqrt(10/7))/6 */,
    0.5 - 0.26923465505284154552 /* sqrt(5-2 sqrt(10/7))/6 */,
    0.5,
    0.5 + 0.26923465505284154552,
    0.5 + 0.45308992296933199640,
};
const std::array<double, 5> Quad5::w = {
    0.5 * 0.23692688505618908751,
    0.5 * 0.47862867049936646804,
    0.5 * 0.56888888888888888889,
    0.5 * 0.47862867049936646804,
    0.5 * 0.23692688505618908751,
};

void Row::add(int gdof, double coef) {
  if (gdof < 0 || coef == 0.0) return;
  for (int i = 0; i < n; ++i) {
    if (idx[i] == gdof) {
      c[i] += coef;
      return;
    }
  }
  idx[n] = gdof;
  c[n] = coef;
  ++n;
}

Eigen::VectorXd Row::dense(int dim) const {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
  for (int i = 0; i < n; ++i) v[idx[i]] += c[i];
  return v;
}

int Field::gdof(int element, int local) const {
  if (kind == SpaceKind::P1) {
    const int node = element + local;  // local 0 -> left node, 1 -> right node
    return node == 0 ? -1 : offset + node - 1;
  }
  const int node = element + local / 2;
  if (node == 0) return -1;
  return offset + 2 * (node - 1) + (local % 2);
}

namespace {

// Hermite shapes on [0,1] against dofs (w_left, he*w'_left, w_right, he*w'_right)
inline void hermite_shapes(double t, int deriv, double out[4]) {
  switch (deriv) {
    case 0:
      out[0] = 1 - 3 * t * t + 2 * t * t * t;
      out[1] = t - 2 * t * t + t * t * t;
      out[2] = 3 * t * t - 2 * t * t * t;
      out[3] = -t * t + t * t * t;
      return;
    case 1:
      out[0] = -6 * t + 6 * t * t;
      out[1] = 1 - 4 * t + 3 * t * t;
      out[2] = 6 * t - 6 * t * t;
      out[3] = -2 * t + 3 * t * t;
      return;
    default:
      out[0] = -6 + 12 * t;
      out[1] = -4 + 6 * t;
      out[2] = 6 - 12 * t;
      out[3] = -2 + 6 * t;
      return;
  }
}

}  // namespace

void Field::trace(int element, int q, int deriv, double scale, Row& out) const {
  const double t = Quad5::xi[q];
  if (kind == SpaceKind::P1) {
    double sh[2];
    if (deriv == 0) {
      sh[0] = 1 - t;
      sh[1] = t;
    } else {
      sh[0] = -1.0 / he;
      sh[1] = 1.0 / he;
    }
    for (int l = 0; l < 2; ++l) out.add(gdof(element, l), scale * sh[l]);
    return;
  }
  double sh[4];
  hermite_shapes(t, deriv, sh);
  const double jac = std::pow(he, -double(deriv));
  for (int l = 0; l < 4; ++l) out.add(gdof(element, l), scale * jac * sh[l]);
}

void Field::point_value_end(Eigen::VectorXd& into, double scale) const {
  if (kind == SpaceKind::P1) {
    into[offset + N - 1] += scale;
  } else {
    into[offset + 2 * (N - 1)] += scale;
  }
}

void Field::point_slope_end(Eigen::VectorXd& into, double scale) const {
  if (kind == SpaceKind::P1) {
    // one-sided trace of the last element's constant slope
    into[offset + N - 1] += scale / he;
    if (N >= 2) into[offset + N - 2] += -scale / he;
  } else {
    into[offset + 2 * (N - 1) + 1] += scale / he;
  }
}

void FormAssembler::square(const Row& r, double cw) {
  for (int i = 0; i < r.n; ++i)
    for (int j = 0; j < r.n; ++j) K(r.idx[i], r.idx[j]) += cw * r.c[i] * r.c[j];
}

void FormAssembler::pair(const Row& a, const Row& b, double cw) {
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < b.n; ++j) {
      const double v = cw * a.c[i] * b.c[j];
      K(a.idx[i], b.idx[j]) += v;
      K(b.idx[j], a.idx[i]) += v;
    }
}

void FormAssembler::rect(Eigen::MatrixXd& R, const Row& a, const Row& b, double cw) {
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < b.n; ++j) R(a.idx[i], b.idx[j]) += cw * a.c[i] * b.c[j];
}

}  // namespace pzbeam
