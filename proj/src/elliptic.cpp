#include "pzbeam/elliptic.hpp"

namespace pzbeam {

EllipticSolver::EllipticSolver(const Grid& grid, double xi) : grid_(grid), xi_(xi) {
  if (!(xi > 0.0)) {
    throw ValidationError("elliptic solver: shift xi must be positive, got " +
                          std::to_string(xi));
  }
  field_ = Field{"phi", SpaceKind::P1, 0, grid.N, grid.he()};
  const int n = field_.dim();
  Kp_ = Eigen::MatrixXd::Zero(n, n);
  Mp_ = Eigen::MatrixXd::Zero(n, n);
  FormAssembler ak(Kp_), am(Mp_);
  Row val, der;
  for (int e = 0; e < grid.N; ++e) {
    for (int q = 0; q < Quad5::n; ++q) {
      const double cw = Quad5::w[q] * grid.he();
      val.clear();
      der.clear();
      field_.trace(e, q, 0, 1.0, val);
      field_.trace(e, q, 1, 1.0, der);
      am.square(val, cw);
      ak.square(der, cw);
    }
  }
  fact_.compute(Kp_ + xi * Mp_);
  if (fact_.info() != Eigen::Success) {
    throw NumericalError("elliptic solver: factorization of (K + xi M) failed");
  }
}

Eigen::VectorXd EllipticSolver::apply_pxi(const Eigen::VectorXd& g) const {
  return fact_.solve(Mp_ * g);
}

Eigen::VectorXd EllipticSolver::solve_load(const Eigen::VectorXd& load) const {
  return fact_.solve(load);
}

Eigen::MatrixXd EllipticSolver::solve_load(const Eigen::MatrixXd& loads) const {
  return fact_.solve(loads);
}

Eigen::VectorXd EllipticSolver::apply_j(const Eigen::VectorXd& w) const {
  return xi_ * apply_pxi(w) - w;
}

Eigen::VectorXd EllipticSolver::apply_j_d2(const Eigen::VectorXd& w) const {
  // <Dx^2 w, psi> = -<w_x, psi_x> + w_x(L) psi(L)
  Eigen::VectorXd load = -(Kp_ * w);
  const double wL = w[field_.dim() - 1];
  const double wLm = field_.dim() >= 2 ? w[field_.dim() - 2] : 0.0;
  load[field_.dim() - 1] += (wL - wLm) / grid_.he();
  return fact_.solve(load);
}

Eigen::VectorXd EllipticSolver::point_eval_end() const {
  Eigen::VectorXd e = Eigen::VectorXd::Zero(field_.dim());
  field_.point_value_end(e);
  return e;
}

}  // namespace pzbeam
