#pragma once

#include <Eigen/Dense>

#include "pzbeam/fem.hpp"

namespace pzbeam {

// Galerkin realization of P_xi = (xi I - Dx^2)^{-1} on the clamped P1 space
// (phi(0) = 0 essential, phi_x(L) = 0 natural), together with its companion
// J = xi P_xi - I.
class EllipticSolver {
 public:
  EllipticSolver(const Grid& grid, double xi);

  double xi() const { return xi_; }
  int dim() const { return grid_.N; }
  const Grid& grid() const { return grid_; }
  const Eigen::MatrixXd& stiffness() const { return Kp_; }
  const Eigen::MatrixXd& mass() const { return Mp_; }

  // phi solving (xi I - Dx^2) phi = g weakly, g given by nodal values
  Eigen::VectorXd apply_pxi(const Eigen::VectorXd& g_nodal) const;
  // same solve from a pre-assembled load vector
  Eigen::VectorXd solve_load(const Eigen::VectorXd& load) const;
  Eigen::MatrixXd solve_load(const Eigen::MatrixXd& loads) const;

  // J w = xi P_xi w - w on nodal data
  Eigen::VectorXd apply_j(const Eigen::VectorXd& w_nodal) const;
  // alternative route J w = P_xi Dx^2 w with Dx^2 taken weakly
  // (includes the one-sided w_x(L) boundary trace)
  Eigen::VectorXd apply_j_d2(const Eigen::VectorXd& w_nodal) const;

  // point evaluation at x = L in the P1 space
  Eigen::VectorXd point_eval_end() const;

 private:
  Grid grid_;
  double xi_;
  Field field_;
  Eigen::MatrixXd Kp_, Mp_;      // clamped P1 stiffness and mass
  Eigen::LLT<Eigen::MatrixXd> fact_;  // of Kp + xi Mp
};

}  // namespace pzbeam
