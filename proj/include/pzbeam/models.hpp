#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "pzbeam/fem.hpp"
#include "pzbeam/materials.hpp"

namespace pzbeam {

// The five model variants sharing the first-order descriptor
//   x' = v,  M v' = -K x - (D + R) v + sum_i b_i u_i
// with energy Gram G = blkdiag(K, M).
enum class ModelKind { Full, RnDynamic, RnStatic, MmDynamic, MmStatic };

const char* to_string(ModelKind kind);
ModelKind model_from_string(const std::string& name);

struct Block {
  std::string name;
  int offset = 0;
  int size = 0;
  SpaceKind kind = SpaceKind::P1;
};

// One boundary input/output pair. `obs` is the natural tip reading (a
// functional of the velocity dofs), `load` the weak-form control column.
// For collocated channels load == load_scale * obs, so the feedback
// u = -k (load . v) dissipates exactly k * load_scale^2 |obs . v|^2.
struct Channel {
  std::string name;
  Eigen::VectorXd obs;
  Eigen::VectorXd load;
  double load_scale = 1.0;
  bool collocated = true;
};

struct DiscreteSystem {
  ModelKind kind{};
  Grid grid{};
  CompositeSpec spec{};
  DerivedCoefficients coef{};

  std::vector<Block> blocks;
  int n = 0;  // position dofs; state = [positions; velocities], dim 2n

  Eigen::MatrixXd M;  // mass, SPD
  Eigen::MatrixXd K;  // stiffness = potential block of the energy Gram
  Eigen::MatrixXd D;  // optional shear damping (sym PSD)
  Eigen::MatrixXd R;  // feedback velocity form (zero open loop)
  std::vector<Channel> channels;

  double shear_damping = 0.0;
  bool closed = false;
  // false only for the non-collocated MM-static trace law
  bool dissipative_certified = true;

  int state_dim() const { return 2 * n; }
  const Block* block(const std::string& name) const;
  const Channel* channel(const std::string& name) const;
  Eigen::MatrixXd velocity_form() const { return D + R; }

  // dense generator [[0, I], [-M^{-1}K, -M^{-1}(D+R)]]
  Eigen::MatrixXd generator() const;
};

// Assembles one model at one resolution. Fails with AssemblyError when the
// coefficient matrices are not definite (exit-code-3 pathway).
DiscreteSystem assemble(ModelKind kind, const CompositeSpec& spec, const Grid& grid,
                        double shear_damping = 0.0);

struct EnergyBreakdown {
  double total = 0, kinetic = 0, potential = 0;
};
EnergyBreakdown energy(const DiscreteSystem& sys, const Eigen::VectorXd& state);

// Restriction of RnDynamic to the (v1, v3, p) blocks (w = 0), keeping the
// Gram structure and the (g1, V) channels.
DiscreteSystem inertial_sliding_subsystem(const DiscreteSystem& sys);

// Restriction of MmDynamic to the p block (w = 0), keeping the V channel.
DiscreteSystem bending_free_subsystem(const DiscreteSystem& sys);

// Nodal interpolation of a smooth function into one block of a position- or
// velocity-sized vector (fx supplies the slope dofs of Hermite blocks).
template <class F, class dF>
void interpolate_block(const DiscreteSystem& sys, const std::string& name, const F& f,
                       const dF& fx, Eigen::VectorXd& into) {
  const Block* b = sys.block(name);
  if (b == nullptr) throw ValidationError("interpolate_block: no block '" + name + "'");
  Field field{b->name, b->kind, b->offset, sys.grid.N, sys.grid.he()};
  field.interpolate(f, fx, into);
}

}  // namespace pzbeam
