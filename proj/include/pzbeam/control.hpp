#pragma once

#include "pzbeam/models.hpp"

namespace pzbeam {

// Static output feedback u_i = -k_i * (reading_i of the velocity trace).
// Collocated channels feed back their own load pairing, so each active
// channel adds a negative-semidefinite term to the closed-loop Gram form.
// The mm-static model additionally offers the plain P_xi-trace law, which
// is not collocated (see MmStaticVariant).
struct FeedbackLaw {
  ModelKind kind{};
  std::vector<std::pair<std::string, double>> gains;  // channel name -> k >= 0

  enum class MmStaticVariant {
    PxiTrace,   // V = -k (P_xi w_x_t)(L)
    FullBstar,  // V = -k [varsigma h2 h3 Bt B2 (P_xi w_x_t)(L) + B3 w_x_t(L)] gamma/B4
  };
  MmStaticVariant mm_variant = MmStaticVariant::PxiTrace;

  // The standard law per model with unit gains:
  //   full        g1, g3, V, M, g
  //   rn-dynamic  g1, V, M, g
  //   rn-static   g1, V, M            (the reduced three-channel law)
  //   mm-dynamic  V
  //   mm-static   V
  static FeedbackLaw standard(ModelKind kind);
  static FeedbackLaw rn_static_full(double k1, double k2, double k3, double k4);

  FeedbackLaw& set_gains(const std::vector<double>& ks);  // in listed order
};

// Natural tip readings (one per system channel, in channel order).
Eigen::VectorXd observe(const DiscreteSystem& sys, const Eigen::VectorXd& state);

// Closed-loop system A_cl = A + sum_i (-k_i) b_i s_i^T on the velocity block.
// Zero gains return a system bit-identical to the open loop.
DiscreteSystem close_loop(const DiscreteSystem& sys, const FeedbackLaw& law);

}  // namespace pzbeam
