#include "pzbeam/control.hpp"

namespace pzbeam {

FeedbackLaw FeedbackLaw::standard(ModelKind kind) {
  FeedbackLaw law;
  law.kind = kind;
  switch (kind) {
    case ModelKind::Full:
      law.gains = {{"g1", 1.0}, {"g3", 1.0}, {"V", 1.0}, {"M", 1.0}, {"g", 1.0}};
      break;
    case ModelKind::RnDynamic:
      law.gains = {{"g1", 1.0}, {"V", 1.0}, {"M", 1.0}, {"g", 1.0}};
      break;
    case ModelKind::RnStatic:
      law.gains = {{"g1", 1.0}, {"V", 1.0}, {"M", 1.0}};
      break;
    case ModelKind::MmDynamic:
    case ModelKind::MmStatic:
      law.gains = {{"V", 1.0}};
      break;
  }
  return law;
}

FeedbackLaw FeedbackLaw::rn_static_full(double k1, double k2, double k3, double k4) {
  FeedbackLaw law;
  law.kind = ModelKind::RnStatic;
  law.gains = {{"g1", k1}, {"V", k2}, {"M", k3}, {"g", k4}};
  return law;
}

FeedbackLaw& FeedbackLaw::set_gains(const std::vector<double>& ks) {
  if (ks.size() != gains.size()) {
    throw ValidationError("feedback law: expected " + std::to_string(gains.size()) +
                          " gains, got " + std::to_string(ks.size()));
  }
  for (size_t i = 0; i < ks.size(); ++i) gains[i].second = ks[i];
  return *this;
}

Eigen::VectorXd observe(const DiscreteSystem& sys, const Eigen::VectorXd& state) {
  if (state.size() != sys.state_dim()) {
    throw ValidationError("observe: state dimension mismatch");
  }
  const auto vel = state.tail(sys.n);
  Eigen::VectorXd out(sys.channels.size());
  for (size_t i = 0; i < sys.channels.size(); ++i) out[i] = sys.channels[i].obs.dot(vel);
  return out;
}

DiscreteSystem close_loop(const DiscreteSystem& sys, const FeedbackLaw& law) {
  if (law.kind != sys.kind) {
    throw ValidationError("close_loop: law is for model '" + std::string(to_string(law.kind)) +
                          "', system is '" + to_string(sys.kind) + "'");
  }
  bool all_zero = true;
  for (const auto& [name, k] : law.gains) {
    if (k < 0.0) throw ValidationError("close_loop: negative gain on channel " + name);
    if (sys.channel(name) == nullptr) {
      throw ValidationError("close_loop: system has no channel '" + name + "'");
    }
    all_zero = all_zero && k == 0.0;
  }

  DiscreteSystem out = sys;
  if (all_zero) return out;  // bit-identical to the open loop

  for (const auto& [name, k] : law.gains) {
    if (k == 0.0) continue;
    const Channel& ch = *sys.channel(name);
    if (ch.collocated || law.mm_variant == FeedbackLaw::MmStaticVariant::FullBstar) {
      out.R.noalias() += k * ch.load * ch.load.transpose();
    } else {
      // plain P_xi-trace law: rank-one but not symmetric in the Gram
      out.R.noalias() += k * ch.load * ch.obs.transpose();
      out.dissipative_certified = false;
    }
  }
  out.closed = true;
  return out;
}

}  // namespace pzbeam
