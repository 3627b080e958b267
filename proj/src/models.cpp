#include "pzbeam/models.hpp"

#include <Eigen/Cholesky>
#include <cmath>

#include "pzbeam/elliptic.hpp"

namespace pzbeam {

const char* to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Full: return "full";
    case ModelKind::RnDynamic: return "rn-dynamic";
    case ModelKind::RnStatic: return "rn-static";
    case ModelKind::MmDynamic: return "mm-dynamic";
    case ModelKind::MmStatic: return "mm-static";
  }
  return "?";
}

ModelKind model_from_string(const std::string& name) {
  if (name == "full") return ModelKind::Full;
  if (name == "rn-dynamic") return ModelKind::RnDynamic;
  if (name == "rn-static") return ModelKind::RnStatic;
  if (name == "mm-dynamic") return ModelKind::MmDynamic;
  if (name == "mm-static") return ModelKind::MmStatic;
  throw ValidationError("unknown model '" + name +
                        "' (expected full | rn-dynamic | rn-static | mm-dynamic | mm-static)");
}

const Block* DiscreteSystem::block(const std::string& name) const {
  for (const auto& b : blocks)
    if (b.name == name) return &b;
  return nullptr;
}

const Channel* DiscreteSystem::channel(const std::string& name) const {
  for (const auto& ch : channels)
    if (ch.name == name) return &ch;
  return nullptr;
}

Eigen::MatrixXd DiscreteSystem::generator() const {
  Eigen::LLT<Eigen::MatrixXd> llt(M);
  if (llt.info() != Eigen::Success) throw NumericalError("generator: mass factorization failed");
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  A.topRightCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
  A.bottomLeftCorner(n, n) = -llt.solve(K);
  if (shear_damping > 0.0 || closed) A.bottomRightCorner(n, n) = -llt.solve(velocity_form());
  return A;
}

namespace {

bool is_dynamic(ModelKind k) {
  return k == ModelKind::Full || k == ModelKind::RnDynamic || k == ModelKind::MmDynamic;
}

Eigen::VectorXd point_val(int n, const Field& f, double scale = 1.0) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
  f.point_value_end(v, scale);
  return v;
}

Eigen::VectorXd point_slope(int n, const Field& f, double scale = 1.0) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
  f.point_slope_end(v, scale);
  return v;
}

void add_collocated(DiscreteSystem& sys, const std::string& name, Eigen::VectorXd obs,
                    double scale) {
  Channel ch;
  ch.name = name;
  ch.obs = std::move(obs);
  ch.load = scale * ch.obs;
  ch.load_scale = scale;
  ch.collocated = true;
  sys.channels.push_back(std::move(ch));
}

// Restriction to a contiguous dof subset, preserving Gram structure.
DiscreteSystem restrict_system(const DiscreteSystem& sys, const std::vector<Block>& keep) {
  DiscreteSystem out;
  out.kind = sys.kind;
  out.grid = sys.grid;
  out.spec = sys.spec;
  out.coef = sys.coef;
  out.shear_damping = sys.shear_damping;
  out.closed = sys.closed;
  out.dissipative_certified = sys.dissipative_certified;

  std::vector<int> map;
  int off = 0;
  for (const auto& b : keep) {
    out.blocks.push_back({b.name, off, b.size, b.kind});
    for (int i = 0; i < b.size; ++i) map.push_back(b.offset + i);
    off += b.size;
  }
  out.n = off;
  auto slice_mat = [&](const Eigen::MatrixXd& X) {
    Eigen::MatrixXd Y(off, off);
    for (int i = 0; i < off; ++i)
      for (int j = 0; j < off; ++j) Y(i, j) = X(map[i], map[j]);
    return Y;
  };
  auto slice_vec = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd y(off);
    for (int i = 0; i < off; ++i) y[i] = x[map[i]];
    return y;
  };
  out.M = slice_mat(sys.M);
  out.K = slice_mat(sys.K);
  out.D = slice_mat(sys.D);
  out.R = slice_mat(sys.R);
  for (const auto& ch : sys.channels) {
    // keep channels fully supported on the retained blocks
    Eigen::VectorXd full = Eigen::VectorXd::Zero(sys.n);
    for (int i = 0; i < off; ++i) full[map[i]] = 1.0;
    bool supported = true;
    for (int i = 0; i < sys.n; ++i) {
      if (full[i] == 0.0 && (ch.obs[i] != 0.0 || ch.load[i] != 0.0)) supported = false;
    }
    if (!supported) continue;
    Channel c2 = ch;
    c2.obs = slice_vec(ch.obs);
    c2.load = slice_vec(ch.load);
    out.channels.push_back(std::move(c2));
  }
  return out;
}

}  // namespace

DiscreteSystem assemble(ModelKind kind, const CompositeSpec& spec, const Grid& grid,
                        double shear_damping) {
  spec.validate();
  if (grid.N < 4) throw ValidationError("assemble: grid too coarse (N >= 4 required)");
  if (shear_damping < 0.0) throw ValidationError("assemble: shear damping must be nonnegative");
  if (shear_damping > 0.0 && (kind == ModelKind::MmDynamic || kind == ModelKind::MmStatic)) {
    throw ValidationError("assemble: shear damping needs an explicit shear field (full/rn models)");
  }
  const DefinitenessReport rep = check_definiteness(spec);
  if (!rep.rn_matrix_pd) {
    throw AssemblyError("assemble: stretching/charge coefficient matrix is not positive definite");
  }
  if ((kind == ModelKind::MmDynamic || kind == ModelKind::MmStatic) && !rep.mm_det_positive) {
    throw AssemblyError("assemble: sandwich energy matrix determinant is not positive");
  }
  if (is_dynamic(kind) && !(spec.mu > 0.0)) {
    throw AssemblyError("assemble: dynamic model requires mu > 0 (mu = 0 is electrostatic)");
  }

  DiscreteSystem sys;
  sys.kind = kind;
  sys.grid = grid;
  sys.spec = spec;
  sys.coef = derive_all(spec);
  sys.shear_damping = shear_damping;

  const auto& s = spec;
  const auto& c = sys.coef;
  const int N = grid.N;
  const double he = grid.he();

  std::vector<Field> F;
  F.reserve(4);
  auto add_field = [&](const char* nm, SpaceKind k) -> Field& {
    int off = sys.n;
    F.push_back(Field{nm, k, off, N, he});
    sys.n += F.back().dim();
    sys.blocks.push_back({nm, off, F.back().dim(), k});
    return F.back();
  };

  switch (kind) {
    case ModelKind::Full:
    case ModelKind::RnDynamic: {
      Field& v1 = add_field("v1", SpaceKind::P1);
      Field& v3 = add_field("v3", SpaceKind::P1);
      Field& p = add_field("p", SpaceKind::P1);
      Field& w = add_field("w", SpaceKind::Hermite);
      sys.M = Eigen::MatrixXd::Zero(sys.n, sys.n);
      sys.K = Eigen::MatrixXd::Zero(sys.n, sys.n);
      sys.D = Eigen::MatrixXd::Zero(sys.n, sys.n);
      sys.R = Eigen::MatrixXd::Zero(sys.n, sys.n);
      FormAssembler am(sys.M), ak(sys.K), ad(sys.D);
      const bool full = kind == ModelKind::Full;
      Row v1v, v3v, pv, wv, v1x, v3x, px, wx, wxx, phi2, v2r, ps2r;
      for (int e = 0; e < N; ++e) {
        for (int q = 0; q < Quad5::n; ++q) {
          const double cw = Quad5::w[q] * he;
          v1v.clear(); v3v.clear(); pv.clear(); wv.clear();
          v1x.clear(); v3x.clear(); px.clear(); wx.clear(); wxx.clear();
          v1.trace(e, q, 0, 1.0, v1v);
          v3.trace(e, q, 0, 1.0, v3v);
          p.trace(e, q, 0, 1.0, pv);
          w.trace(e, q, 0, 1.0, wv);
          v1.trace(e, q, 1, 1.0, v1x);
          v3.trace(e, q, 1, 1.0, v3x);
          p.trace(e, q, 1, 1.0, px);
          w.trace(e, q, 1, 1.0, wx);
          w.trace(e, q, 2, 1.0, wxx);

          // shear angle numerator -v1 + v3 + H w_x (the G2 h2 |phi2|^2 term
          // carries 1/h2^2, hence the G2/h2 coefficient)
          phi2.clear();
          v1.trace(e, q, 0, -1.0, phi2);
          v3.trace(e, q, 0, 1.0, phi2);
          w.trace(e, q, 1, c.H, phi2);

          am.square(v1v, cw * s.rho1 * s.h1);
          am.square(v3v, cw * s.rho3 * s.h3);
          am.square(pv, cw * s.mu * s.h3);
          am.square(wv, cw * c.m);
          am.square(wx, cw * c.K1);  // outer-layer rotational inertia

          ak.square(v1x, cw * s.alpha1 * s.h1);
          ak.square(v3x, cw * c.alpha3 * s.h3);
          ak.square(px, cw * s.beta * s.h3);
          ak.pair(v3x, px, -cw * s.gamma * s.beta * s.h3);
          ak.square(wxx, cw * c.K2);
          ak.square(phi2, cw * s.G2 / s.h2);
          if (shear_damping > 0.0) ad.square(phi2, cw * shear_damping / s.h2);

          if (full) {
            // core contributions, reconstructed from the eliminated fields
            // v2 = (v1+v3)/2 + (h3-h1)/4 w_x and
            // psi2 = (-v1+v3)/h2 + (h1+h3)/(2 h2) w_x
            v2r.clear();
            v1.trace(e, q, 0, 0.5, v2r);
            v3.trace(e, q, 0, 0.5, v2r);
            w.trace(e, q, 1, (s.h3 - s.h1) / 4.0, v2r);
            ps2r.clear();
            v1.trace(e, q, 0, -1.0 / s.h2, ps2r);
            v3.trace(e, q, 0, 1.0 / s.h2, ps2r);
            w.trace(e, q, 1, (s.h1 + s.h3) / (2.0 * s.h2), ps2r);
            am.square(v2r, cw * s.rho2 * s.h2);
            am.square(ps2r, cw * s.rho2 * std::pow(s.h2, 3) / 12.0);

            v2r.clear();
            v1.trace(e, q, 1, 0.5, v2r);
            v3.trace(e, q, 1, 0.5, v2r);
            w.trace(e, q, 2, (s.h3 - s.h1) / 4.0, v2r);
            ps2r.clear();
            v1.trace(e, q, 1, -1.0 / s.h2, ps2r);
            v3.trace(e, q, 1, 1.0 / s.h2, ps2r);
            w.trace(e, q, 2, (s.h1 + s.h3) / (2.0 * s.h2), ps2r);
            ak.square(v2r, cw * s.alpha2 * s.h2);
            ak.square(ps2r, cw * s.alpha2 * std::pow(s.h2, 3) / 12.0);
          }
        }
      }
      add_collocated(sys, "g1", point_val(sys.n, v1), 1.0);
      add_collocated(sys, "g3", point_val(sys.n, v3), 1.0);
      add_collocated(sys, "V", point_val(sys.n, p), -1.0);
      add_collocated(sys, "M", point_slope(sys.n, w), -1.0);
      add_collocated(sys, "g", point_val(sys.n, w), 1.0);
      break;
    }

    case ModelKind::RnStatic: {
      Field& v1 = add_field("v1", SpaceKind::P1);
      Field& v3 = add_field("v3", SpaceKind::P1);
      Field& w = add_field("w", SpaceKind::Hermite);
      sys.M = Eigen::MatrixXd::Zero(sys.n, sys.n);
      sys.K = Eigen::MatrixXd::Zero(sys.n, sys.n);
      sys.D = Eigen::MatrixXd::Zero(sys.n, sys.n);
      sys.R = Eigen::MatrixXd::Zero(sys.n, sys.n);
      FormAssembler am(sys.M), ak(sys.K), ad(sys.D);
      Row v1v, v3v, wv, v1x, v3x, wx, wxx, phi2;
      for (int e = 0; e < N; ++e) {
        for (int q = 0; q < Quad5::n; ++q) {
          const double cw = Quad5::w[q] * he;
          v1v.clear(); v3v.clear(); wv.clear();
          v1x.clear(); v3x.clear(); wx.clear(); wxx.clear();
          v1.trace(e, q, 0, 1.0, v1v);
          v3.trace(e, q, 0, 1.0, v3v);
          w.trace(e, q, 0, 1.0, wv);
          v1.trace(e, q, 1, 1.0, v1x);
          v3.trace(e, q, 1, 1.0, v3x);
          w.trace(e, q, 1, 1.0, wx);
          w.trace(e, q, 2, 1.0, wxx);
          phi2.clear();
          v1.trace(e, q, 0, -1.0, phi2);
          v3.trace(e, q, 0, 1.0, phi2);
          w.trace(e, q, 1, c.H, phi2);

          am.square(v1v, cw * s.rho1 * s.h1);
          am.square(v3v, cw * s.rho3 * s.h3);
          am.square(wv, cw * c.m);
          am.square(wx, cw * c.K1);

          ak.square(v1x, cw * s.alpha1 * s.h1);
          ak.square(v3x, cw * s.alpha3_1 * s.h3);  // electrostatic: purely elastic face
          ak.square(wxx, cw * c.K2);
          ak.square(phi2, cw * s.G2 / s.h2);
          if (shear_damping > 0.0) ad.square(phi2, cw * shear_damping / s.h2);
        }
      }
      add_collocated(sys, "g1", point_val(sys.n, v1), 1.0);
      add_collocated(sys, "V", point_val(sys.n, v3), -s.gamma);
      add_collocated(sys, "M", point_slope(sys.n, w), -1.0);
      add_collocated(sys, "g", point_val(sys.n, w), 1.0);
      break;
    }

    case ModelKind::MmDynamic: {
      Field& w = add_field("w", SpaceKind::Hermite);
      Field& p = add_field("p", SpaceKind::P1);
      sys.M = Eigen::MatrixXd::Zero(sys.n, sys.n);
      sys.K = Eigen::MatrixXd::Zero(sys.n, sys.n);
      sys.D = Eigen::MatrixXd::Zero(sys.n, sys.n);
      sys.R = Eigen::MatrixXd::Zero(sys.n, sys.n);
      FormAssembler am(sys.M), ak(sys.K);
      EllipticSolver ell(grid, c.xi);
      Field phi{"phi", SpaceKind::P1, 0, N, he};
      Eigen::MatrixXd Rload = Eigen::MatrixXd::Zero(N, sys.n);
      const double coefJ = s.gamma * s.beta * c.varsigma * s.h2 * s.h3;
      Row wv, pv, wx, wxx, px, u, tst;
      for (int e = 0; e < N; ++e) {
        for (int q = 0; q < Quad5::n; ++q) {
          const double cw = Quad5::w[q] * he;
          wv.clear(); pv.clear(); wx.clear(); wxx.clear(); px.clear();
          w.trace(e, q, 0, 1.0, wv);
          p.trace(e, q, 0, 1.0, pv);
          w.trace(e, q, 1, 1.0, wx);
          w.trace(e, q, 2, 1.0, wxx);
          p.trace(e, q, 1, 1.0, px);

          am.square(wv, cw * c.m);
          am.square(pv, cw * s.mu * s.h3);

          ak.square(wxx, cw * c.A);
          ak.square(px, cw * s.beta * c.B4);
          ak.pair(wxx, px, cw * s.gamma * s.beta * c.B3);

          // nonlocal shear energy -coefJ <J u, u> = coefJ (<u,u> - xi <P_xi u, u>)
          // with u = B1 w_x + B2 p
          u.clear();
          w.trace(e, q, 1, c.B1, u);
          p.trace(e, q, 0, c.B2, u);
          ak.square(u, cw * coefJ);
          tst.clear();
          phi.trace(e, q, 0, 1.0, tst);
          FormAssembler::rect(Rload, tst, u, cw);
        }
      }
      sys.K.noalias() -= coefJ * c.xi * (Rload.transpose() * ell.solve_load(Rload));
      add_collocated(sys, "V", point_val(sys.n, p), -1.0);
      break;
    }

    case ModelKind::MmStatic: {
      Field& w = add_field("w", SpaceKind::Hermite);
      sys.M = Eigen::MatrixXd::Zero(sys.n, sys.n);
      sys.K = Eigen::MatrixXd::Zero(sys.n, sys.n);
      sys.D = Eigen::MatrixXd::Zero(sys.n, sys.n);
      sys.R = Eigen::MatrixXd::Zero(sys.n, sys.n);
      FormAssembler am(sys.M), ak(sys.K);
      const double xi_static = c.varsigma * c.tilde_C;
      EllipticSolver ell(grid, xi_static);
      Field phi{"phi", SpaceKind::P1, 0, N, he};
      Eigen::MatrixXd Rw = Eigen::MatrixXd::Zero(N, sys.n);
      const double coefJ = s.gamma * s.beta * c.varsigma * s.h2 * s.h3 * c.tilde_B * c.tilde_B;
      Row wv, wx, wxx, tst;
      for (int e = 0; e < N; ++e) {
        for (int q = 0; q < Quad5::n; ++q) {
          const double cw = Quad5::w[q] * he;
          wv.clear(); wx.clear(); wxx.clear();
          w.trace(e, q, 0, 1.0, wv);
          w.trace(e, q, 1, 1.0, wx);
          w.trace(e, q, 2, 1.0, wxx);
          am.square(wv, cw * c.m);
          ak.square(wxx, cw * c.tilde_A);
          ak.square(wx, cw * coefJ);
          tst.clear();
          phi.trace(e, q, 0, 1.0, tst);
          FormAssembler::rect(Rw, tst, wx, cw);
        }
      }
      sys.K.noalias() -= coefJ * xi_static * (Rw.transpose() * ell.solve_load(Rw));

      // voltage channel: load from the weak pairing of the control distribution,
      // observation = trace of P_xi applied to the angular velocity
      Channel ch;
      ch.name = "V";
      const Eigen::VectorXd eL = ell.point_eval_end();
      ch.obs = Rw.transpose() * ell.solve_load(eL);  // (P_xi w_x)(L) reading
      ch.load = (s.gamma / c.B4) *
                (c.varsigma * s.h2 * s.h3 * c.tilde_B * c.B2 * ch.obs +
                 c.B3 * point_slope(sys.n, w));
      ch.load_scale = 1.0;
      ch.collocated = false;
      sys.channels.push_back(std::move(ch));
      break;
    }
  }

  // mass must factor cleanly; this is where a mu = 0 dynamic model fails
  Eigen::LLT<Eigen::MatrixXd> llt(sys.M);
  if (llt.info() != Eigen::Success) {
    throw AssemblyError("assemble: mass matrix is not positive definite "
                        "(dynamic model with mu = 0?)");
  }
  return sys;
}

EnergyBreakdown energy(const DiscreteSystem& sys, const Eigen::VectorXd& state) {
  if (state.size() != sys.state_dim()) {
    throw ValidationError("energy: state dimension mismatch");
  }
  const auto x = state.head(sys.n);
  const auto v = state.tail(sys.n);
  EnergyBreakdown e;
  e.potential = 0.5 * x.dot(sys.K * x);
  e.kinetic = 0.5 * v.dot(sys.M * v);
  e.total = e.potential + e.kinetic;
  return e;
}

DiscreteSystem inertial_sliding_subsystem(const DiscreteSystem& sys) {
  if (sys.kind != ModelKind::RnDynamic) {
    throw ValidationError("inertial_sliding_subsystem: requires the rn-dynamic model");
  }
  std::vector<Block> keep;
  for (const auto& b : sys.blocks)
    if (b.name != "w") keep.push_back(b);
  return restrict_system(sys, keep);
}

DiscreteSystem bending_free_subsystem(const DiscreteSystem& sys) {
  if (sys.kind != ModelKind::MmDynamic) {
    throw ValidationError("bending_free_subsystem: requires the mm-dynamic model");
  }
  std::vector<Block> keep;
  for (const auto& b : sys.blocks)
    if (b.name == "p") keep.push_back(b);
  return restrict_system(sys, keep);
}

}  // namespace pzbeam
