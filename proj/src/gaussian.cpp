#include "chiralchain/gaussian.hpp"

#include <cmath>

namespace chiralchain::gaussian {

namespace {

// Ground-state block in the N-convention, N_ab = <Psi_b^dag Psi_a> with
// Psi = (c_k, c_{-k}^dag): N = n_+ w1 w1^dag + (1 - n_-) w2 w2^dag for the
// Bogoliubov columns w1 = (u, v), w2 = (-v*, u*). The stored block
// G_ab = <Psi_a^dag Psi_b> is its transpose.
Eigen::Matrix2cd ground_block_n(const core::ModeCoefficients& mc) {
  Eigen::Vector2cd w1, w2;
  w1 << mc.u, mc.v;
  w2 << -std::conj(mc.v), std::conj(mc.u);
  Eigen::Matrix2cd n = Eigen::Matrix2cd::Zero();
  if (mc.occ_plus()) n += w1 * w1.adjoint();
  if (!mc.occ_minus()) n += w2 * w2.adjoint();
  return n;
}

// Traceless part of the mode block, [[xi, -i delta], [i delta, -xi]].
Eigen::Matrix2cd pairing_part(const ModelParams& params, const core::ModeCoefficients& mc) {
  const double xi = params.h - mc.jk.real();
  const double delta = params.gamma * mc.jk.imag();
  Eigen::Matrix2cd m0;
  m0 << cdouble(xi, 0.0), cdouble(0.0, -delta), cdouble(0.0, delta), cdouble(-xi, 0.0);
  return m0;
}

// Exact 2x2 propagator exp(-i h_k t) via the spectral decomposition of
// h_k = -D Im(J_k) I + m0 with spec(m0) = {+lam, -lam}:
// exp(-i m0 t) = cos(lam t) I - i sin(lam t) m0 / lam.
Eigen::Matrix2cd propagator(const ModelParams& params, const core::ModeCoefficients& mc,
                            double t) {
  const double shift = -params.d * mc.jk.imag();
  const cdouble phase = std::polar(1.0, -shift * t);
  if (mc.lam == 0.0) return phase * Eigen::Matrix2cd::Identity();
  const Eigen::Matrix2cd m0 = pairing_part(params, mc);
  return phase * (std::cos(mc.lam * t) * Eigen::Matrix2cd::Identity() -
                  cdouble(0.0, std::sin(mc.lam * t) / mc.lam) * m0);
}

}  // namespace

GaussianState ground_state(const ModelParams& params, Exec exec) {
  const core::Spectrum spec = core::solve_modes(params, exec);
  GaussianState state;
  state.params = params;
  state.kind = GaussianState::Kind::Ground;
  state.phis = spec.phis;
  state.blocks.resize(spec.modes.size());
  for (std::size_t i = 0; i < spec.modes.size(); ++i)
    state.blocks[i] = ground_block_n(spec.modes[i]).transpose();
  return state;
}

QuenchSetup QuenchSetup::make(const ModelParams& pre, const ModelParams& post, Exec exec) {
  if (pre.n != post.n)
    throw std::invalid_argument("QuenchSetup: pre and post chains must have equal n");
  QuenchSetup setup;
  setup.pre = pre;
  setup.post = post;
  setup.pre_modes = core::solve_modes(pre, exec);
  setup.post_modes = core::solve_modes(post, exec);
  const std::size_t count = setup.pre_modes.modes.size();
  setup.eta.resize(count);
  setup.eta_tilde.resize(count);
  setup.dtheta.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    setup.eta[i] = setup.pre_modes.modes[i].theta;
    setup.eta_tilde[i] = setup.post_modes.modes[i].theta;
    setup.dtheta[i] = setup.eta[i] - setup.eta_tilde[i];
  }
  return setup;
}

GaussianState evolve(const QuenchSetup& setup, double t, Exec exec) {
  if (t < 0.0) throw std::invalid_argument("evolve: t must be >= 0");
  GaussianState state;
  state.params = setup.post;
  state.kind = GaussianState::Kind::Evolved;
  state.time = t;
  state.phis = setup.post_modes.phis;
  state.blocks.resize(setup.post_modes.modes.size());
  parallel_for(exec, static_cast<std::int64_t>(state.blocks.size()), [&](std::int64_t i) {
    const Eigen::Matrix2cd n0 = ground_block_n(setup.pre_modes.modes[i]);
    const Eigen::Matrix2cd u = propagator(setup.post, setup.post_modes.modes[i], t);
    state.blocks[i] = (u * n0 * u.adjoint()).transpose();
  });
  return state;
}

GaussianState steady_state(const QuenchSetup& setup, Exec exec) {
  GaussianState state;
  state.params = setup.post;
  state.kind = GaussianState::Kind::Steady;
  state.phis = setup.post_modes.phis;
  state.blocks.resize(setup.post_modes.modes.size());
  parallel_for(exec, static_cast<std::int64_t>(state.blocks.size()), [&](std::int64_t i) {
    const core::ModeCoefficients& post = setup.post_modes.modes[i];
    const Eigen::Matrix2cd n0 = ground_block_n(setup.pre_modes.modes[i]);
    if (post.lam == 0.0) {
      // degenerate post block: everything commutes, nothing dephases
      state.blocks[i] = n0.transpose();
      return;
    }
    Eigen::Vector2cd w1, w2;
    w1 << post.u, post.v;
    w2 << -std::conj(post.v), std::conj(post.u);
    const Eigen::Matrix2cd p1 = w1 * w1.adjoint();
    const Eigen::Matrix2cd p2 = w2 * w2.adjoint();
    state.blocks[i] = (p1 * n0 * p1 + p2 * n0 * p2).transpose();
  });
  return state;
}

PairCorrelations pair_correlations(const GaussianState& state, int rmin, int rmax, Exec exec) {
  if (rmax < rmin) throw std::invalid_argument("pair_correlations: empty range");
  PairCorrelations out;
  out.rmin = rmin;
  out.rmax = rmax;
  out.p.resize(rmax - rmin + 1);
  out.q.resize(rmax - rmin + 1);
  const double inv_n = 1.0 / state.params.n;
  // one output slot per iteration keeps serial and parallel runs bit-identical
  parallel_for(exec, static_cast<std::int64_t>(out.p.size()), [&](std::int64_t idx) {
    const int r = rmin + static_cast<int>(idx);
    cdouble p = 0.0, q = 0.0;
    for (std::size_t k = 0; k < state.phis.size(); ++k) {
      const cdouble fwd = std::polar(1.0, state.phis[k] * r);
      const double n1 = state.blocks[k](0, 0).real();
      const double n2 = 1.0 - state.blocks[k](1, 1).real();
      const cdouble f = state.blocks[k](0, 1);
      p += fwd * n1 + std::conj(fwd) * n2;
      q += f * (fwd - std::conj(fwd));
    }
    out.p[idx] = p * inv_n;
    out.q[idx] = q * inv_n;
  });
  return out;
}

namespace {

ContractionTables tables_from_pairs(const PairCorrelations& pc, int rmin, int rmax, int n) {
  ContractionTables t;
  t.rmin = rmin;
  t.rmax = rmax;
  t.aa.resize(rmax - rmin + 1);
  t.bb.resize(rmax - rmin + 1);
  t.ab.resize(rmax - rmin + 1);
  for (int r = rmin; r <= rmax; ++r) {
    const double on_site = (((r % n) + n) % n == 0) ? 1.0 : 0.0;
    const cdouble p_fwd = pc.pr(r), p_bwd = pc.pr(-r);
    const cdouble q_asym = pc.qr(r) - std::conj(pc.qr(r));
    t.aa[r - rmin] = on_site + (p_fwd - p_bwd) + q_asym;
    t.bb[r - rmin] = -on_site - (p_fwd - p_bwd) + q_asym;
    t.ab[r - rmin] = on_site + pc.qr(r) + std::conj(pc.qr(r)) - p_fwd - p_bwd;
  }
  return t;
}

}  // namespace

ContractionTables contraction_tables(const GaussianState& state, int rmin, int rmax, Exec exec) {
  if (rmax < rmin) throw std::invalid_argument("contraction_tables: empty range");
  const int span = std::max(std::abs(rmin), std::abs(rmax));
  const PairCorrelations pc = pair_correlations(state, -span, span, exec);
  return tables_from_pairs(pc, rmin, rmax, state.params.n);
}

AbExpectations ab_expectations(const GaussianState& state, int m, int n) {
  const int sites = state.params.n;
  if (m < 1 || m > sites || n < 1 || n > sites)
    throw std::invalid_argument("ab_expectations: site index out of range");
  const int r = (((n - m) % sites) + sites) % sites;
  const ContractionTables t = contraction_tables(state, r == 0 ? 0 : -r, r, Exec::Serial);
  return AbExpectations{t.aa_r(r), t.bb_r(r), t.ab_r(r)};
}

double magnetization_z(const GaussianState& state) {
  double occ = 0.0;
  for (const auto& block : state.blocks)
    occ += block(0, 0).real() + 1.0 - block(1, 1).real();
  return 1.0 - 2.0 * occ / state.params.n;
}

cdouble dynamic_correlation(const QuenchSetup& setup, int m, int n, double t) {
  const int sites = setup.post.n;
  if (m < 1 || m > sites || n < 1 || n > sites)
    throw std::invalid_argument("dynamic_correlation: site index out of range");
  const int r = n - m;
  cdouble sum = 0.0;
  for (std::size_t k = 0; k < setup.post_modes.modes.size(); ++k) {
    const Eigen::Matrix2cd n0 = ground_block_n(setup.pre_modes.modes[k]);
    const Eigen::Matrix2cd u = propagator(setup.post, setup.post_modes.modes[k], t);
    const Eigen::Matrix2cd nt = u * n0 * u.adjoint();
    const cdouble fwd = std::polar(1.0, setup.post_modes.modes[k].phi * r);
    sum += fwd * nt(0, 0) + std::conj(fwd) * (1.0 - nt(1, 1));
  }
  return sum / static_cast<double>(sites);
}

}  // namespace chiralchain::gaussian
