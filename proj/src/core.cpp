#include "chiralchain/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace chiralchain::core {

namespace {

constexpr double kPi = std::numbers::pi;

// Fills the spectral data given the precomputed J_k. The Bogoliubov angle
// comes from the +lambda eigenvector of [[xi, i delta], [-i delta, -xi]]:
// sin(theta) = sqrt((lam - xi)/(2 lam)), cos(theta) = sgn(delta) sqrt((lam + xi)/(2 lam)).
// lam -+ xi is evaluated via delta^2/(lam +- xi) where the direct form cancels.
ModeCoefficients mode_from_jk(const ModelParams& params, double phi, cdouble jk) {
  ModeCoefficients mc;
  mc.phi = phi;
  mc.jk = jk;
  const double xi = params.h - jk.real();
  const double delta = params.gamma * jk.imag();
  mc.lam = std::hypot(xi, delta);
  const double shift = -params.d * jk.imag();
  mc.eps_plus = shift + mc.lam;
  mc.eps_minus = shift - mc.lam;

  if (delta == 0.0 || mc.lam == 0.0) {
    // degenerate pairing: documented limit (1, 0) for xi >= 0, (0, 1) below
    mc.theta = (xi >= 0.0) ? 0.0 : kPi / 2.0;
  } else {
    const double lam_minus_xi = (xi > 0.0) ? delta * delta / (mc.lam + xi) : mc.lam - xi;
    const double lam_plus_xi = (xi < 0.0) ? delta * delta / (mc.lam - xi) : mc.lam + xi;
    const double s = std::sqrt(std::max(lam_minus_xi, 0.0) / (2.0 * mc.lam));
    const double c = std::copysign(std::sqrt(std::max(lam_plus_xi, 0.0) / (2.0 * mc.lam)), delta);
    mc.theta = std::atan2(s, c);
  }
  mc.u = std::cos(mc.theta);
  mc.v = cdouble(0.0, std::sin(mc.theta));
  return mc;
}

cdouble jk_sum(double alpha, int half, double phi) {
  cdouble sum = 0.0;
  for (int r = half; r >= 1; --r)
    sum += std::pow(static_cast<double>(r), -alpha) * std::polar(1.0, phi * r);
  return sum;
}

}  // namespace

double kac_norm(double alpha, int n) {
  ModelParams probe;
  probe.alpha = alpha;
  probe.n = n;
  probe.validate();
  double sum = 0.0;
  for (int r = n / 2; r >= 1; --r) sum += std::pow(static_cast<double>(r), -alpha);
  return sum;
}

cdouble jk_alpha(double alpha, int n, double phi, bool kac_normalize) {
  if (!(phi > -kPi && phi < kPi))
    throw std::invalid_argument("jk_alpha: phi must lie in (-pi, pi)");
  cdouble sum = jk_sum(alpha, n / 2, phi);
  if (kac_normalize) sum /= kac_norm(alpha, n);
  return sum;
}

cdouble jk_alpha(const ModelParams& params, double phi) {
  params.validate();
  return jk_alpha(params.alpha, params.n, phi, params.kac_normalize);
}

ModeCoefficients mode_coefficients(const ModelParams& params, double phi) {
  return mode_from_jk(params, phi, jk_alpha(params, phi));
}

Eigen::Matrix2cd bdg_block(const ModelParams& params, double phi) {
  const cdouble jk = jk_alpha(params, phi);
  const double xi = params.h - jk.real();
  const double delta = params.gamma * jk.imag();
  const double shift = -params.d * jk.imag();
  Eigen::Matrix2cd block;
  block << cdouble(xi + shift, 0.0), cdouble(0.0, -delta),
      cdouble(0.0, delta), cdouble(-xi + shift, 0.0);
  return block;
}

Spectrum solve_modes(const ModelParams& params, Exec exec) {
  params.validate();
  Spectrum spec;
  spec.params = params;
  spec.phis = momentum_grid(params.n);
  spec.modes.resize(spec.phis.size());
  const double norm = params.kac_normalize ? kac_norm(params.alpha, params.n) : 1.0;
  const int half = params.n / 2;
  parallel_for(exec, static_cast<std::int64_t>(spec.phis.size()), [&](std::int64_t i) {
    const cdouble jk = jk_sum(params.alpha, half, spec.phis[i]) / norm;
    spec.modes[i] = mode_from_jk(params, spec.phis[i], jk);
  });
  return spec;
}

double gap(const Spectrum& spectrum) {
  double min_eps = std::numeric_limits<double>::max();
  double max_abs = 0.0;
  for (const auto& m : spectrum.modes) {
    min_eps = std::min(min_eps, std::min(m.eps_plus, -m.eps_minus));
    max_abs = std::max({max_abs, std::abs(m.eps_plus), std::abs(m.eps_minus)});
  }
  if (min_eps < 1e-9 * max_abs) return 0.0;
  return min_eps;
}

double gap(const ModelParams& params) { return gap(solve_modes(params)); }

std::vector<double> fermi_points(const Spectrum& spectrum) {
  const ModelParams& p = spectrum.params;
  // dispersion over the closed zone [0, pi]: the antiperiodic grid plus the
  // endpoints, where Im(J_k) vanishes and the exact criticalities sit
  const double norm = p.kac_normalize ? kac_norm(p.alpha, p.n) : 1.0;
  auto endpoint_eps = [&](double phi) {
    return std::abs(p.h - jk_sum(p.alpha, p.n / 2, phi).real() / norm);
  };

  std::vector<double> phis{0.0};
  std::vector<double> eps_fwd{endpoint_eps(0.0)};
  std::vector<double> eps_bwd{eps_fwd.back()};
  for (const auto& m : spectrum.modes) {
    phis.push_back(m.phi);
    eps_fwd.push_back(m.eps_plus);   // quasiparticle energy at +phi
    eps_bwd.push_back(-m.eps_minus); // and at -phi
  }
  phis.push_back(kPi);
  eps_fwd.push_back(endpoint_eps(kPi));
  eps_bwd.push_back(eps_fwd.back());

  double max_abs = 0.0;
  for (std::size_t i = 0; i < phis.size(); ++i)
    max_abs = std::max({max_abs, std::abs(eps_fwd[i]), std::abs(eps_bwd[i])});
  const double zero_tol = 1e-9 * max_abs;

  std::vector<double> points;
  auto scan = [&](const std::vector<double>& eps, double sign) {
    if (std::abs(eps[0]) <= zero_tol) points.push_back(sign * phis[0]);
    for (std::size_t i = 0; i + 1 < phis.size(); ++i) {
      if (std::abs(eps[i + 1]) <= zero_tol)
        points.push_back(sign * phis[i + 1]);
      else if (std::abs(eps[i]) > zero_tol && eps[i] * eps[i + 1] < 0.0)
        points.push_back(sign * 0.5 * (phis[i] + phis[i + 1]));
    }
  };
  scan(eps_fwd, 1.0);
  scan(eps_bwd, -1.0);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-12; }),
               points.end());
  return points;
}

std::vector<double> fermi_points(const ModelParams& params) {
  return fermi_points(solve_modes(params));
}

double ground_energy(const Spectrum& spectrum) {
  double energy = 0.0;
  for (const auto& m : spectrum.modes) {
    energy += -m.lam - m.jk.real();  // vacuum energy of the (k, -k) pair
    if (m.occ_plus()) energy += m.eps_plus;
    if (m.occ_minus()) energy += -m.eps_minus;
  }
  return energy;
}

}  // namespace chiralchain::core
