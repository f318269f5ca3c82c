#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "chiralchain/model.hpp"
#include "chiralchain/parallel.hpp"

namespace chiralchain::core {

/// Kac factor N = sum_{r=1}^{n/2} r^{-alpha}.
double kac_norm(double alpha, int n);

/// Long-range coupling in momentum space, J_k = sum_{r=1}^{n/2} J_r e^{i phi r}
/// with J_r = r^{-alpha}, divided by the Kac factor when enabled.
cdouble jk_alpha(double alpha, int n, double phi, bool kac_normalize);
cdouble jk_alpha(const ModelParams& params, double phi);

/// Spectral data of one positive momentum phi_k.
///
/// eps_plus/eps_minus are the dispersion pair -D Im(J_k) +- lambda; the
/// physical quasiparticle energies of the (+k, -k) mode pair are eps_plus
/// and -eps_minus. (u, v) is the unit eigenvector of the pairing block for
/// eigenvalue +lambda, u = cos(theta), v = i sin(theta).
struct ModeCoefficients {
  double phi = 0.0;
  cdouble jk;
  double lam = 0.0;
  double theta = 0.0;
  double eps_plus = 0.0;
  double eps_minus = 0.0;
  cdouble u, v;

  /// Ground-state occupations of the two quasiparticle modes; at most one
  /// of the pair can be filled. Exact zeros are treated as unoccupied.
  bool occ_plus(double tol = 1e-12) const { return eps_plus < -tol; }
  bool occ_minus(double tol = 1e-12) const { return -eps_minus < -tol; }
};

ModeCoefficients mode_coefficients(const ModelParams& params, double phi);

/// Single-mode Hamiltonian block in the (c_k, c_{-k}^dag) basis. Hermitian;
/// the DM interaction enters only as the identity shift -D Im(J_k) * I, so
/// the spectrum is {eps_plus, eps_minus}.
Eigen::Matrix2cd bdg_block(const ModelParams& params, double phi);

/// All positive-branch modes of one Hamiltonian.
struct Spectrum {
  ModelParams params;
  std::vector<double> phis;
  std::vector<ModeCoefficients> modes;
};

Spectrum solve_modes(const ModelParams& params, Exec exec = Exec::Parallel);

/// Spectral gap Delta = max{min_k eps(k), 0} with the minimum taken over
/// the physical dispersion on both momentum branches. A minimum below
/// 1e-9 * max|eps| counts as zero (finite grids never hit exact zeros).
double gap(const Spectrum& spectrum);
double gap(const ModelParams& params);

/// Momenta in [0, pi] where the dispersion crosses zero, located by
/// scanning consecutive evaluation points (the grid plus the zone
/// endpoints 0 and pi, where exact criticalities sit). Crossings are
/// reported at interval midpoints, at grid resolution; no root polishing.
std::vector<double> fermi_points(const Spectrum& spectrum);
std::vector<double> fermi_points(const ModelParams& params);

/// Ground energy of the momentum-space Hamiltonian: the Bogoliubov vacuum
/// energy plus every negative quasiparticle energy.
double ground_energy(const Spectrum& spectrum);

}  // namespace chiralchain::core
