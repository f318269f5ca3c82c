#pragma once

#include <Eigen/Dense>
#include <vector>

#include "chiralchain/gaussian.hpp"
#include "chiralchain/model.hpp"
#include "chiralchain/parallel.hpp"

namespace chiralchain::spincorr {

enum class Axis { X, Y };

/// Two-site correlator <sigma^a_i sigma^b_{i+R}> for a, b in {x, y},
/// assembled as a 2Rx2R Pfaffian of Majorana-string contractions. The
/// result must be real; an imaginary residue above 1e-6 raises
/// ConsistencyError, smaller residues are discarded after the check.
double spin_correlator(const gaussian::GaussianState& state, Axis a, Axis b, int r);

/// <sigma^z_i sigma^z_{i+R}> from the 4x4 Pfaffian of the on-site Majorana
/// pairs {A_i, B_i, A_{i+R}, B_{i+R}}.
double czz_correlator(const gaussian::GaussianState& state, int r);

/// Chiral order CH = (<sigma^x sigma^y> - <sigma^y sigma^x>)/4 at unit
/// distance; nonzero exactly when the spectrum is gapless.
double chiral_order(const gaussian::GaussianState& state);

/// Long-range magnetic order C^xx_{N/2}.
double fm_order(const gaussian::GaussianState& state);

/// Magnetization and all two-site correlators for R = 1..rmax in one sweep
/// (contractions tabulated once, per-R Pfaffians independent).
struct SpinObservables {
  double mz = 0.0;
  int rmax = 0;
  std::vector<double> cxx, cyy, czz, cxy, cyx;  // index R-1

  double cxx_r(int r) const { return cxx[r - 1]; }
  double cyy_r(int r) const { return cyy[r - 1]; }
  double czz_r(int r) const { return czz[r - 1]; }
  double cxy_r(int r) const { return cxy[r - 1]; }
  double cyx_r(int r) const { return cyx[r - 1]; }
};

SpinObservables spin_observables(const gaussian::GaussianState& state, int rmax,
                                 Exec exec = Exec::Parallel);

/// Two-site reduced density matrix
///   rho = (I + mz (sz x I + I x sz) + sum_{kl} C^kl s_k x s_l) / 4
/// with kl running over xx, yy, zz, xy, yx; the remaining terms vanish by
/// fermion-parity symmetry. Eigenvalues below -1e-6 raise ConsistencyError.
Eigen::Matrix4cd two_site_density(const gaussian::GaussianState& state, int r);
Eigen::Matrix4cd two_site_density_from(const SpinObservables& obs, int r);

/// Quantum mutual information I_R = S(rho_i) + S(rho_{i+R}) - S(rho_{i,i+R})
/// in bits.
double mutual_information(const gaussian::GaussianState& state, int r);
double mutual_information_from(const SpinObservables& obs, int r);
std::vector<double> mutual_information_profile(const SpinObservables& obs,
                                               Exec exec = Exec::Parallel);

/// Pfaffian assembly on precomputed contraction tables; exposed for reuse
/// by the batch sweep and for table-level tests.
double pfaffian_correlator(const gaussian::ContractionTables& tables, Axis a, Axis b, int r);
double czz_from_tables(const gaussian::ContractionTables& tables, int r);

}  // namespace chiralchain::spincorr
