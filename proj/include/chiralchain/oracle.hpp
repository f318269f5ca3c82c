#pragma once

#include <Eigen/Dense>
#include <vector>

#include "chiralchain/model.hpp"

namespace chiralchain::oracle {

/// Dense exact diagonalization of the spin Hamiltonian for n <= 12. Fixes
/// every sign and phase convention of the artifact: the free-fermion
/// pipeline must agree with these numbers, never the other way around.
///
/// Basis: bit j of the index is site j, bit value 0 <-> sigma^z = +1.
struct DenseSpinSystem {
  ModelParams params;
  Eigen::MatrixXcd hamiltonian;
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXcd eigenvectors;

  Eigen::VectorXcd ground;       // global ground state
  double ground_energy = 0.0;

  // Lowest eigenstate of even fermion parity (prod_j sigma^z_j = +1). The
  // free-fermion construction works in the antiperiodic sector, which maps
  // onto exactly this parity block of the spin model.
  Eigen::VectorXcd even_ground;
  double even_ground_energy = 0.0;

  // Set when the two lowest levels of the even sector are closer than
  // 1e-10, or when an eigenvector has no sharp parity; such instances are
  // excluded from oracle comparisons.
  bool degenerate = false;
};

DenseSpinSystem ed_build(const ModelParams& params);

/// Every static observable of one eigenstate, site-averaged over the ring.
struct EdObservables {
  double mz = 0.0;
  double cxx = 0.0, cyy = 0.0, czz = 0.0, cxy = 0.0, cyx = 0.0;  // at distance R
  Eigen::Matrix4cd rho_pair;   // rho_{i,i+R}, site i = left tensor factor
  double block_entropy = 0.0;  // S_l in bits, block = sites 0..l-1
  double mutual_information = 0.0;
  double chiral = 0.0;
};

EdObservables ed_observables(const DenseSpinSystem& system, const Eigen::VectorXcd& state,
                             int r, int l);
EdObservables ed_observables(const DenseSpinSystem& system, int r, int l);

/// Entropy of the reduced state of sites 0..l-1 (bits).
double ed_block_entropy(const Eigen::VectorXcd& state, int n, int l);

/// <c_m^dag c_n> on e^{-iHt}|state>, fermions via the Jordan-Wigner map.
cdouble ed_dynamic_correlation(const DenseSpinSystem& post, const Eigen::VectorXcd& state,
                               int m, int n, double t);

/// Fermion parity expectation <prod_j sigma^z_j>.
double ed_parity(const Eigen::VectorXcd& state, int n);

}  // namespace chiralchain::oracle
