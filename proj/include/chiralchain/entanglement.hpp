#pragma once

#include <Eigen/Dense>
#include <vector>

#include "chiralchain/gaussian.hpp"
#include "chiralchain/numerics.hpp"
#include "chiralchain/parallel.hpp"

namespace chiralchain::entanglement {

/// 2l x 2l block correlation matrix [[I - C, F], [F^dag, C]] with
/// C_mn = <c_m^dag c_n> and F_mn = <c_m^dag c_n^dag> restricted to l sites.
/// Hermitian with eigenvalues in [0, 1] pairing as (nu, 1 - nu).
Eigen::MatrixXcd block_correlation_matrix(const gaussian::GaussianState& state, int l);

/// Block entanglement entropy S_l = -sum_p lambda_p log2(lambda_p) over the
/// spectrum of the block correlation matrix, in bits.
double block_entropy(const gaussian::GaussianState& state, int l);

/// S_l for every l in [l_lo, l_hi]; per-l eigenproblems are independent.
std::vector<double> block_entropies(const gaussian::GaussianState& state, int l_lo, int l_hi,
                                    Exec exec = Exec::Parallel);

/// Least-squares fit of S_l against (1/3) log2[(N/pi) sin(pi l/N)] over
/// l in [l_lo, l_hi]; the slope is the effective central charge.
numerics::FitResult central_charge_fit(const ModelParams& params, int l_lo, int l_hi,
                                       Exec exec = Exec::Parallel);

/// Same fit on externally supplied entropies (index 0 <-> l_lo).
numerics::FitResult central_charge_fit_data(const std::vector<double>& entropies, int n, int l_lo);

}  // namespace chiralchain::entanglement
