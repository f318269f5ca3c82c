#include "chiralchain/entanglement.hpp"

#include <cmath>
#include <numbers>

namespace chiralchain::entanglement {

namespace {

// Nambu-ordered block matrix M_ab = <Phi_a^dag Phi_b> for
// Phi = (c_1..c_l, c_1^dag..c_l^dag):
//   M = [[C, F], [F^dag, I - C^T]].
// For real C this is spectrum-equivalent to the [[I-C, F], [F^dag, C]]
// arrangement; with a complex Hermitian C (chiral states) the transpose in
// the hole block is required for the spectrum to be the mode occupations.
Eigen::MatrixXcd block_matrix_from(const gaussian::PairCorrelations& pc, int l) {
  Eigen::MatrixXcd cmat(l, l), fmat(l, l);
  for (int m = 0; m < l; ++m) {
    for (int n = 0; n < l; ++n) {
      cmat(m, n) = pc.pr(n - m);
      fmat(m, n) = pc.qr(n - m);
    }
  }
  Eigen::MatrixXcd block(2 * l, 2 * l);
  block.topLeftCorner(l, l) = cmat;
  block.topRightCorner(l, l) = fmat;
  block.bottomLeftCorner(l, l) = fmat.adjoint();
  block.bottomRightCorner(l, l) =
      Eigen::MatrixXcd::Identity(l, l) - cmat.transpose();
  return block;
}

double entropy_of_block(const Eigen::MatrixXcd& block) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(block, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index p = 0; p < es.eigenvalues().size(); ++p) {
    const double lam = es.eigenvalues()(p);
    if (lam < -1e-6 || lam > 1.0 + 1e-6)
      throw ConsistencyError("block_entropy: eigenvalue " + std::to_string(lam) +
                             " outside [0, 1]");
    if (lam <= 0.0 || lam >= 1.0) continue;
    s -= lam * std::log2(lam);
  }
  return s;
}

void check_l(const gaussian::GaussianState& state, int l) {
  if (l < 1 || l > state.params.n / 2)
    throw std::invalid_argument("block size l must lie in [1, n/2]");
}

}  // namespace

Eigen::MatrixXcd block_correlation_matrix(const gaussian::GaussianState& state, int l) {
  check_l(state, l);
  return block_matrix_from(gaussian::pair_correlations(state, -(l - 1), l - 1, Exec::Serial), l);
}

double block_entropy(const gaussian::GaussianState& state, int l) {
  return entropy_of_block(block_correlation_matrix(state, l));
}

std::vector<double> block_entropies(const gaussian::GaussianState& state, int l_lo, int l_hi,
                                    Exec exec) {
  check_l(state, l_lo);
  check_l(state, l_hi);
  if (l_hi < l_lo) throw std::invalid_argument("block_entropies: empty l range");
  const gaussian::PairCorrelations pc =
      gaussian::pair_correlations(state, -(l_hi - 1), l_hi - 1, exec);
  std::vector<double> out(l_hi - l_lo + 1);
  parallel_for(exec, static_cast<std::int64_t>(out.size()), [&](std::int64_t idx) {
    out[idx] = entropy_of_block(block_matrix_from(pc, l_lo + static_cast<int>(idx)));
  });
  return out;
}

numerics::FitResult central_charge_fit_data(const std::vector<double>& entropies, int n,
                                            int l_lo) {
  if (entropies.size() < 5)
    throw std::invalid_argument("central_charge_fit: need at least 5 block sizes");
  std::vector<std::pair<double, double>> pts;
  pts.reserve(entropies.size());
  for (std::size_t i = 0; i < entropies.size(); ++i) {
    const int l = l_lo + static_cast<int>(i);
    const double chord = (n / std::numbers::pi) * std::sin(std::numbers::pi * l / n);
    pts.emplace_back(std::log2(chord) / 3.0, entropies[i]);
  }
  return numerics::linear_fit(pts, 0, static_cast<int>(pts.size()));
}

numerics::FitResult central_charge_fit(const ModelParams& params, int l_lo, int l_hi, Exec exec) {
  if (l_lo < 2) throw std::invalid_argument("central_charge_fit: l range must start at >= 2");
  const gaussian::GaussianState state = gaussian::ground_state(params, exec);
  return central_charge_fit_data(block_entropies(state, l_lo, l_hi, exec), params.n, l_lo);
}

}  // namespace chiralchain::entanglement
