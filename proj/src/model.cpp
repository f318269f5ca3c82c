#include "chiralchain/model.hpp"

#include <cmath>
#include <numbers>

namespace chiralchain {

void ModelParams::validate() const {
  // n = 2 is admitted for the dense oracle only; the momentum grid needs >= 4
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument("ModelParams: n must be even and >= 2, got " + std::to_string(n));
  if (!(alpha >= 0.0))
    throw std::invalid_argument("ModelParams: alpha must be >= 0");
  if (!std::isfinite(gamma) || !std::isfinite(d) || !std::isfinite(h) || !std::isfinite(alpha))
    throw std::invalid_argument("ModelParams: couplings must be finite");
}

std::vector<double> momentum_grid(int n) {
  if (n < 4 || n % 2 != 0)
    throw std::invalid_argument("momentum_grid: n must be even and >= 4");
  std::vector<double> phis(n / 2);
  for (int k = 1; k <= n / 2; ++k)
    phis[k - 1] = std::numbers::pi * (2.0 * k - 1.0) / n;
  return phis;
}

}  // namespace chiralchain
