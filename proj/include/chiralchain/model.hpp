#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace chiralchain {

using cdouble = std::complex<double>;

/// Thrown when a computed quantity violates a consistency bound that should
/// hold up to roundoff (imaginary residue of a spin correlator, negativity
/// of a density matrix, ...). The CLI maps this to exit code 3.
class ConsistencyError : public std::runtime_error {
 public:
  explicit ConsistencyError(const std::string& what) : std::runtime_error(what) {}
};

/// Couplings of one chain instance: anisotropy gamma, DM strength d,
/// transverse field h, power-law fall-off alpha, site count n (even,
/// periodic chain). Couplings J_r = r^{-alpha} are divided by the Kac
/// factor sum_r r^{-alpha} when kac_normalize is set (the default), which
/// keeps the energy extensive for alpha < 1 and pins the h = 1 critical
/// point independently of alpha.
struct ModelParams {
  double gamma = 1.0;
  double d = 0.0;
  double h = 0.0;
  double alpha = 2.0;
  int n = 512;
  bool kac_normalize = true;

  void validate() const;
};

/// Positive-branch momenta phi_k = pi(2k-1)/n, k = 1..n/2, strictly
/// increasing in (0, pi). The -phi_k branch is implied by conjugation.
std::vector<double> momentum_grid(int n);

}  // namespace chiralchain
