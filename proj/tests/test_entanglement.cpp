#include "chiralchain/entanglement.hpp"

#include <random>

#include "chiralchain/oracle.hpp"
#include "doctest.h"

using namespace chiralchain;
using namespace chiralchain::entanglement;
using gaussian::ground_state;

namespace {

ModelParams random_params(std::mt19937& rng, int n = 8) {
  std::uniform_real_distribution<double> ualpha(0.3, 3.0), ud(0.0, 2.5), ugamma(0.0, 1.0),
      uh(-1.5, 1.5);
  ModelParams p;
  p.alpha = ualpha(rng);
  p.d = ud(rng);
  p.gamma = ugamma(rng);
  p.h = uh(rng);
  p.n = n;
  return p;
}

bool oracle_comparable(const ModelParams& p, const oracle::DenseSpinSystem& sys) {
  int filled = 0;
  for (const auto& m : core::solve_modes(p).modes) filled += m.occ_plus() + m.occ_minus();
  return filled % 2 == 0 && !sys.degenerate;
}

}  // namespace

TEST_CASE("polarized vacuum: block spectrum {0, 1} and zero entropy") {
  ModelParams p;
  p.gamma = 0.3;
  p.d = 0.2;
  p.h = 100.0;
  p.alpha = 2.0;
  p.n = 64;
  const auto state = ground_state(p);
  const Eigen::MatrixXcd block = block_correlation_matrix(state, 6);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(block, Eigen::EigenvaluesOnly);
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double lam = es.eigenvalues()(i);
    CHECK(std::min(std::abs(lam), std::abs(lam - 1.0)) < 1e-3);
  }
  // residual entanglement at h = 100 is the perturbative long-range tail
  CHECK(block_entropy(state, 6) < 1e-4);
}

TEST_CASE("block matrix invariants on random draws") {
  std::mt19937 rng(71);
  for (int trial = 0; trial < 100; ++trial) {
    const ModelParams p = random_params(rng, 32);
    const auto state = ground_state(p);
    const int l = 5;
    const Eigen::MatrixXcd block = block_correlation_matrix(state, l);
    CHECK((block - block.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(block, Eigen::EigenvaluesOnly);
    const auto& lam = es.eigenvalues();
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
      CHECK(lam(i) > -1e-8);
      CHECK(lam(i) < 1.0 + 1e-8);
      // eigenvalues pair as (nu, 1 - nu)
      CHECK(lam(i) + lam(lam.size() - 1 - i) == doctest::Approx(1.0).epsilon(1e-8));
    }
  }
}

TEST_CASE("block entropy equals the dense reduced-state entropy") {
  std::mt19937 rng(73);
  int checked = 0;
  while (checked < 8) {
    const ModelParams p = random_params(rng);
    const oracle::DenseSpinSystem sys = oracle::ed_build(p);
    if (!oracle_comparable(p, sys)) continue;
    const auto state = ground_state(p);
    for (int l = 1; l <= 4; ++l) {
      const double ed = oracle::ed_block_entropy(sys.even_ground, p.n, l);
      CHECK(block_entropy(state, l) == doctest::Approx(ed).epsilon(1e-8));
    }
    ++checked;
  }
}

TEST_CASE("pure-state complementarity S_l = S_{N-l} in the dense picture") {
  std::mt19937 rng(79);
  const ModelParams p = random_params(rng);
  const oracle::DenseSpinSystem sys = oracle::ed_build(p);
  for (int l = 1; l <= 4; ++l) {
    CHECK(oracle::ed_block_entropy(sys.even_ground, p.n, l) ==
          doctest::Approx(oracle::ed_block_entropy(sys.even_ground, p.n, p.n - l))
              .epsilon(1e-10));
  }
}

TEST_CASE("critical chain: logarithmic growth, monotone window") {
  ModelParams p;
  p.gamma = 1.0;
  p.d = 0.0;
  p.h = 1.0;
  p.alpha = 500.0;
  p.n = 512;
  const auto state = ground_state(p);
  const auto entropies = block_entropies(state, 2, p.n / 4);
  for (std::size_t i = 1; i < entropies.size(); ++i)
    CHECK(entropies[i] >= entropies[i - 1] - 1e-6);
  // logarithmic, not saturating: doubling l keeps adding entropy
  const double s8 = entropies[8 - 2], s16 = entropies[16 - 2], s32 = entropies[32 - 2],
               s64 = entropies[64 - 2];
  CHECK(s16 - s8 > 0.05);
  CHECK(s32 - s16 > 0.05);
  CHECK((s32 - s16) == doctest::Approx(s64 - s32).epsilon(0.25));
}

TEST_CASE("synthetic central-charge recovery is exact") {
  const int n = 512;
  std::vector<double> entropies;
  const int l_lo = 8, l_hi = 128;
  for (int l = l_lo; l <= l_hi; ++l) {
    const double chord = (n / std::numbers::pi) * std::sin(std::numbers::pi * l / n);
    entropies.push_back(0.7 / 3.0 * std::log2(chord) + 0.3);
  }
  const auto fit = central_charge_fit_data(entropies, n, l_lo);
  CHECK(fit.slope == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(0.3).epsilon(1e-10));
  CHECK(fit.r2 == doctest::Approx(1.0));
}

TEST_CASE("central charge of the critical nearest-neighbor chain is 1/2") {
  ModelParams p;
  p.gamma = 1.0;
  p.d = 0.0;
  p.h = 1.0;
  p.alpha = 500.0;
  p.n = 256;
  const auto fit = central_charge_fit(p, 8, p.n / 4);
  CHECK(fit.slope == doctest::Approx(0.5).epsilon(0.1));
  CHECK(fit.r2 > 0.99);
}

TEST_CASE("argument validation") {
  ModelParams p;
  p.n = 32;
  const auto state = ground_state(p);
  CHECK_THROWS_AS(block_entropy(state, 0), std::invalid_argument);
  CHECK_THROWS_AS(block_entropy(state, 17), std::invalid_argument);
  CHECK_THROWS_AS(central_charge_fit(p, 8, 10), std::invalid_argument);  // < 5 points
}
