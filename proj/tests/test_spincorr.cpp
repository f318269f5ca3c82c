#include "chiralchain/spincorr.hpp"

#include <random>

#include "chiralchain/oracle.hpp"
#include "doctest.h"

using namespace chiralchain;
using namespace chiralchain::spincorr;
using gaussian::GaussianState;
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

TEST_CASE("polarized limit: correlators and pair state") {
  ModelParams p;
  p.gamma = 0.4;
  p.d = 0.8;
  p.h = 100.0;
  p.alpha = 1.2;
  p.n = 64;
  const GaussianState state = ground_state(p);
  for (int r : {1, 5, 20, 32}) {
    CHECK(std::abs(spin_correlator(state, Axis::X, Axis::X, r)) < 1e-3);
    CHECK(czz_correlator(state, r) == doctest::Approx(1.0).epsilon(1e-3));
  }

  // rho -> |up up><up up|
  const Eigen::Matrix4cd rho = two_site_density(state, 3);
  CHECK(std::abs(rho(0, 0) - 1.0) < 1e-3);
  CHECK(std::abs(rho.trace() - 1.0) < 1e-10);
  CHECK(mutual_information(state, 3) < 1e-6);
}

TEST_CASE("all correlators match dense diagonalization on random draws") {
  std::mt19937 rng(53);
  int checked = 0;
  while (checked < 8) {
    const ModelParams p = random_params(rng);
    const oracle::DenseSpinSystem sys = oracle::ed_build(p);
    if (!oracle_comparable(p, sys)) continue;
    const GaussianState state = ground_state(p);
    const SpinObservables obs = spin_observables(state, 4);

    for (int r = 1; r <= 4; ++r) {
      const oracle::EdObservables ed = oracle::ed_observables(sys, sys.even_ground, r, 2);
      CHECK(obs.cxx_r(r) == doctest::Approx(ed.cxx).epsilon(1e-8));
      CHECK(obs.cyy_r(r) == doctest::Approx(ed.cyy).epsilon(1e-8));
      CHECK(obs.cxy_r(r) == doctest::Approx(ed.cxy).epsilon(1e-8));
      CHECK(obs.cyx_r(r) == doctest::Approx(ed.cyx).epsilon(1e-8));
      CHECK(obs.czz_r(r) == doctest::Approx(ed.czz).epsilon(1e-10));

      const Eigen::Matrix4cd rho = two_site_density_from(obs, r);
      CHECK((rho - ed.rho_pair).cwiseAbs().maxCoeff() < 1e-8);
      CHECK(mutual_information_from(obs, r) ==
            doctest::Approx(ed.mutual_information).epsilon(1e-8));
    }
    const oracle::EdObservables ed1 = oracle::ed_observables(sys, sys.even_ground, 1, 2);
    CHECK(chiral_order(state) == doctest::Approx(ed1.chiral).epsilon(1e-9));
    ++checked;
  }
}

TEST_CASE("czz via Pfaffian agrees with the Wick closed form") {
  std::mt19937 rng(59);
  for (int trial = 0; trial < 10; ++trial) {
    const ModelParams p = random_params(rng, 32);
    const GaussianState state = ground_state(p);
    const auto tables = gaussian::contraction_tables(state, -9, 9, Exec::Serial);
    for (int r = 1; r <= 8; ++r) {
      const cdouble closed = tables.ab_r(0) * tables.ab_r(0) -
                             tables.aa_r(r) * tables.bb_r(r) -
                             tables.ab_r(r) * tables.ab_r(-r);
      CHECK(czz_from_tables(tables, r) == doctest::Approx(closed.real()).epsilon(1e-10));
      CHECK(std::abs(closed.imag()) < 1e-10);
    }
  }
}

TEST_CASE("reflection symmetry at d = 0: xy and yx correlators vanish") {
  std::mt19937 rng(61);
  for (int trial = 0; trial < 5; ++trial) {
    ModelParams p = random_params(rng, 32);
    p.d = 0.0;
    const GaussianState state = ground_state(p);
    for (int r = 1; r <= 6; ++r) {
      CHECK(std::abs(spin_correlator(state, Axis::X, Axis::Y, r)) < 1e-10);
      CHECK(std::abs(spin_correlator(state, Axis::Y, Axis::X, r)) < 1e-10);
    }
    CHECK(std::abs(chiral_order(state)) < 1e-10);
  }
}

TEST_CASE("chiral order is positive in the gapless phase, zero in the gapped one") {
  ModelParams p;
  p.gamma = 0.5;
  p.h = -0.5;
  p.alpha = 3.0;
  p.n = 512;
  p.d = 1.5;
  REQUIRE(core::gap(p) == 0.0);
  CHECK(chiral_order(ground_state(p)) > 1e-6);

  p.d = 0.3;
  REQUIRE(core::gap(p) > 0.0);
  CHECK(std::abs(chiral_order(ground_state(p))) < 1e-6);
}

TEST_CASE("ferromagnetic order across the h = 1 boundary") {
  ModelParams p;
  p.gamma = 0.8;
  p.d = 0.5;
  p.alpha = 1.5;
  p.n = 512;
  p.h = 0.5;
  CHECK(std::abs(fm_order(ground_state(p))) > 0.05);
  p.h = 1.5;
  CHECK(std::abs(fm_order(ground_state(p))) < 5e-3);
  // at h = 100 the residual order is the perturbative long-range tail
  // ~ (1+gamma) J_{N/2} / (8h); it scales as 1/h, not exponentially
  p.h = 100.0;
  const double tail = std::abs(fm_order(ground_state(p)));
  CHECK(tail < 1e-5);
  p.h = 400.0;
  CHECK(std::abs(fm_order(ground_state(p))) == doctest::Approx(tail / 4.0).epsilon(0.1));
}

TEST_CASE("pair density construction invariants on random draws") {
  std::mt19937 rng(67);
  for (int trial = 0; trial < 100; ++trial) {
    const ModelParams p = random_params(rng, 24);
    const GaussianState state = ground_state(p);
    const SpinObservables obs = spin_observables(state, 6, Exec::Serial);
    CHECK(std::abs(obs.mz) <= 1.0 + 1e-8);
    for (int r = 1; r <= 6; ++r) {
      CHECK(std::abs(obs.cxx_r(r)) <= 1.0 + 1e-8);
      CHECK(std::abs(obs.czz_r(r)) <= 1.0 + 1e-8);
      const Eigen::Matrix4cd rho = two_site_density_from(obs, r);
      CHECK(std::abs(rho.trace() - 1.0) < 1e-10);
      CHECK((rho - rho.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
      CHECK(mutual_information_from(obs, r) >= -1e-9);
    }
  }
}

TEST_CASE("index validation") {
  ModelParams p;
  p.n = 16;
  const GaussianState state = ground_state(p);
  CHECK_THROWS_AS(spin_correlator(state, Axis::X, Axis::X, 0), std::invalid_argument);
  CHECK_THROWS_AS(spin_correlator(state, Axis::X, Axis::X, 9), std::invalid_argument);
  CHECK_THROWS_AS(two_site_density(state, 20), std::invalid_argument);
}
