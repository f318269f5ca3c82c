#include "chiralchain/core.hpp"

#include <numbers>
#include <random>

#include "doctest.h"

using namespace chiralchain;
using namespace chiralchain::core;

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

}  // namespace

TEST_CASE("kac_norm closed values") {
  CHECK(kac_norm(0.0, 8) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(kac_norm(500.0, 8) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(kac_norm(1.0, 8) == doctest::Approx(25.0 / 12.0).epsilon(1e-15));
}

TEST_CASE("jk_alpha limits and conjugation symmetry") {
  const double phi = 0.37;
  // nearest-neighbor limit: only r = 1 survives
  const cdouble nn = jk_alpha(500.0, 512, phi, true);
  CHECK(std::abs(nn - std::polar(1.0, phi)) < 1e-12);

  // two-term sum without normalization
  const cdouble two = jk_alpha(0.0, 4, phi, false);
  CHECK(std::abs(two - (std::polar(1.0, phi) + std::polar(1.0, 2 * phi))) < 1e-14);

  std::mt19937 rng(17);
  std::uniform_real_distribution<double> uphi(0.01, 3.1);
  for (int i = 0; i < 20; ++i) {
    const double x = uphi(rng);
    const cdouble fwd = jk_alpha(1.3, 64, x, true);
    const cdouble bwd = jk_alpha(1.3, 64, -x, true);
    CHECK(std::abs(bwd - std::conj(fwd)) < 1e-14);
  }
}

TEST_CASE("mode invariants over random parameter draws") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 1000; ++trial) {
    const ModelParams p = random_params(rng, 16);
    const std::vector<double> grid = momentum_grid(p.n);
    std::uniform_int_distribution<std::size_t> pick(0, grid.size() - 1);
    const double phi = grid[pick(rng)];
    const ModeCoefficients mc = mode_coefficients(p, phi);

    CHECK(std::abs(mc.eps_plus - mc.eps_minus - 2.0 * mc.lam) < 1e-12);
    CHECK(std::abs(mc.eps_plus + mc.eps_minus + 2.0 * p.d * mc.jk.imag()) < 1e-12);
    CHECK(std::abs(std::norm(mc.u) + std::norm(mc.v) - 1.0) < 1e-12);

    // block spectrum matches the dispersion pair
    const Eigen::Matrix2cd block = bdg_block(p, phi);
    CHECK((block - block.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(block, Eigen::EigenvaluesOnly);
    CHECK(std::abs(es.eigenvalues()(0) - mc.eps_minus) < 1e-10);
    CHECK(std::abs(es.eigenvalues()(1) - mc.eps_plus) < 1e-10);

    // (u, v) is the eps_plus eigenvector
    Eigen::Vector2cd uv;
    uv << mc.u, mc.v;
    CHECK((block * uv - mc.eps_plus * uv).norm() < 1e-10);

    // removing the DM identity shift gives the d = 0 block exactly
    ModelParams p0 = p;
    p0.d = 0.0;
    const Eigen::Matrix2cd shifted =
        block + p.d * mc.jk.imag() * Eigen::Matrix2cd::Identity();
    CHECK((shifted - bdg_block(p0, phi)).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("nearest-neighbor dispersion reduces to the closed form") {
  ModelParams p;
  p.gamma = 0.7;
  p.d = 0.0;
  p.h = 0.4;
  p.alpha = 500.0;
  p.n = 512;
  for (double phi : {0.1, 0.9, 2.7}) {
    const ModeCoefficients mc = mode_coefficients(p, phi);
    const double expected =
        std::hypot(p.h - std::cos(phi), p.gamma * std::sin(phi));
    CHECK(mc.lam == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("gap across the known phase boundaries") {
  ModelParams p;
  p.gamma = 0.5;
  p.h = -0.5;
  p.alpha = 3.0;
  p.n = 512;

  p.d = 0.3;  // d < gamma: always gapped
  CHECK(gap(p) > 0.0);

  p.d = 1.0;  // d > gamma at alpha = 3: gapless
  CHECK(gap(p) == 0.0);

  p.d = 0.6;
  p.alpha = 1.2;  // moderate fall-off keeps the gap open despite d > gamma
  CHECK(gap(p) > 0.0);
}

TEST_CASE("gap is insensitive to the DM identity shift at gamma Im J = 0") {
  // at the zone endpoints Im J vanishes; overall the shift moves eigenvalues
  // by exactly -d Im(J_k) per mode, which the dispersion pair reflects
  ModelParams p;
  p.gamma = 0.5;
  p.h = -0.5;
  p.alpha = 3.0;
  p.n = 64;
  const Spectrum with_d = solve_modes({p.gamma, 1.3, p.h, p.alpha, p.n, true});
  const Spectrum no_d = solve_modes({p.gamma, 0.0, p.h, p.alpha, p.n, true});
  for (std::size_t i = 0; i < with_d.modes.size(); ++i) {
    const double shift = -1.3 * with_d.modes[i].jk.imag();
    CHECK(with_d.modes[i].eps_plus - shift ==
          doctest::Approx(no_d.modes[i].eps_plus).epsilon(1e-12));
  }
}

TEST_CASE("fermi points: empty when gapped, endpoint touch at criticality, interior pair") {
  ModelParams p;
  p.gamma = 0.5;
  p.h = -0.5;
  p.alpha = 3.0;
  p.n = 512;
  p.d = 0.3;
  CHECK(fermi_points(p).empty());

  ModelParams critical;
  critical.gamma = 1.0;
  critical.d = 0.0;
  critical.h = 1.0;
  critical.alpha = 500.0;
  critical.n = 512;
  const auto pts = fermi_points(critical);
  REQUIRE(!pts.empty());
  CHECK(std::abs(pts.front()) <= std::numbers::pi / critical.n + 1e-12);

  ModelParams chiral = p;
  chiral.d = 1.5;
  const auto crossings = fermi_points(chiral);
  CHECK(crossings.size() >= 2);
  for (double k : crossings) {
    CHECK(std::abs(k) > 0.0);
    CHECK(std::abs(k) < std::numbers::pi);
  }
}

TEST_CASE("momentum grid shape") {
  const auto grid = momentum_grid(8);
  REQUIRE(grid.size() == 4);
  CHECK(grid.front() == doctest::Approx(std::numbers::pi / 8));
  CHECK(grid.back() == doctest::Approx(7 * std::numbers::pi / 8));
  for (std::size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);
  CHECK_THROWS_AS(momentum_grid(7), std::invalid_argument);
  CHECK_THROWS_AS(momentum_grid(2), std::invalid_argument);  // oracle-only size
  ModelParams bad;
  bad.n = 3;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.n = 8;
  bad.alpha = -0.1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
