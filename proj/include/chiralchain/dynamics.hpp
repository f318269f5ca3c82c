#pragma once

#include <complex>
#include <vector>

#include "chiralchain/gaussian.hpp"
#include "chiralchain/numerics.hpp"
#include "chiralchain/parallel.hpp"
#include "chiralchain/spincorr.hpp"

namespace chiralchain::dynamics {

/// Logarithmically spaced time grid in [t0, t1].
std::vector<double> log_time_grid(double t0, double t1, int count);

/// delta C_mn(t) = C_mn(t) - C_mn(infinity) for the mode correlation
/// C_mn = <c_m^dag c_n> along a quench.
struct RelaxationSeries {
  int m = 1, n = 2;
  std::vector<double> times;
  std::vector<cdouble> values;
  cdouble steady;
};

RelaxationSeries delta_correlation(const gaussian::QuenchSetup& setup, int m, int n,
                                   const std::vector<double>& times,
                                   Exec exec = Exec::Parallel);

/// Semi-analytic relaxation sum over the momentum grid,
///   (1/N) sum_k sin(2 eta~_k) sin(2 dtheta_k) cos(2 lam~_k t) cos(phi_k (n-m)),
/// restricted to modes outside the pre-quench Fermi sea (filled modes carry
/// no off-diagonal weight and drop out of the relaxation exactly).
double delta_correlation_analytic(const gaussian::QuenchSetup& setup, int m, int n, double t);

/// Relaxation exponent chi of |delta C| ~ t^{-chi}: a power-law fit through
/// the local maxima (3-point peaks) of |values| inside [t_lo, t_hi].
/// Requires at least 5 envelope peaks in the window.
numerics::FitResult relaxation_exponent(const RelaxationSeries& series, double t_lo, double t_hi);

/// Steady-state correlation profiles I_R(inf) and C^xx_R(inf) for
/// R = 1..rmax, evaluated on the dephased state.
struct SteadyProfile {
  std::vector<double> mutual_information;  // index R-1
  std::vector<double> cxx;
};

SteadyProfile steady_profile(const gaussian::QuenchSetup& setup, int rmax,
                             Exec exec = Exec::Parallel);

/// Block-entropy growth S_t after a quench, for fixed block size l.
/// saturation_time is the first time S_t reaches 98% of the late-time
/// median (median over the last 10% of samples); the pre-saturation slope
/// is a linear fit below 80% of that time, and a1_minus/a1_plus translate
/// it into the prefactor of either branch of the t/|alpha_i -+ alpha_q|
/// growth law.
struct EntropySeries {
  int l = 0;
  std::vector<double> times;
  std::vector<double> entropies;
  double saturation_time = 0.0;
  numerics::FitResult slope_fit;
  double a1_minus = 0.0;
  double a1_plus = 0.0;
};

EntropySeries entropy_growth(const gaussian::QuenchSetup& setup, int l,
                             const std::vector<double>& times, Exec exec = Exec::Parallel);

}  // namespace chiralchain::dynamics
