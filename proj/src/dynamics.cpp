#include "chiralchain/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "chiralchain/entanglement.hpp"

namespace chiralchain::dynamics {

std::vector<double> log_time_grid(double t0, double t1, int count) {
  if (!(t0 > 0.0) || t1 <= t0 || count < 2)
    throw std::invalid_argument("log_time_grid: need 0 < t0 < t1 and count >= 2");
  std::vector<double> times(count);
  const double step = std::log(t1 / t0) / (count - 1);
  for (int i = 0; i < count; ++i) times[i] = t0 * std::exp(step * i);
  return times;
}

RelaxationSeries delta_correlation(const gaussian::QuenchSetup& setup, int m, int n,
                                   const std::vector<double>& times, Exec exec) {
  if (std::abs(m - n) < 1)
    throw std::invalid_argument("delta_correlation: need distinct sites, |m - n| >= 1");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (times[i] <= times[i - 1])
      throw std::invalid_argument("delta_correlation: times must be strictly increasing");

  RelaxationSeries series;
  series.m = m;
  series.n = n;
  series.times = times;
  series.values.resize(times.size());

  // steady value from the dephasing projection, never a long-time limit
  const gaussian::GaussianState steady = gaussian::steady_state(setup, exec);
  const int sites = setup.post.n;
  const int r = n - m;
  cdouble steady_c = 0.0;
  for (std::size_t k = 0; k < steady.phis.size(); ++k) {
    const cdouble fwd = std::polar(1.0, steady.phis[k] * r);
    steady_c += fwd * steady.blocks[k](0, 0).real() +
                std::conj(fwd) * (1.0 - steady.blocks[k](1, 1).real());
  }
  series.steady = steady_c / static_cast<double>(sites);

  parallel_for(exec, static_cast<std::int64_t>(times.size()), [&](std::int64_t i) {
    series.values[i] = gaussian::dynamic_correlation(setup, m, n, times[i]) - series.steady;
  });
  return series;
}

double delta_correlation_analytic(const gaussian::QuenchSetup& setup, int m, int n, double t) {
  const int r = n - m;
  double sum = 0.0;
  for (std::size_t k = 0; k < setup.post_modes.modes.size(); ++k) {
    const auto& pre = setup.pre_modes.modes[k];
    if (pre.occ_plus() || pre.occ_minus()) continue;  // pre-quench Fermi sea
    const auto& post = setup.post_modes.modes[k];
    sum += std::sin(2.0 * setup.eta_tilde[k]) * std::sin(2.0 * setup.dtheta[k]) *
           std::cos(2.0 * post.lam * t) * std::cos(post.phi * r);
  }
  return sum / setup.post.n;
}

numerics::FitResult relaxation_exponent(const RelaxationSeries& series, double t_lo,
                                        double t_hi) {
  // 3-point local maxima of |dC|; on a log grid the sampling eventually
  // aliases the oscillation, so the fit runs through the per-bin maxima
  // (8 bins per decade), which track the upper envelope in both regimes
  std::vector<std::pair<double, double>> peaks;
  for (std::size_t i = 1; i + 1 < series.values.size(); ++i) {
    if (series.times[i] < t_lo || series.times[i] > t_hi) continue;
    const double prev = std::abs(series.values[i - 1]);
    const double here = std::abs(series.values[i]);
    const double next = std::abs(series.values[i + 1]);
    if (here >= prev && here > next && here > 0.0)
      peaks.emplace_back(series.times[i], here);
  }
  if (peaks.size() < 5)
    throw std::invalid_argument("relaxation_exponent: fewer than 5 envelope peaks in window");

  constexpr double kBinsPerDecade = 8.0;
  std::vector<std::pair<double, double>> envelope;
  double current_bin = std::numeric_limits<double>::quiet_NaN();
  for (const auto& peak : peaks) {
    const double bin = std::floor(std::log10(peak.first) * kBinsPerDecade);
    if (!envelope.empty() && bin == current_bin) {
      if (peak.second > envelope.back().second) envelope.back() = peak;
    } else {
      envelope.push_back(peak);
      current_bin = bin;
    }
  }
  if (envelope.size() < 5)
    throw std::invalid_argument("relaxation_exponent: fewer than 5 envelope bins in window");
  return numerics::power_law_fit(envelope, 0, static_cast<int>(envelope.size()));
}

SteadyProfile steady_profile(const gaussian::QuenchSetup& setup, int rmax, Exec exec) {
  const gaussian::GaussianState steady = gaussian::steady_state(setup, exec);
  const spincorr::SpinObservables obs = spincorr::spin_observables(steady, rmax, exec);
  SteadyProfile profile;
  profile.cxx = obs.cxx;
  profile.mutual_information = spincorr::mutual_information_profile(obs, exec);
  return profile;
}

EntropySeries entropy_growth(const gaussian::QuenchSetup& setup, int l,
                             const std::vector<double>& times, Exec exec) {
  if (l < 1 || l > setup.post.n / 2)
    throw std::invalid_argument("entropy_growth: block size out of range");
  if (times.size() < 10)
    throw std::invalid_argument("entropy_growth: need at least 10 time samples");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (times[i] <= times[i - 1])
      throw std::invalid_argument("entropy_growth: times must be strictly increasing");

  EntropySeries series;
  series.l = l;
  series.times = times;
  series.entropies.resize(times.size());
  parallel_for(exec, static_cast<std::int64_t>(times.size()), [&](std::int64_t i) {
    const gaussian::GaussianState state = gaussian::evolve(setup, times[i], Exec::Serial);
    series.entropies[i] = entanglement::block_entropy(state, l);
  });

  // saturation: first time reaching 98% of the late-time median
  const std::size_t tail = std::max<std::size_t>(1, times.size() / 10);
  std::vector<double> last(series.entropies.end() - tail, series.entropies.end());
  std::nth_element(last.begin(), last.begin() + last.size() / 2, last.end());
  const double plateau = last[last.size() / 2];
  series.saturation_time = times.back();
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (series.entropies[i] >= 0.98 * plateau) {
      series.saturation_time = times[i];
      break;
    }
  }

  // pre-saturation growth rate
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < times.size(); ++i)
    if (times[i] <= 0.8 * series.saturation_time)
      pts.emplace_back(times[i], series.entropies[i]);
  if (pts.size() >= 2) {
    series.slope_fit = numerics::linear_fit(pts, 0, static_cast<int>(pts.size()));
    series.a1_minus = series.slope_fit.slope * std::abs(setup.pre.alpha - setup.post.alpha);
    series.a1_plus = series.slope_fit.slope * std::abs(setup.pre.alpha + setup.post.alpha);
  }
  return series;
}

}  // namespace chiralchain::dynamics
