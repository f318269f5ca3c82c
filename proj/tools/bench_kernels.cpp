// Timing harness for the data-parallel kernels: each hot loop runs through
// the serial reference path and the OpenMP path on identical inputs, and the
// outputs are compared bit-for-bit (one writer per output slot, so thread
// count never changes the result).

#include <chrono>
#include <cstdio>
#include <string>

#include "chiralchain/dynamics.hpp"
#include "chiralchain/entanglement.hpp"

using namespace chiralchain;

namespace {

template <typename Fn>
double time_once(Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct Row {
  const char* name;
  double serial;
  double parallel;
  bool identical;
};

void print(const Row& row) {
  std::printf("%-28s %10.3fs %10.3fs  speedup %5.2fx  %s\n", row.name, row.serial,
              row.parallel, row.serial / row.parallel,
              row.identical ? "bit-identical" : "OUTPUT MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  const int n = argc > 1 ? std::stoi(argv[1]) : 8192;
  std::printf("kernel benchmark, n = %d, %d worker(s) available\n\n", n, worker_count());

  ModelParams params;
  params.gamma = 1.0;
  params.d = 1.3;
  params.h = -0.5;
  params.alpha = 2.1;
  params.n = n;

  // momentum-table construction: O(n^2/4) trig sums
  core::Spectrum modes_serial, modes_parallel;
  Row modes{"mode tables", time_once([&] { modes_serial = core::solve_modes(params, Exec::Serial); }),
            time_once([&] { modes_parallel = core::solve_modes(params, Exec::Parallel); }), true};
  for (std::size_t i = 0; i < modes_serial.modes.size(); ++i)
    modes.identical = modes.identical &&
                      modes_serial.modes[i].jk == modes_parallel.modes[i].jk &&
                      modes_serial.modes[i].theta == modes_parallel.modes[i].theta;
  print(modes);

  const gaussian::GaussianState state = gaussian::ground_state(params);
  const int rmax = std::min(n / 8, 512);

  gaussian::ContractionTables tab_serial, tab_parallel;
  Row tables{"contraction tables",
             time_once([&] {
               tab_serial = gaussian::contraction_tables(state, -rmax, rmax, Exec::Serial);
             }),
             time_once([&] {
               tab_parallel = gaussian::contraction_tables(state, -rmax, rmax, Exec::Parallel);
             }),
             true};
  for (std::size_t i = 0; i < tab_serial.aa.size(); ++i)
    tables.identical = tables.identical && tab_serial.aa[i] == tab_parallel.aa[i] &&
                       tab_serial.bb[i] == tab_parallel.bb[i] &&
                       tab_serial.ab[i] == tab_parallel.ab[i];
  print(tables);

  // Pfaffian correlator sweep over R
  ModelParams small = params;
  small.n = std::min(n, 512);
  const gaussian::GaussianState corr_state = gaussian::ground_state(small);
  spincorr::SpinObservables obs_serial, obs_parallel;
  const int sweep_rmax = small.n / 4;
  Row sweep{"correlator sweep (n=512)",
            time_once([&] {
              obs_serial = spincorr::spin_observables(corr_state, sweep_rmax, Exec::Serial);
            }),
            time_once([&] {
              obs_parallel = spincorr::spin_observables(corr_state, sweep_rmax, Exec::Parallel);
            }),
            true};
  for (int r = 1; r <= sweep_rmax; ++r)
    sweep.identical = sweep.identical && obs_serial.cxx_r(r) == obs_parallel.cxx_r(r) &&
                      obs_serial.cxy_r(r) == obs_parallel.cxy_r(r);
  print(sweep);

  // block entropies over l
  std::vector<double> ent_serial, ent_parallel;
  const int lmax = small.n / 4;
  Row entropies{"block entropies (n=512)",
                time_once([&] {
                  ent_serial = entanglement::block_entropies(corr_state, 2, lmax, Exec::Serial);
                }),
                time_once([&] {
                  ent_parallel =
                      entanglement::block_entropies(corr_state, 2, lmax, Exec::Parallel);
                }),
                true};
  for (std::size_t i = 0; i < ent_serial.size(); ++i)
    entropies.identical = entropies.identical && ent_serial[i] == ent_parallel[i];
  print(entropies);

  // relaxation series over times
  ModelParams post = params;
  post.alpha = 1.1;
  const gaussian::QuenchSetup setup = gaussian::QuenchSetup::make(params, post);
  const auto times = dynamics::log_time_grid(1.0, 1000.0, 200);
  dynamics::RelaxationSeries rel_serial, rel_parallel;
  Row relax{"relaxation series",
            time_once([&] {
              rel_serial = dynamics::delta_correlation(setup, 1, 2, times, Exec::Serial);
            }),
            time_once([&] {
              rel_parallel = dynamics::delta_correlation(setup, 1, 2, times, Exec::Parallel);
            }),
            true};
  for (std::size_t i = 0; i < rel_serial.values.size(); ++i)
    relax.identical = relax.identical && rel_serial.values[i] == rel_parallel.values[i];
  print(relax);

  return 0;
}
