// Times the three parallel kernels against their serial references and
// checks that both produce identical results. Thread count comes from
// OMP_NUM_THREADS; on one core the interesting column is "identical".

#include <chrono>
#include <iomanip>
#include <iostream>
#include <string>

#include "fasdg/experiments.hpp"
#include "fasdg/solver.hpp"
#include "fasdg/surface.hpp"

namespace {

template <typename F>
double time_seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

void report(const std::string& name, double serial_s, double parallel_s, bool identical) {
  std::cout << std::left << std::setw(34) << name << std::right << std::fixed
            << std::setprecision(4) << std::setw(9) << serial_s << "s" << std::setw(9)
            << parallel_s << "s" << std::setprecision(2) << std::setw(8)
            << serial_s / parallel_s << "x   " << (identical ? "identical" : "MISMATCH")
            << "\n";
}

}  // namespace

int main() {
  std::cout << std::left << std::setw(34) << "kernel" << std::right << std::setw(10) << "serial"
            << std::setw(10) << "parallel" << std::setw(9) << "speedup"
            << "   results\n";

  {
    fas::SurfaceGrid gs, gp;
    const double ts = time_seconds([&] { gs = fas::scan_surface_serial(0.001); });
    const double tp = time_seconds([&] { gp = fas::scan_surface(0.001); });
    report("surface scan, spacing 0.001", ts, tp, gs.points == gp.points);
  }

  {
    fas::ExperimentConfig cfg;
    cfg.n = 60;
    cfg.p = 0.3;
    cfg.epsilon = 0.5;
    cfg.trials = 6000;
    cfg.seed = 12345;
    fas::ExperimentSummary ss, sp;
    const double ts = time_seconds([&] { ss = fas::run_ratio_trials_serial(cfg); });
    const double tp = time_seconds([&] { sp = fas::run_ratio_trials(cfg); });
    report("ratio trials, n=60, 6000 trials", ts, tp,
           fas::summary_to_json(ss) == fas::summary_to_json(sp));
  }

  {
    const fas::Digraph d = fas::Digraph::sample(80, 0.4, 99);
    fas::FasSolution a = fas::solve_local_search_serial(d, 1, 0);
    fas::FasSolution b = a;
    const double ts = time_seconds([&] { a = fas::solve_local_search_serial(d, 120, 7); });
    const double tp = time_seconds([&] { b = fas::solve_local_search(d, 120, 7); });
    report("local search, n=80, 120 restarts", ts, tp,
           a.y_star == b.y_star && a.ordering == b.ordering);
  }

  return 0;
}
