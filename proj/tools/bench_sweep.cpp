// Compares the serial reference sweep against the OpenMP worker pool and
// checks that both produce identical metrics.

#include <chrono>
#include <cmath>
#include <cstdio>

#include "iwave/asymptotics.hpp"

using namespace iwave;

int main(int argc, char** argv) {
  int jobs = argc > 1 ? std::atoi(argv[1]) : 4;

  auto M = make_builtin_manifold("euclidean:2");
  WaveProfile f = WaveProfile::from_expression("x^2 - y^2", {"x", "y"});
  DeltaNet net = make_net("bump");
  GeodesicData data;
  data.x0 = Vec::Zero(2);
  data.x0 << 1.0, 0.0;
  data.xdot0 = Vec::Zero(2);
  IntegratorConfig cfg;
  cfg.rel_tol = 1e-12;
  cfg.abs_tol = 1e-14;
  std::vector<double> grid = geometric_grid(1e-1, 1e-4, 32);

  auto run = [&](int j) {
    auto t0 = std::chrono::steady_clock::now();
    SweepReport rep = sweep(*M, f, net, data, 3.0, grid, cfg, {}, j);
    auto t1 = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return std::pair<SweepReport, double>{std::move(rep), ms};
  };

  run(jobs);  // warm up the worker pool
  auto [serial, t_serial] = run(1);
  auto [parallel, t_parallel] = run(jobs);

  double max_diff = 0.0;
  for (std::size_t i = 0; i < serial.entries.size(); ++i)
    max_diff = std::max(max_diff, std::abs(serial.entries[i].sup_x_err -
                                           parallel.entries[i].sup_x_err));

  std::printf("serial:   %8.1f ms\n", t_serial);
  std::printf("jobs=%-3d: %8.1f ms  (speedup %.2fx)\n", jobs, t_parallel,
              t_serial / t_parallel);
  std::printf("max sup_x_err difference: %g\n", max_diff);
  return max_diff == 0.0 ? 0 : 1;
}
