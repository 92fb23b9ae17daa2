#ifndef IWAVE_ASYMPTOTICS_HPP
#define IWAVE_ASYMPTOTICS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "iwave/dynamics.hpp"
#include "iwave/limit_oracle.hpp"

namespace iwave {

// Least-squares slope of log10(err) vs log10(eps), restricted to points
// above the error floor.
struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // RMS of log10 residuals
  int n_used = 0;
  bool floored = false;   // fewer than 2 points above the floor
};

SlopeFit fit_loglog(const std::vector<double>& eps,
                    const std::vector<double>& err, double floor);

// Geometric grid from start down to stop with `count` points.
std::vector<double> geometric_grid(double start, double stop, int count);

// Runs fn(i) for i in [0, n) with an OpenMP worker pool; jobs <= 1 runs
// the plain serial loop (kept as the reference path).
void parallel_for_eps(int n, int jobs, const std::function<void(int)>& fn);

struct SweepEntry {
  double eps = 0.0;
  double sup_x_err = 0.0;
  std::vector<double> v_err;   // at the report's v_sample_points
  double jump_err = 0.0;
  double x_end_err = 0.0;
  std::string error;           // nonempty if integration failed
};

struct SweepReport {
  std::string scenario;
  double T = 1.0;
  std::vector<double> v_sample_points;
  std::vector<SweepEntry> entries;
  SlopeFit x_slope;
  SlopeFit jump_slope;
  SlopeFit v_slope;            // worst-point v error
  double error_floor = 0.0;
  bool monotone_x = false;     // nonincreasing sup_x_err (10% jitter)
  bool all_integrated = false;
};

SweepReport sweep(const ChartManifold& M, const WaveProfile& f,
                  const DeltaNet& net, const GeodesicData& data, double T,
                  const std::vector<double>& eps_grid,
                  const IntegratorConfig& cfg,
                  std::vector<double> v_sample_points = {}, int jobs = 1);

// Smooth compactly supported test function for distributional pairing.
struct TestFunction {
  std::string label;
  double lo = 0.0, hi = 0.0;
  std::function<double(double)> phi;
};

// Normalized bump supported on (lo, hi).
TestFunction bump_test_function(double lo, double hi);

struct PairingEntry {
  double eps;
  std::vector<double> value;   // one per test function
};

struct PairingReport {
  std::vector<std::string> phi_labels;
  std::vector<PairingEntry> entries;
  std::vector<SlopeFit> rates;       // one per test function
  std::vector<bool> converges;       // |pairing| decreasing to ~0
};

PairingReport association_pairing(const std::vector<Trajectory>& trajectories,
                                  const BrokenGeodesic& bg,
                                  const std::vector<TestFunction>& phis,
                                  double quad_tol = 1e-9);

struct ModeratenessReport {
  std::vector<double> eps;
  std::vector<double> sup_xdot, sup_xddot, sup_x3dot, sup_vddot;
  SlopeFit xdot_fit, xddot_fit, x3dot_fit, vddot_fit;
  // Expected orders O(eps^{1-l}) minus 0.2 slack.
  bool xdot_ok = false;    // slope >= -0.2
  bool xddot_ok = false;   // slope >= -1.2
  bool x3dot_ok = false;   // slope >= -2.2
  bool vddot_ok = false;   // slope >= -2.2
  bool all_ok() const { return xdot_ok && xddot_ok && x3dot_ok && vddot_ok; }
};

ModeratenessReport moderateness_probe(const ChartManifold& M,
                                      const WaveProfile& f, const DeltaNet& net,
                                      const GeodesicData& data,
                                      const std::vector<double>& eps_grid,
                                      int l_max, const IntegratorConfig& cfg,
                                      int jobs = 1);

struct StabilityEntry {
  double eps;
  double psi_sup;        // sup |x - x~| + |xdot - x~dot| on [-T, T]
  double bound;          // Gronwall-Bykov majorant
};

struct StabilityReport {
  int q = 1;
  double c3 = 0.0, c4 = 0.0;
  std::vector<StabilityEntry> entries;
  SlopeFit psi_fit;
  bool order_ok = false;      // fitted exponent >= q - 0.2
  bool dominated = false;     // psi <= bound for every eps
};

StabilityReport stability_probe(const ChartManifold& M, const WaveProfile& f,
                                const DeltaNet& net, const GeodesicData& data,
                                int q, double T,
                                const std::vector<double>& eps_grid,
                                const IntegratorConfig& cfg, int jobs = 1);

// A exp( (C3 (T+eps) + C4 C) + (C3 (T+eps)^2 / 2 + C4 C (T+eps)) ):
// the Bykov-Gronwall majorant with the L1 bound C replacing the delta
// integrals.
double gronwall_bykov_bound(double A, double C3, double C4, double C,
                            double eps, double T);

}  // namespace iwave

#endif
