#ifndef IWAVE_DYNAMICS_HPP
#define IWAVE_DYNAMICS_HPP

#include <optional>
#include <string>
#include <vector>

#include "iwave/impulse.hpp"
#include "iwave/manifold.hpp"
#include "iwave/ode.hpp"

namespace iwave {

// Unknowns of the regularized IVP along the affine parameter u. The
// state carries p := vdot + (1/2) f(x) delta_eps(u) instead of vdot,
// which removes the delta'_eps term from the system exactly.
struct GeodesicState {
  double u = 0.0;
  double v = 0.0;
  double p = 0.0;
  Vec x;
  Vec xdot;
};

struct GeodesicData {
  double v0 = 0.0;
  double vdot0 = 0.0;
  Vec x0;
  Vec xdot0;
  double u0 = -1.0;  // parameter value where the data is posed
};

struct IntegratorConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = 0.05;
  double kappa = 16.0;      // step cap eps/kappa inside [-eps, eps]
  double eps_min = 1e-6;    // smaller eps rejected
  long max_steps = 5'000'000;

  void validate() const;
};

// Optional extra forcing terms (the stability probe's a_eps, b_eps):
// pdot += a(u), xddot^k += b(u) for every k.
struct Forcing {
  std::function<double(double)> a;
  std::function<double(double)> b;
};

class Trajectory {
public:
  Trajectory() = default;
  Trajectory(const ChartManifold* M, WaveProfile f, DeltaNet net, double eps,
             GeodesicData data, PiecewiseDense dense, OdeStats stats);

  double eps() const { return eps_; }
  int dim() const { return dim_; }
  double u_lo() const { return dense_.u_lo(); }
  double u_hi() const { return dense_.u_hi(); }
  const GeodesicData& data() const { return data_; }
  const OdeStats& stats() const { return stats_; }
  const std::vector<GeodesicState>& samples() const { return samples_; }

  GeodesicState at(double u) const;
  // vdot recovered from p: vdot = p - (1/2) f(x) delta_eps(u).
  double vdot_at(double u) const;
  // Raw second derivatives at a state (for moderateness probes):
  // vddot = -delta * sum_j d_j f xdot^j - (1/2) f ddelta.
  double vddot_at(const GeodesicState& s) const;
  Vec xddot_at(const GeodesicState& s) const;
  // d^3 x / du^3 from the analytic u-derivative of the RHS (spatial
  // derivatives by finite differences).
  Vec x3dot_at(const GeodesicState& s) const;

private:
  const ChartManifold* M_ = nullptr;
  WaveProfile f_;
  std::optional<DeltaNet> net_;
  double eps_ = 0.0;
  int dim_ = 0;
  GeodesicData data_;
  PiecewiseDense dense_;
  OdeStats stats_;
  std::vector<GeodesicState> samples_;
};

// State derivative of the p-form system at (u, s).
struct StateDerivative {
  double vdot;
  double pdot;
  Vec xdot;
  Vec xddot;
};
StateDerivative rhs(const ChartManifold& M, const WaveProfile& f,
                    const DeltaNet& net, double eps, const GeodesicState& s);

// Raw formulation with the analytic delta'_eps term; kept only as a
// cross-check at moderate eps. State layout [v, vdot, x, xdot].
Trajectory integrate_raw_form(const ChartManifold& M, const WaveProfile& f,
                              const DeltaNet& net, double eps,
                              const GeodesicData& data, double u_end,
                              const IntegratorConfig& cfg);

// Integrate the regularized IVP from data at u0 (default -1) to u_end.
Trajectory integrate(const ChartManifold& M, const WaveProfile& f,
                     const DeltaNet& net, double eps, const GeodesicData& data,
                     double u_end, const IntegratorConfig& cfg,
                     const Forcing* forcing = nullptr);

// Same, covering [u_lo, u_hi] with the data point inside; the backward
// leg runs from u0 down to u_lo.
Trajectory integrate_span(const ChartManifold& M, const WaveProfile& f,
                          const DeltaNet& net, double eps,
                          const GeodesicData& data, double u_lo, double u_hi,
                          const IntegratorConfig& cfg,
                          const Forcing* forcing = nullptr);

// alpha of the local existence lemma; zero denominators contribute
// +infinity to the min.
double existence_interval_alpha(double b, double c, double f1_sup,
                                double f2_norm, double k_sup, double big_c,
                                double xdot0_norm);

struct LemmaBoundsReport {
  double alpha = 0.0;
  double f1_sup = 0.0;
  double f2_norm = 0.0;   // sup over I1 of |F2|, F2 = (1/2) grad_h f
  double big_c = 0.0;     // L1 bound of the net
  double b = 0.0, c = 0.0;
  double x_margin = 0.0;     // b - sup |x - x0|
  double xdot_margin = 0.0;  // c + C |F2| - sup |xdot - xdot0|
  bool bounds_hold = false;
};

// Estimates the lemma's norms over the boxes I1, I2 around the state at
// u = -eps, computes alpha, integrates over [-eps, alpha - eps], and
// checks the stated bounds.
LemmaBoundsReport verify_lemma_bounds(const ChartManifold& M,
                                      const WaveProfile& f, const DeltaNet& net,
                                      double eps, const GeodesicData& data,
                                      double b, double c,
                                      const IntegratorConfig& cfg,
                                      unsigned seed = 0);

}  // namespace iwave

#endif
