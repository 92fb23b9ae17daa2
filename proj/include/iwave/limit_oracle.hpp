#ifndef IWAVE_LIMIT_ORACLE_HPP
#define IWAVE_LIMIT_ORACLE_HPP

#include "iwave/dynamics.hpp"
#include "iwave/impulse.hpp"
#include "iwave/manifold.hpp"

namespace iwave {

// Closed-form distributional limit of the regularized geodesics: two
// background geodesics glued at u = 0 with a velocity refraction, plus
// the v-limit built from a Heaviside jump and a kink.
struct BrokenGeodesic {
  BackgroundGeodesic pre;    // covers [u_lo, 0]
  BackgroundGeodesic post;   // covers [0, u_hi]
  Vec cross_point;           // x(0)
  Vec cross_velocity_pre;    // xdot(0-)
  Vec refraction;            // (1/2) grad_h f at x(0)
  double v0 = 0.0;
  double vdot0 = 0.0;
  double jump = 0.0;         // -(1/2) f(x(0))
  double kink_slope = 0.0;

  // v(u) = v0 + vdot0 (1+u) + jump H(u) + kink_slope u_+(u), with the
  // right-continuous convention H(0) = 1.
  double v_at(double u) const;
  Vec x_at(double u) const;
};

// Builds the limit for data posed at u = -1, covering [u_lo, u_hi].
// The kink slope follows -sum_j (xdot^j(0) + (1/4) grad_h(f)^j(x(0)))
// d_j f(x(0)); cross data is exposed for reuse.
BrokenGeodesic limit_geodesic(const ChartManifold& M, const WaveProfile& f,
                              const GeodesicData& data, double u_lo = -1.0,
                              double u_hi = 1.0, double tol = 1e-10);

struct LimitValue {
  double v;
  Vec x;
};
LimitValue eval_limit(const BrokenGeodesic& bg, double u);

}  // namespace iwave

#endif
