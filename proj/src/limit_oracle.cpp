#include "iwave/limit_oracle.hpp"

#include <cmath>

#include "iwave/errors.hpp"

namespace iwave {

double BrokenGeodesic::v_at(double u) const {
  double w = v0 + vdot0 * (1.0 + u);
  if (u < 0.0) return w;
  return w + jump + kink_slope * u;  // H(0) = 1
}

Vec BrokenGeodesic::x_at(double u) const {
  if (u < 0.0) return pre.at(u).x;
  if (u > 0.0) return post.at(u).x;
  return cross_point;
}

BrokenGeodesic limit_geodesic(const ChartManifold& M, const WaveProfile& f,
                              const GeodesicData& data, double u_lo,
                              double u_hi, double tol) {
  if (data.u0 >= 0.0)
    throw ParameterError("limit_geodesic: data must be posed before u = 0");
  M.require_in_domain(data.x0);

  BrokenGeodesic bg;
  bg.v0 = data.v0;
  bg.vdot0 = data.vdot0;
  bg.pre = background_geodesic_span(M, data.x0, data.xdot0, data.u0,
                                    std::min(u_lo, data.u0), 0.0, tol);

  BackgroundGeodesic::State cross = bg.pre.at(0.0);
  bg.cross_point = cross.x;
  bg.cross_velocity_pre = cross.xdot;
  Vec grad = M.grad_h(f, cross.x);
  bg.refraction = 0.5 * grad;
  bg.jump = -0.5 * f(cross.x);
  Vec df = f.partials(cross.x);
  bg.kink_slope = -(cross.xdot + 0.25 * grad).dot(df);

  Vec post_vel = cross.xdot + bg.refraction;
  bg.post = background_geodesic(M, cross.x, post_vel, 0.0,
                                std::max(u_hi, 0.0), tol);
  return bg;
}

LimitValue eval_limit(const BrokenGeodesic& bg, double u) {
  double lo = bg.pre.u_lo(), hi = bg.post.u_hi();
  double slack = 1e-12 * (1.0 + std::abs(lo) + std::abs(hi));
  if (u < lo - slack || u > hi + slack)
    throw RangeError("eval_limit: u outside integrated range");
  return LimitValue{bg.v_at(u), bg.x_at(u)};
}

}  // namespace iwave
