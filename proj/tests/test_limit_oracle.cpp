#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "iwave/errors.hpp"
#include "iwave/limit_oracle.hpp"

using namespace iwave;

namespace {

Vec vec2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("flat saddle profile: cross data, jump, refraction, kink") {
  auto eu = make_builtin_manifold("euclidean:2");
  WaveProfile f = WaveProfile::from_expression("x^2 - y^2", {"x", "y"});
  GeodesicData d;
  d.x0 = vec2(1, 0);
  d.xdot0 = vec2(0, 0);
  BrokenGeodesic bg = limit_geodesic(*eu, f, d);

  CHECK((bg.cross_point - vec2(1, 0)).norm() <= 1e-9);
  CHECK((bg.cross_velocity_pre - vec2(0, 0)).norm() <= 1e-9);
  CHECK((bg.refraction - vec2(1, 0)).norm() <= 1e-9);
  CHECK(bg.jump == doctest::Approx(-0.5));
  // Kink slope as implemented: -(xdot(0) + grad/4) . grad f
  //   = -((0,0) + (0.5,0)) . (2,0) = -1.
  CHECK(bg.kink_slope == doctest::Approx(-1.0));
}

TEST_CASE("v_at piecewise structure with H(0) = 1") {
  auto eu = make_builtin_manifold("euclidean:2");
  WaveProfile f = WaveProfile::from_expression("x^2 - y^2", {"x", "y"});
  GeodesicData d;
  d.v0 = 0.25;
  d.vdot0 = 0.5;
  d.x0 = vec2(1, 0);
  d.xdot0 = vec2(0, 0);
  BrokenGeodesic bg = limit_geodesic(*eu, f, d);

  CHECK(bg.v_at(-1.0) == doctest::Approx(0.25));
  CHECK(bg.v_at(-0.5) == doctest::Approx(0.25 + 0.5 * 0.5));
  // Just left of 0: no jump yet.
  CHECK(bg.v_at(-1e-12) == doctest::Approx(0.25 + 0.5).epsilon(1e-9));
  // At 0 the jump has landed (right-continuous convention).
  CHECK(bg.v_at(0.0) == doctest::Approx(0.25 + 0.5 - 0.5));
  // Afterwards the kink slope accrues.
  CHECK(bg.v_at(1.0) == doctest::Approx(0.25 + 0.5 * 2.0 - 0.5 - 1.0));
}

TEST_CASE("x_at glues pre and post geodesics continuously") {
  auto eu = make_builtin_manifold("euclidean:2");
  WaveProfile f = WaveProfile::from_expression("x^2 - y^2", {"x", "y"});
  GeodesicData d;
  d.x0 = vec2(1, 0);
  d.xdot0 = vec2(0.3, -0.2);
  BrokenGeodesic bg = limit_geodesic(*eu, f, d);

  // Pre side: straight line from the data.
  CHECK((bg.x_at(-0.5) - (d.x0 + 0.5 * d.xdot0)).norm() <= 1e-9);
  // Continuity at 0 from both sides.
  CHECK((bg.x_at(-1e-12) - bg.x_at(0.0)).norm() <= 1e-9);
  // Post side: velocity refracted by (1/2) grad f at x(0) = (1.3, -0.2):
  // grad = (2.6, 0.4), post velocity = (0.3, -0.2) + (1.3, 0.2).
  Vec post_v = bg.x_at(1.0) - bg.x_at(0.5);
  CHECK(post_v[0] == doctest::Approx(0.5 * (0.3 + 1.3)).epsilon(1e-8));
  CHECK(post_v[1] == doctest::Approx(0.5 * (-0.2 + 0.2)).epsilon(1e-8));
}

TEST_CASE("zero profile: limit is the unbroken background geodesic") {
  auto eu = make_builtin_manifold("euclidean:2");
  WaveProfile f = WaveProfile::zero(2);
  GeodesicData d;
  d.v0 = 1.0;
  d.vdot0 = -0.5;
  d.x0 = vec2(0, 0);
  d.xdot0 = vec2(1, 1);
  BrokenGeodesic bg = limit_geodesic(*eu, f, d);
  CHECK(bg.jump == 0.0);
  CHECK(bg.kink_slope == 0.0);
  CHECK(bg.refraction.norm() == 0.0);
  CHECK(bg.v_at(1.0) == doctest::Approx(1.0 - 0.5 * 2.0));
  CHECK((bg.x_at(1.0) - vec2(2, 2)).norm() <= 1e-9);
}

TEST_CASE("sphere scenario: crossing and refraction on the equator") {
  auto sp = make_builtin_manifold("sphere");
  WaveProfile f = WaveProfile::from_expression("cos(theta)", {"theta", "phi"});
  GeodesicData d;
  d.x0 = vec2(M_PI / 2, -1.0);
  d.xdot0 = vec2(0.0, 1.0);
  BrokenGeodesic bg = limit_geodesic(*sp, f, d);
  CHECK(bg.cross_point[0] == doctest::Approx(M_PI / 2).epsilon(1e-8));
  CHECK(bg.cross_point[1] == doctest::Approx(0.0).epsilon(1e-8));
  // grad_h cos(theta) at the equator is (-1, 0).
  CHECK(bg.refraction[0] == doctest::Approx(-0.5).epsilon(1e-8));
  CHECK(std::abs(bg.refraction[1]) <= 1e-8);
  // f = 0 on the equator, so no v jump; kink picks up the xdot term only:
  // -(xdot + grad/4) . df = -((0,1) + (-1/4,0)) . (-1,0) = -1/4 ... sign:
  // df = (-sin theta, 0) = (-1, 0); dot = (0 - 1/4)(-1) = 1/4; kink = -1/4.
  CHECK(bg.jump == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(bg.kink_slope == doctest::Approx(-0.25).epsilon(1e-8));
}

TEST_CASE("eval_limit range checking") {
  auto eu = make_builtin_manifold("euclidean:2");
  WaveProfile f = WaveProfile::zero(2);
  GeodesicData d;
  d.x0 = vec2(0, 0);
  d.xdot0 = vec2(1, 0);
  BrokenGeodesic bg = limit_geodesic(*eu, f, d, -1.0, 1.0);
  LimitValue lv = eval_limit(bg, 0.5);
  CHECK(lv.x[0] == doctest::Approx(1.5));
  CHECK_THROWS_AS(eval_limit(bg, 1.5), RangeError);
  CHECK_THROWS_AS(eval_limit(bg, -1.5), RangeError);
}
