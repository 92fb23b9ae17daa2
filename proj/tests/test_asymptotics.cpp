#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <cmath>
#include <numeric>

#include "iwave/asymptotics.hpp"
#include "iwave/errors.hpp"

using namespace iwave;

namespace {

Vec vec2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

GeodesicData saddle_data() {
  GeodesicData d;
  d.x0 = vec2(1, 0);
  d.xdot0 = vec2(0, 0);
  return d;
}

WaveProfile saddle() {
  return WaveProfile::from_expression("x^2 - y^2", {"x", "y"});
}

}  // namespace

TEST_CASE("fit_loglog recovers a synthetic power law") {
  std::vector<double> eps = {1e-1, 1e-2, 1e-3, 1e-4};
  std::vector<double> err;
  for (double e : eps) err.push_back(3.0 * std::pow(e, 1.5));
  SlopeFit fit = fit_loglog(eps, err, 0.0);
  CHECK(fit.slope == doctest::Approx(1.5).epsilon(1e-10));
  CHECK(fit.intercept == doctest::Approx(std::log10(3.0)).epsilon(1e-10));
  CHECK(fit.residual <= 1e-12);
  CHECK(fit.n_used == 4);
  CHECK_FALSE(fit.floored);
}

TEST_CASE("fit_loglog floors when too few points are resolved") {
  std::vector<double> eps = {1e-1, 1e-2, 1e-3};
  std::vector<double> err = {1e-12, 1e-12, 1e-12};
  SlopeFit fit = fit_loglog(eps, err, 1e-8);
  CHECK(fit.floored);
  CHECK(fit.n_used == 0);
}

TEST_CASE("geometric grid") {
  std::vector<double> g = geometric_grid(1e-1, 1e-3, 5);
  CHECK(g.size() == 5);
  CHECK(g.front() == doctest::Approx(1e-1));
  CHECK(g.back() == doctest::Approx(1e-3));
  for (std::size_t i = 1; i < g.size(); ++i)
    CHECK(g[i] / g[i - 1] == doctest::Approx(g[1] / g[0]).epsilon(1e-12));
  CHECK_THROWS_AS(geometric_grid(1e-1, 1e-3, 0), ParameterError);
  CHECK_THROWS_AS(geometric_grid(-1.0, 1e-3, 3), ParameterError);
}

TEST_CASE("parallel_for_eps matches the serial reference") {
  const int n = 64;
  std::vector<double> serial(n, 0.0), parallel(n, 0.0);
  auto work = [](int i) {
    double acc = 0.0;
    for (int k = 1; k <= 200; ++k) acc += std::sin(i * 0.1 + k) / k;
    return acc;
  };
  parallel_for_eps(n, 1, [&](int i) { serial[i] = work(i); });
  parallel_for_eps(n, 4, [&](int i) { parallel[i] = work(i); });
  for (int i = 0; i < n; ++i) CHECK(serial[i] == parallel[i]);
}

TEST_CASE("parallel_for_eps propagates worker exceptions") {
  CHECK_THROWS_AS(parallel_for_eps(8, 4,
                                   [](int i) {
                                     if (i == 5)
                                       throw ParameterError("boom");
                                   }),
                  ParameterError);
}

TEST_CASE("bump test function: normalized, compactly supported") {
  TestFunction phi = bump_test_function(-0.5, 0.5);
  CHECK(phi.phi(-0.5) == 0.0);
  CHECK(phi.phi(0.5) == 0.0);
  CHECK(phi.phi(0.7) == 0.0);
  CHECK(phi.phi(0.0) > 0.0);
  double mass = 0.0;
  int n = 20000;
  for (int i = 0; i < n; ++i)
    mass += phi.phi(-0.5 + (i + 0.5) / n) / n;
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
  CHECK_THROWS_AS(bump_test_function(0.5, 0.5), ParameterError);
}

TEST_CASE("sweep: position and velocity-jump errors shrink with eps") {
  auto eu = make_builtin_manifold("euclidean:2");
  DeltaNet net = make_net("bump");
  IntegratorConfig cfg;
  std::vector<double> grid = {1e-1, 3e-2, 1e-2, 3e-3, 1e-3};
  SweepReport rep = sweep(*eu, saddle(), net, saddle_data(), 1.0, grid, cfg);

  CHECK(rep.all_integrated);
  CHECK(rep.entries.size() == grid.size());
  CHECK(rep.monotone_x);
  CHECK(rep.x_slope.slope >= 0.8);
  CHECK(rep.entries.back().sup_x_err <= 1e-3);
  CHECK(rep.entries.back().jump_err <= 1e-2);
  CHECK(rep.entries.back().jump_err < rep.entries.front().jump_err);
  // Pre-impulse v samples (-0.5, -0.25) agree with the reference to
  // integration accuracy throughout.
  for (const auto& e : rep.entries) {
    CHECK(e.v_err[0] <= 1e-8);
    CHECK(e.v_err[1] <= 1e-8);
  }
  CHECK(rep.error_floor == doctest::Approx(100.0 * cfg.rel_tol));
}

TEST_CASE("sweep rejects v sample points at the kink or beyond T") {
  auto eu = make_builtin_manifold("euclidean:2");
  DeltaNet net = make_net("bump");
  IntegratorConfig cfg;
  CHECK_THROWS_AS(sweep(*eu, saddle(), net, saddle_data(), 1.0, {1e-2}, cfg,
                        {0.05}),
                  ParameterError);
  CHECK_THROWS_AS(sweep(*eu, saddle(), net, saddle_data(), 1.0, {1e-2}, cfg,
                        {1.5}),
                  ParameterError);
  CHECK_THROWS_AS(sweep(*eu, saddle(), net, saddle_data(), 1.0, {}, cfg, {},
                        1),
                  ParameterError);
}

TEST_CASE("association pairing converges for a kink-free profile") {
  // f = cos(x) crossed at x = 0: pure v jump of -1/2, no refraction and
  // no kink, so the closed-form reference is exact and the pairing
  // <v_eps - v, phi> must vanish in the limit.
  auto eu = make_builtin_manifold("euclidean:2");
  WaveProfile f = WaveProfile::from_expression("cos(x)", {"x", "y"});
  DeltaNet net = make_net("bump");
  GeodesicData d;
  d.x0 = vec2(0, 0);
  d.xdot0 = vec2(0, 0);
  IntegratorConfig cfg;

  BrokenGeodesic bg = limit_geodesic(*eu, f, d);
  std::vector<Trajectory> trajs;
  for (double eps : {1e-1, 3e-2, 1e-2, 3e-3})
    trajs.push_back(integrate(*eu, f, net, eps, d, 1.0, cfg));

  std::vector<TestFunction> phis = {bump_test_function(-0.5, 0.5),
                                    bump_test_function(-0.8, -0.2)};
  PairingReport rep = association_pairing(trajs, bg, phis);
  CHECK(rep.entries.size() == trajs.size());
  REQUIRE(rep.converges.size() == 2);
  CHECK(rep.converges[0]);
  CHECK(rep.converges[1]);
  CHECK(std::abs(rep.entries.back().value[0]) < 1e-8);

  std::vector<TestFunction> wide = {bump_test_function(-2.0, 2.0)};
  CHECK_THROWS_AS(association_pairing(trajs, bg, wide), ParameterError);
}

TEST_CASE("moderateness probe: derivative growth within the eps powers") {
  auto eu = make_builtin_manifold("euclidean:2");
  DeltaNet net = make_net("bump");
  IntegratorConfig cfg;
  std::vector<double> grid = {1e-1, 3e-2, 1e-2, 3e-3};
  ModeratenessReport rep =
      moderateness_probe(*eu, saddle(), net, saddle_data(), grid, 3, cfg);
  CHECK(rep.all_ok());
  // sup|xdot| stays O(1); each derivative costs at most one power; the
  // profile is nonzero at the crossing so vddot actually grows like
  // 1/eps^2 (the delta' term).
  CHECK(rep.xdot_fit.slope >= -0.2);
  CHECK(rep.xddot_fit.slope <= -0.5);
  CHECK(rep.vddot_fit.slope <= -1.6);
  CHECK(rep.vddot_fit.slope >= -2.2);
  CHECK_THROWS_AS(
      moderateness_probe(*eu, saddle(), net, saddle_data(), grid, 4, cfg),
      ParameterError);
}

TEST_CASE("stability probe: eps^q perturbations stay order q and dominated") {
  auto eu = make_builtin_manifold("euclidean:2");
  DeltaNet net = make_net("bump");
  IntegratorConfig cfg;
  std::vector<double> grid = {1e-1, 3e-2, 1e-2};
  StabilityReport rep =
      stability_probe(*eu, saddle(), net, saddle_data(), 2, 1.0, grid, cfg);
  CHECK(rep.q == 2);
  CHECK(rep.c3 >= 0.0);
  CHECK(rep.c4 > 0.0);
  CHECK(rep.order_ok);
  CHECK(rep.dominated);
  for (const auto& e : rep.entries) {
    CHECK(e.psi_sup >= 0.0);
    CHECK(e.bound > 0.0);
  }
  CHECK_THROWS_AS(
      stability_probe(*eu, saddle(), net, saddle_data(), 0, 1.0, grid, cfg),
      ParameterError);
  CHECK_THROWS_AS(
      stability_probe(*eu, saddle(), net, saddle_data(), 9, 1.0, grid, cfg),
      ParameterError);
}

TEST_CASE("gronwall-bykov majorant") {
  CHECK(gronwall_bykov_bound(1, 1, 1, 1, 0, 1) ==
        doctest::Approx(std::exp(3.5)).epsilon(1e-12));
  CHECK(gronwall_bykov_bound(2, 0, 0, 5, 0.1, 1) == doctest::Approx(2.0));
  CHECK(gronwall_bykov_bound(1, 1, 1, 1, 0.5, 1) >
        gronwall_bykov_bound(1, 1, 1, 1, 0.0, 1));
  CHECK_THROWS_AS(gronwall_bykov_bound(1, 1, 1, 1, 0.5, 0.1), ParameterError);
}
