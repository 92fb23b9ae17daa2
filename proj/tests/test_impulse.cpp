#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "iwave/errors.hpp"
#include "iwave/impulse.hpp"
#include "iwave/quadrature.hpp"

using namespace iwave;

TEST_CASE("bump net normalization") {
  DeltaNet net = make_net("bump");
  // Normalizing constant c with c * I0 = 1 where
  // I0 = int_{-1}^{1} exp(-1/(1-t^2)) dt ~ 0.443994.
  CHECK(net.mass() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(net.l1_norm() == doctest::Approx(1.0).epsilon(1e-9));
  // rho(0) = c * e^{-1}, c ~ 2.25228.
  CHECK(net.eval(1.0, 0.0) == doctest::Approx(2.25228 * std::exp(-1.0)).epsilon(1e-4));
  // Scaling: delta_eps(0) = rho(0)/eps.
  CHECK(net.eval(0.5, 0.0) == doctest::Approx(2.0 * net.eval(1.0, 0.0)).epsilon(1e-12));
  CHECK(net.eval(0.5, 0.0) == doctest::Approx(1.6573).epsilon(1e-4));
}

TEST_CASE("support is hard-zero outside (-eps, eps)") {
  for (const char* name : {"bump", "bump-asym", "bump-signed"}) {
    DeltaNet net = make_net(name);
    for (double eps : {1.0, 0.25, 1e-3}) {
      CHECK(net.eval(eps, eps) == 0.0);
      CHECK(net.eval(eps, -eps) == 0.0);
      CHECK(net.eval(eps, 1.5 * eps) == 0.0);
      CHECK(net.eval(eps, -2.0 * eps) == 0.0);
      CHECK(net.deriv(eps, 1.5 * eps) == 0.0);
    }
  }
}

TEST_CASE("eps outside (0,1] is a parameter error") {
  DeltaNet net = make_net("bump");
  CHECK_THROWS_AS(net.eval(0.0, 0.0), ParameterError);
  CHECK_THROWS_AS(net.eval(-0.1, 0.0), ParameterError);
  CHECK_THROWS_AS(net.eval(1.5, 0.0), ParameterError);
}

TEST_CASE("mass is eps-independent under pure scaling") {
  for (const char* name : {"bump", "bump-asym", "bump-signed"}) {
    DeltaNet net = make_net(name);
    for (double eps : {1.0, 0.3, 1e-2}) {
      double m = net.mass_partial(eps, -eps, eps, 1e-12);
      CHECK(m == doctest::Approx(1.0).epsilon(1e-8));
    }
  }
}

TEST_CASE("derivative matches finite differences of eval") {
  DeltaNet net = make_net("bump");
  double eps = 0.2;
  for (double u : {-0.15, -0.05, 0.03, 0.11}) {
    double h = 1e-6;
    double fd = (net.eval(eps, u + h) - net.eval(eps, u - h)) / (2 * h);
    CHECK(net.deriv(eps, u) == doctest::Approx(fd).epsilon(1e-5));
  }
}

TEST_CASE("asymmetric net has off-center support") {
  DeltaNet net = make_net("bump-asym");
  double eps = 1.0;
  CHECK(net.eval(eps, 0.1) > 0.0);
  CHECK(net.eval(eps, 0.3) == 0.0);   // support ends at 0.2
  CHECK(net.eval(eps, -0.9) > 0.0);
  CHECK(net.mass() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("signed net: unit mass but larger L1 norm") {
  DeltaNet net = make_net("bump-signed");
  CHECK(net.mass() == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(net.l1_norm() == doctest::Approx(1.6).epsilon(1e-8));
  // It actually takes negative values somewhere.
  bool has_negative = false;
  for (double u = -0.99; u < 1.0; u += 0.01)
    if (net.eval(1.0, u) < 0) has_negative = true;
  CHECK(has_negative);
}

TEST_CASE("validate_strict accepts the shipped nets") {
  std::vector<double> grid = {0.5, 0.1, 0.05, 0.01, 0.005, 0.001};
  for (const char* name : {"bump", "bump-asym", "bump-signed"}) {
    DeltaFamily fam = make_family(name);
    ValidationReport rep = validate_strict(fam, grid);
    CAPTURE(name);
    CHECK(rep.support.pass);
    CHECK(rep.mass.pass);
    CHECK(rep.l1_bound.pass);
    CHECK(rep.all_pass());
    CHECK(rep.mass_limit == doctest::Approx(1.0).epsilon(1e-6));
  }
  DeltaFamily bump = make_family("bump");
  ValidationReport rep = validate_strict(bump, grid);
  CHECK(rep.witnessed_c >= 1.0 - 1e-6);
  CHECK(rep.witnessed_c <= 1.0 + 1e-6);
}

TEST_CASE("validate_strict rejects each deliberate non-example") {
  std::vector<double> grid = {0.5, 0.1, 0.05, 0.01, 0.005, 0.001};

  ValidationReport sup = validate_strict(make_family("bad-support"), grid);
  CHECK_FALSE(sup.support.pass);
  CHECK_FALSE(sup.all_pass());

  ValidationReport mass = validate_strict(make_family("bad-mass"), grid);
  CHECK(mass.support.pass);
  CHECK_FALSE(mass.mass.pass);

  ValidationReport l1 = validate_strict(make_family("bad-l1"), grid);
  CHECK(l1.support.pass);
  CHECK(l1.mass.pass);
  CHECK_FALSE(l1.l1_bound.pass);
}

TEST_CASE("unknown net name") {
  CHECK_THROWS_AS(make_net("no-such-net"), ConfigError);
}

TEST_CASE("zero wave profile shortcut") {
  WaveProfile z = WaveProfile::zero(2);
  CHECK(z.is_zero());
  Vec x(2);
  x << 1.0, -2.0;
  CHECK(z(x) == 0.0);
  CHECK(z.partials(x).norm() == 0.0);
}
