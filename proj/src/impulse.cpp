#include "iwave/impulse.hpp"

#include <algorithm>
#include <cmath>

#include "iwave/errors.hpp"
#include "iwave/quadrature.hpp"

namespace iwave {

namespace {

// Unnormalized standard bump on (-1,1).
double bump_raw(double t) {
  if (std::abs(t) >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - t * t));
}

double dbump_raw(double t) {
  if (std::abs(t) >= 1.0) return 0.0;
  double s = 1.0 - t * t;
  return bump_raw(t) * (-2.0 * t / (s * s));
}

void require_eps(double eps) {
  if (!(eps > 0.0) || eps > 1.0)
    throw ParameterError("delta net: eps must lie in (0, 1], got " +
                         std::to_string(eps));
}

}  // namespace

DeltaNet::DeltaNet(Mother mother, double quad_tol)
    : mother_(std::move(mother)), label_(mother_.label) {
  if (mother_.support_lo < -1.0 || mother_.support_hi > 1.0 ||
      mother_.support_lo >= mother_.support_hi)
    throw ParameterError("delta net: mother support must lie inside (-1, 1)");
  mass_ = integrate_adaptive(mother_.rho, mother_.support_lo,
                             mother_.support_hi, quad_tol);
  l1_ = integrate_adaptive([this](double t) { return std::abs(mother_.rho(t)); },
                           mother_.support_lo, mother_.support_hi, quad_tol);
}

double DeltaNet::eval(double eps, double u) const {
  require_eps(eps);
  if (std::abs(u) >= eps) return 0.0;  // hard zero outside the support
  double t = u / eps;
  if (t <= mother_.support_lo || t >= mother_.support_hi) return 0.0;
  return mother_.rho(t) / eps;
}

double DeltaNet::deriv(double eps, double u) const {
  require_eps(eps);
  if (std::abs(u) >= eps) return 0.0;
  double t = u / eps;
  if (t <= mother_.support_lo || t >= mother_.support_hi) return 0.0;
  return mother_.drho(t) / (eps * eps);
}

double DeltaNet::mass_partial(double eps, double a, double b,
                              double tol) const {
  require_eps(eps);
  if (a > b) throw ParameterError("mass_partial: a > b");
  double lo = std::max(a, eps * mother_.support_lo);
  double hi = std::min(b, eps * mother_.support_hi);
  if (lo >= hi) return 0.0;
  return integrate_adaptive([this, eps](double u) { return eval(eps, u); }, lo,
                            hi, tol);
}

std::function<double(double, double)> DeltaNet::family() const {
  DeltaNet copy = *this;
  return [copy](double eps, double u) { return copy.eval(eps, u); };
}

ValidationReport validate_strict(const DeltaFamily& family,
                                 const std::vector<double>& eps_list,
                                 double quad_tol) {
  if (eps_list.empty())
    throw ParameterError("validate_strict: empty eps list");
  for (double e : eps_list) require_eps(e);

  std::vector<double> grid = eps_list;
  std::sort(grid.begin(), grid.end(), std::greater<>());

  ValidationReport rep;
  rep.label = family.label;

  // (i) support: sample outside (-eps, eps); every value must vanish.
  rep.support.pass = true;
  for (double eps : grid) {
    for (int s = 0; s < 200 && rep.support.pass; ++s) {
      double r = eps * (1.0 + 1e-9 + 3.0 * s / 199.0);
      if (family.eval(eps, r) != 0.0 || family.eval(eps, -r) != 0.0) {
        rep.support.pass = false;
        rep.support.detail = "nonzero value at |u|=" + std::to_string(r) +
                             " for eps=" + std::to_string(eps);
      }
    }
  }
  if (rep.support.pass) rep.support.detail = "supp inside (-eps, eps)";

  // Integrals; support may exceed (-eps, eps) for non-examples, so
  // integrate over a generous window.
  std::vector<double> masses, l1s;
  for (double eps : grid) {
    double w = 4.0 * eps;
    auto at = [&](double u) { return family.eval(eps, u); };
    masses.push_back(
        integrate_with_breakpoints(at, -w, w, {-eps, 0.0, eps}, quad_tol * 1e-2));
    l1s.push_back(integrate_with_breakpoints(
        [&](double u) { return std::abs(at(u)); }, -w, w, {-eps, 0.0, eps},
        quad_tol * 1e-2));
  }

  // (ii) mass -> 1: judged at the smallest eps of the grid.
  rep.mass_limit = masses.back();
  rep.mass.pass = std::abs(rep.mass_limit - 1.0) <= quad_tol;
  rep.mass.detail = "integral at smallest eps = " + std::to_string(rep.mass_limit);

  // (iii) uniform L1 bound: the witnessed constant is the max over the
  // grid; an L1 norm that keeps growing as eps shrinks is flagged as
  // unbounded.
  rep.witnessed_c = *std::max_element(l1s.begin(), l1s.end());
  bool growing = l1s.size() >= 2 && l1s.back() > 1.5 * l1s.front() &&
                 std::is_sorted(l1s.begin(), l1s.end());
  rep.l1_bound.pass = !growing;
  rep.l1_bound.detail =
      growing ? "L1 norm grows from " + std::to_string(l1s.front()) + " to " +
                    std::to_string(l1s.back()) + " as eps shrinks"
              : "witnessed C = " + std::to_string(rep.witnessed_c);
  return rep;
}

ValidationReport validate_strict(const DeltaNet& net,
                                 const std::vector<double>& eps_list,
                                 double quad_tol) {
  return validate_strict(DeltaFamily{net.label(), net.family()}, eps_list,
                         quad_tol);
}

namespace {

Mother scaled_bump(std::string label, double center, double halfwidth,
                   double amplitude) {
  Mother m;
  m.label = std::move(label);
  m.rho = [=](double t) { return amplitude * bump_raw((t - center) / halfwidth); };
  m.drho = [=](double t) {
    return amplitude / halfwidth * dbump_raw((t - center) / halfwidth);
  };
  m.support_lo = center - halfwidth;
  m.support_hi = center + halfwidth;
  return m;
}

double bump_mass() {
  static const double mass =
      integrate_adaptive(bump_raw, -1.0, 1.0, 1e-13);
  return mass;
}

}  // namespace

DeltaNet make_net(const std::string& name) {
  const double I = bump_mass();  // ~0.443994
  if (name == "bump") return DeltaNet(scaled_bump("bump", 0.0, 1.0, 1.0 / I));
  if (name == "bump-asym") {
    // Support (-1, 0.2).
    double hw = 0.6, c = -0.4;
    return DeltaNet(scaled_bump("bump-asym", c, hw, 1.0 / (hw * I)));
  }
  if (name == "bump-signed") {
    // Positive lobe on (-1,0), negative lobe on (0,1); mass 1, L1 = 1.6.
    double hw = 0.5;
    double a = 1.3 / (hw * I), b = 0.3 / (hw * I);
    Mother m;
    m.label = "bump-signed";
    m.rho = [=](double t) {
      return a * bump_raw((t + 0.5) / hw) - b * bump_raw((t - 0.5) / hw);
    };
    m.drho = [=](double t) {
      return a / hw * dbump_raw((t + 0.5) / hw) -
             b / hw * dbump_raw((t - 0.5) / hw);
    };
    return DeltaNet(m);
  }
  throw ConfigError("delta net: unknown name '" + name + "'");
}

DeltaFamily make_family(const std::string& name) {
  if (name == "bad-support") {
    // Scaling family whose support is (-2 eps, 2 eps).
    const double I = bump_mass();
    return DeltaFamily{"bad-support", [I](double eps, double u) {
                         double w = 2.0 * eps;
                         return bump_raw(u / w) / (I * w);
                       }};
  }
  if (name == "bad-mass") {
    // Unnormalized: integral 2 for every eps.
    const double I = bump_mass();
    return DeltaFamily{"bad-mass", [I](double eps, double u) {
                         if (std::abs(u) >= eps) return 0.0;
                         return 2.0 * bump_raw(u / eps) / (I * eps);
                       }};
  }
  if (name == "bad-l1") {
    // Signed family with mass 1 but L1 norm 1 + 2/sqrt(eps).
    const double I = bump_mass();
    return DeltaFamily{"bad-l1", [I](double eps, double u) {
                         if (std::abs(u) >= eps) return 0.0;
                         double s = 1.0 / std::sqrt(eps);
                         double hw = 0.5;
                         double plus = bump_raw((u / eps + 0.5) / hw) / (hw * I);
                         double minus = bump_raw((u / eps - 0.5) / hw) / (hw * I);
                         return ((1.0 + s) * plus - s * minus) / eps;
                       }};
  }
  DeltaNet net = make_net(name);
  return DeltaFamily{net.label(), net.family()};
}

WaveProfile::WaveProfile(std::string label, std::function<double(const Vec&)> f,
                         std::function<Vec(const Vec&)> partials,
                         double fd_step)
    : label_(std::move(label)),
      f_(std::move(f)),
      partials_(std::move(partials)),
      fd_step_(fd_step) {}

Vec WaveProfile::partials(const Vec& x) const {
  if (partials_) return partials_(x);
  Vec g(x.size());
  for (int i = 0; i < x.size(); ++i) {
    Vec xp = x, xm = x;
    xp[i] += fd_step_;
    xm[i] -= fd_step_;
    g[i] = (f_(xp) - f_(xm)) / (2.0 * fd_step_);
  }
  return g;
}

WaveProfile WaveProfile::from_expression(const std::string& expr,
                                         const std::vector<std::string>& coords) {
  Expr e = Expr::parse(expr, coords);
  auto f = [e](const Vec& x) {
    return e.eval(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())));
  };
  return WaveProfile(expr, f);
}

WaveProfile WaveProfile::zero(int dim) {
  WaveProfile p("0", [](const Vec&) { return 0.0; },
                [dim](const Vec&) { return Vec::Zero(dim); });
  p.zero_ = true;
  return p;
}

}  // namespace iwave
