#include "iwave/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "iwave/errors.hpp"

namespace iwave {

void IntegratorConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
    throw ParameterError("integrator: tolerances must be positive");
  if (kappa < 4.0)
    throw ParameterError("integrator: kappa must be >= 4");
  if (!(max_step > 0.0))
    throw ParameterError("integrator: max_step must be positive");
}

namespace {

void require_eps(double eps, const IntegratorConfig& cfg) {
  if (!(eps > 0.0) || eps > 1.0)
    throw ParameterError("integrate: eps must lie in (0, 1]");
  if (eps < cfg.eps_min)
    throw ParameterError("integrate: eps below configured minimum " +
                         std::to_string(cfg.eps_min));
}

// State layout for the p-form: [v, p, x(0..n-1), xdot(0..n-1)].
OdeRhs make_rhs(const ChartManifold& M, const WaveProfile& f,
                const DeltaNet& net, double eps, const Forcing* forcing) {
  const int n = M.dim();
  return [&M, &f, &net, eps, forcing, n](double u, std::span<const double> y,
                                         std::span<double> dy) {
    Vec x = Eigen::Map<const Vec>(y.data() + 2, n);
    Vec xd = Eigen::Map<const Vec>(y.data() + 2 + n, n);
    if (!M.in_domain(x))
      throw ChartExitError(M.name() + ": trajectory left chart domain", u);
    double d = net.eval(eps, u);
    double fx = 0.0;
    Vec df;
    if (!f.is_zero() && d != 0.0) {
      fx = f(x);
      df = f.partials(x);
    } else {
      df = Vec::Zero(n);
    }
    double p = y[1];
    dy[0] = p - 0.5 * fx * d;                 // v'
    dy[1] = -0.5 * df.dot(xd) * d;            // p'
    Christoffel gamma = M.christoffel_at(x);
    Vec acc(n);
    for (int k = 0; k < n; ++k) acc[k] = -xd.dot(gamma[k] * xd);
    if (d != 0.0) acc += 0.5 * d * (M.inverse_metric_at(x) * df);
    if (forcing) {
      if (forcing->a) dy[1] += forcing->a(u);
      if (forcing->b) {
        double b = forcing->b(u);
        for (int k = 0; k < n; ++k) acc[k] += b;
      }
    }
    for (int k = 0; k < n; ++k) {
      dy[2 + k] = xd[k];
      dy[2 + n + k] = acc[k];
    }
  };
}

OdeOptions make_opts(const ChartManifold& M, double eps,
                     const IntegratorConfig& cfg) {
  const int n = M.dim();
  OdeOptions opts;
  opts.rel_tol = cfg.rel_tol;
  opts.abs_tol = cfg.abs_tol;
  opts.max_step = cfg.max_step;
  opts.max_steps = cfg.max_steps;
  opts.mandatory_points = {-eps, eps};
  double cap = eps / cfg.kappa;
  opts.step_cap = [eps, cap, max_step = cfg.max_step](double u) {
    return (u >= -eps && u < eps) ? cap : max_step;
  };
  opts.check = [&M, n](double u, std::span<const double> y) {
    Vec x = Eigen::Map<const Vec>(y.data() + 2, n);
    if (!M.in_domain(x))
      throw ChartExitError(M.name() + ": trajectory left chart domain", u);
  };
  return opts;
}

std::vector<double> pack_state(const GeodesicData& data, double p0) {
  const int n = static_cast<int>(data.x0.size());
  std::vector<double> y(2 * n + 2);
  y[0] = data.v0;
  y[1] = p0;
  for (int i = 0; i < n; ++i) {
    y[2 + i] = data.x0[i];
    y[2 + n + i] = data.xdot0[i];
  }
  return y;
}

}  // namespace

Trajectory::Trajectory(const ChartManifold* M, WaveProfile f, DeltaNet net,
                       double eps, GeodesicData data, PiecewiseDense dense,
                       OdeStats stats)
    : M_(M),
      f_(std::move(f)),
      net_(std::move(net)),
      eps_(eps),
      dim_(M->dim()),
      data_(std::move(data)),
      dense_(std::move(dense)),
      stats_(stats) {
  const int n_samples = 129;
  double lo = dense_.u_lo(), hi = dense_.u_hi();
  samples_.reserve(n_samples);
  for (int s = 0; s < n_samples; ++s)
    samples_.push_back(at(lo + (hi - lo) * s / (n_samples - 1)));
}

GeodesicState Trajectory::at(double u) const {
  std::vector<double> y = dense_.eval(u);
  GeodesicState s;
  s.u = u;
  s.v = y[0];
  s.p = y[1];
  s.x = Eigen::Map<const Vec>(y.data() + 2, dim_);
  s.xdot = Eigen::Map<const Vec>(y.data() + 2 + dim_, dim_);
  return s;
}

double Trajectory::vdot_at(double u) const {
  GeodesicState s = at(u);
  return s.p - 0.5 * f_(s.x) * net_->eval(eps_, u);
}

double Trajectory::vddot_at(const GeodesicState& s) const {
  double d = net_->eval(eps_, s.u);
  double dd = net_->deriv(eps_, s.u);
  return -d * f_.partials(s.x).dot(s.xdot) - 0.5 * f_(s.x) * dd;
}

Vec Trajectory::xddot_at(const GeodesicState& s) const {
  StateDerivative der = rhs(*M_, f_, *net_, eps_, s);
  return der.xddot;
}

Vec Trajectory::x3dot_at(const GeodesicState& s) const {
  const int n = dim_;
  const double h = M_->fd_step();
  double d = net_->eval(eps_, s.u);
  double dd = net_->deriv(eps_, s.u);

  Christoffel gamma = M_->christoffel_at(s.x);
  Vec acc = xddot_at(s);

  // -(d_l Gamma^k_ij) xdot^l xdot^i xdot^j  and  d_l(grad f)^k xdot^l
  // via central differences along each coordinate.
  Vec third = Vec::Zero(n);
  for (int l = 0; l < n; ++l) {
    Vec xp = s.x, xm = s.x;
    xp[l] += h;
    xm[l] -= h;
    Christoffel gp = M_->christoffel_at(xp);
    Christoffel gm = M_->christoffel_at(xm);
    for (int k = 0; k < n; ++k)
      third[k] += -s.xdot[l] * s.xdot.dot(((gp[k] - gm[k]) / (2.0 * h)) * s.xdot);
    if (d != 0.0) {
      Vec grad_p = M_->inverse_metric_at(xp) * f_.partials(xp);
      Vec grad_m = M_->inverse_metric_at(xm) * f_.partials(xm);
      third += 0.5 * d * s.xdot[l] * (grad_p - grad_m) / (2.0 * h);
    }
  }
  for (int k = 0; k < n; ++k) third[k] += -2.0 * acc.dot(gamma[k] * s.xdot);
  if (dd != 0.0)
    third += 0.5 * dd * (M_->inverse_metric_at(s.x) * f_.partials(s.x));
  return third;
}

StateDerivative rhs(const ChartManifold& M, const WaveProfile& f,
                    const DeltaNet& net, double eps, const GeodesicState& s) {
  M.require_in_domain(s.x);
  const int n = M.dim();
  std::vector<double> y(2 * n + 2), dy(2 * n + 2);
  y[0] = s.v;
  y[1] = s.p;
  for (int i = 0; i < n; ++i) {
    y[2 + i] = s.x[i];
    y[2 + n + i] = s.xdot[i];
  }
  make_rhs(M, f, net, eps, nullptr)(s.u, y, dy);
  StateDerivative der;
  der.vdot = dy[0];
  der.pdot = dy[1];
  der.xdot = Eigen::Map<const Vec>(dy.data() + 2, n);
  der.xddot = Eigen::Map<const Vec>(dy.data() + 2 + n, n);
  return der;
}

Trajectory integrate(const ChartManifold& M, const WaveProfile& f,
                     const DeltaNet& net, double eps, const GeodesicData& data,
                     double u_end, const IntegratorConfig& cfg,
                     const Forcing* forcing) {
  return integrate_span(M, f, net, eps, data, data.u0, u_end, cfg, forcing);
}

Trajectory integrate_span(const ChartManifold& M, const WaveProfile& f,
                          const DeltaNet& net, double eps,
                          const GeodesicData& data, double u_lo, double u_hi,
                          const IntegratorConfig& cfg, const Forcing* forcing) {
  cfg.validate();
  require_eps(eps, cfg);
  M.require_in_domain(data.x0);
  if (data.u0 > -eps)
    throw ParameterError("integrate: data must be posed at u0 <= -eps");
  if (u_hi <= data.u0 && u_lo >= data.u0)
    throw ParameterError("integrate: empty integration range");

  // delta_eps(u0) = 0 ahead of the impulse, so p(u0) = vdot0.
  std::vector<double> y0 = pack_state(data, data.vdot0);
  OdeRhs sys = make_rhs(M, f, net, eps, forcing);
  OdeOptions opts = make_opts(M, eps, cfg);

  PiecewiseDense dense;
  OdeStats stats;
  auto merge = [&stats](const OdeStats& s) {
    stats.n_accepted += s.n_accepted;
    stats.n_rejected += s.n_rejected;
    stats.n_rhs += s.n_rhs;
    stats.min_step = std::min(stats.min_step, s.min_step);
  };
  if (u_lo < data.u0) {
    DenseSolution back = integrate_dopri5(sys, y0, data.u0, u_lo, opts);
    merge(back.stats());
    dense.add(std::move(back));
  }
  if (u_hi > data.u0) {
    DenseSolution fwd = integrate_dopri5(sys, y0, data.u0, u_hi, opts);
    merge(fwd.stats());
    dense.add(std::move(fwd));
  }
  return Trajectory(&M, f, net, eps, data, std::move(dense), stats);
}

Trajectory integrate_raw_form(const ChartManifold& M, const WaveProfile& f,
                              const DeltaNet& net, double eps,
                              const GeodesicData& data, double u_end,
                              const IntegratorConfig& cfg) {
  cfg.validate();
  require_eps(eps, cfg);
  const int n = M.dim();
  // State layout [v, vdot, x, xdot]; vdot == p off the impulse, so the
  // Trajectory wrapper (which interprets slot 1 as p) stays consistent at
  // the sampled off-impulse points used by cross-checks.
  OdeRhs sys = [&M, &f, &net, eps, n](double u, std::span<const double> y,
                                      std::span<double> dy) {
    Vec x = Eigen::Map<const Vec>(y.data() + 2, n);
    Vec xd = Eigen::Map<const Vec>(y.data() + 2 + n, n);
    if (!M.in_domain(x))
      throw ChartExitError(M.name() + ": trajectory left chart domain", u);
    double d = net.eval(eps, u);
    double dd = net.deriv(eps, u);
    Vec df = f.partials(x);
    dy[0] = y[1];
    dy[1] = -d * df.dot(xd) - 0.5 * f(x) * dd;
    Christoffel gamma = M.christoffel_at(x);
    for (int k = 0; k < n; ++k) {
      dy[2 + k] = xd[k];
      dy[2 + n + k] = -xd.dot(gamma[k] * xd);
    }
    if (d != 0.0) {
      Vec acc = 0.5 * d * (M.inverse_metric_at(x) * df);
      for (int k = 0; k < n; ++k) dy[2 + n + k] += acc[k];
    }
  };
  std::vector<double> y0 = pack_state(data, data.vdot0);
  OdeOptions opts = make_opts(M, eps, cfg);
  DenseSolution sol = integrate_dopri5(sys, y0, data.u0, u_end, opts);
  OdeStats stats = sol.stats();
  PiecewiseDense dense;
  dense.add(std::move(sol));
  return Trajectory(&M, f, net, eps, data, std::move(dense), stats);
}

double existence_interval_alpha(double b, double c, double f1_sup,
                                double f2_norm, double k_sup, double big_c,
                                double xdot0_norm) {
  const double inf = std::numeric_limits<double>::infinity();
  double den1 = xdot0_norm + f1_sup + big_c * f2_norm + k_sup;
  double den2 = f1_sup + k_sup;
  double r1 = den1 > 0.0 ? b / den1 : inf;
  double r2 = den2 > 0.0 ? c / den2 : inf;
  return std::min({1.0, r1, r2});
}

LemmaBoundsReport verify_lemma_bounds(const ChartManifold& M,
                                      const WaveProfile& f, const DeltaNet& net,
                                      double eps, const GeodesicData& data,
                                      double b, double c,
                                      const IntegratorConfig& cfg,
                                      unsigned seed) {
  const int n = M.dim();
  // Lemma data: the state at u = -eps, reached from the posed data.
  Trajectory lead = integrate(M, f, net, eps, data, -eps, cfg);
  GeodesicState s0 = lead.at(-eps);

  LemmaBoundsReport rep;
  rep.b = b;
  rep.c = c;
  rep.big_c = net.l1_norm();

  // F2 = (1/2) grad_h f over I1 = {|x - x0| <= b}.
  std::mt19937 rng(seed ? seed : 0x5eed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const int n_samples = 400;
  for (int t = 0; t < n_samples; ++t) {
    Vec x = s0.x;
    for (int i = 0; i < n; ++i) x[i] += b * unit(rng);
    if (!M.in_domain(x)) continue;
    rep.f2_norm = std::max(rep.f2_norm, 0.5 * M.grad_h(f, x).norm());
  }
  // F1(y, z) = -Gamma(y) z z over I3 = I1 x I2.
  double zbox = c + rep.big_c * rep.f2_norm;
  for (int t = 0; t < n_samples; ++t) {
    Vec x = s0.x;
    Vec z = s0.xdot;
    for (int i = 0; i < n; ++i) {
      x[i] += b * unit(rng);
      z[i] += zbox * unit(rng);
    }
    if (!M.in_domain(x)) continue;
    Christoffel gamma = M.christoffel_at(x);
    Vec acc(n);
    for (int k = 0; k < n; ++k) acc[k] = -z.dot(gamma[k] * z);
    rep.f1_sup = std::max(rep.f1_sup, acc.norm());
  }

  rep.alpha = existence_interval_alpha(b, c, rep.f1_sup, rep.f2_norm, 0.0,
                                       rep.big_c, s0.xdot.norm());

  GeodesicData lemma_data;
  lemma_data.v0 = s0.v;
  lemma_data.vdot0 = lead.vdot_at(-eps);
  lemma_data.x0 = s0.x;
  lemma_data.xdot0 = s0.xdot;
  lemma_data.u0 = -eps;
  Trajectory traj =
      integrate(M, f, net, eps, lemma_data, rep.alpha - eps, cfg);

  double sup_x = 0.0, sup_xd = 0.0;
  const int n_grid = 512;
  for (int t = 0; t <= n_grid; ++t) {
    double u = -eps + (rep.alpha) * t / n_grid;
    GeodesicState s = traj.at(u);
    sup_x = std::max(sup_x, (s.x - s0.x).norm());
    sup_xd = std::max(sup_xd, (s.xdot - s0.xdot).norm());
  }
  rep.x_margin = b - sup_x;
  rep.xdot_margin = zbox - sup_xd;
  rep.bounds_hold = rep.x_margin >= 0.0 && rep.xdot_margin >= 0.0;
  return rep;
}

}  // namespace iwave
