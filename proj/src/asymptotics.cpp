#include "iwave/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "iwave/errors.hpp"
#include "iwave/quadrature.hpp"

namespace iwave {

SlopeFit fit_loglog(const std::vector<double>& eps,
                    const std::vector<double>& err, double floor) {
  SlopeFit fit;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < eps.size() && i < err.size(); ++i) {
    if (err[i] > floor && err[i] > 0.0 && eps[i] > 0.0) {
      lx.push_back(std::log10(eps[i]));
      ly.push_back(std::log10(err[i]));
    }
  }
  fit.n_used = static_cast<int>(lx.size());
  if (fit.n_used < 2) {
    fit.floored = true;
    return fit;
  }
  double n = static_cast<double>(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  double den = n * sxx - sx * sx;
  fit.slope = (n * sxy - sx * sy) / den;
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

std::vector<double> geometric_grid(double start, double stop, int count) {
  if (count < 1 || !(start > 0.0) || !(stop > 0.0))
    throw ParameterError("geometric_grid: bad parameters");
  std::vector<double> grid(count);
  if (count == 1) {
    grid[0] = start;
    return grid;
  }
  double ratio = std::pow(stop / start, 1.0 / (count - 1));
  for (int i = 0; i < count; ++i) grid[i] = start * std::pow(ratio, i);
  return grid;
}

void parallel_for_eps(int n, int jobs, const std::function<void(int)>& fn) {
  if (jobs <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
#ifdef _OPENMP
  std::exception_ptr first_error;
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
  for (int i = 0; i < n; ++i) {
    try {
      fn(i);
    } catch (...) {
#pragma omp critical
      if (!first_error) first_error = std::current_exception();
    }
  }
  if (first_error) std::rethrow_exception(first_error);
#else
  for (int i = 0; i < n; ++i) fn(i);
#endif
}

SweepReport sweep(const ChartManifold& M, const WaveProfile& f,
                  const DeltaNet& net, const GeodesicData& data, double T,
                  const std::vector<double>& eps_grid,
                  const IntegratorConfig& cfg,
                  std::vector<double> v_sample_points, int jobs) {
  if (eps_grid.empty()) throw ParameterError("sweep: empty eps grid");
  SweepReport rep;
  rep.T = T;
  if (v_sample_points.empty())
    v_sample_points = {-0.5, -0.25, 0.25, 0.5, std::min(1.0, T)};
  for (double u : v_sample_points)
    if (std::abs(u) < 0.1 || std::abs(u) > T)
      throw ParameterError("sweep: v sample points must have 0.1 <= |u| <= T");
  rep.v_sample_points = v_sample_points;
  rep.error_floor = 100.0 * cfg.rel_tol;

  double u_lo = std::min(-T, data.u0);
  BrokenGeodesic bg = limit_geodesic(M, f, data, u_lo, T, cfg.rel_tol);

  rep.entries.assign(eps_grid.size(), SweepEntry{});
  parallel_for_eps(
      static_cast<int>(eps_grid.size()), jobs, [&](int i) {
        SweepEntry& e = rep.entries[i];
        e.eps = eps_grid[i];
        try {
          Trajectory traj =
              integrate_span(M, f, net, e.eps, data, u_lo, T, cfg);
          const int n_grid = 800;
          for (int t = 0; t <= n_grid; ++t) {
            double u = -T + 2.0 * T * t / n_grid;
            Vec diff = traj.at(u).x - bg.x_at(u);
            e.sup_x_err = std::max(e.sup_x_err, diff.norm());
          }
          for (double u : rep.v_sample_points)
            e.v_err.push_back(std::abs(traj.at(u).v - bg.v_at(u)));
          Vec jump_meas = traj.at(e.eps).xdot - traj.at(-e.eps).xdot;
          e.jump_err = (jump_meas - bg.refraction).norm();
          e.x_end_err = (traj.at(T).x - bg.x_at(T)).norm();
        } catch (const Error& err) {
          e.error = err.what();
        }
      });

  std::vector<double> eps, xerr, jerr, verr;
  rep.all_integrated = true;
  for (const auto& e : rep.entries) {
    if (!e.error.empty()) {
      rep.all_integrated = false;
      continue;
    }
    eps.push_back(e.eps);
    xerr.push_back(e.sup_x_err);
    jerr.push_back(e.jump_err);
    verr.push_back(e.v_err.empty()
                       ? 0.0
                       : *std::max_element(e.v_err.begin(), e.v_err.end()));
  }
  rep.x_slope = fit_loglog(eps, xerr, rep.error_floor);
  rep.jump_slope = fit_loglog(eps, jerr, rep.error_floor);
  rep.v_slope = fit_loglog(eps, verr, rep.error_floor);

  // Monotone decrease across the grid (largest-to-smallest eps), with 10%
  // jitter allowed, only below the floor-resolved window.
  std::vector<std::pair<double, double>> ordered;
  for (std::size_t i = 0; i < eps.size(); ++i) ordered.push_back({eps[i], xerr[i]});
  std::sort(ordered.begin(), ordered.end(),
            [](auto& a, auto& b) { return a.first > b.first; });
  rep.monotone_x = ordered.size() >= 2;
  for (std::size_t i = 1; i < ordered.size(); ++i) {
    if (ordered[i].second <= rep.error_floor) continue;
    if (ordered[i].second > 1.1 * ordered[i - 1].second) rep.monotone_x = false;
  }
  return rep;
}

TestFunction bump_test_function(double lo, double hi) {
  if (!(lo < hi)) throw ParameterError("test function: empty support");
  double mid = 0.5 * (lo + hi), hw = 0.5 * (hi - lo);
  auto raw = [mid, hw](double u) {
    double t = (u - mid) / hw;
    if (std::abs(t) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - t * t));
  };
  double mass = integrate_adaptive(raw, lo, hi, 1e-13);
  TestFunction phi;
  phi.label = "bump(" + std::to_string(lo) + "," + std::to_string(hi) + ")";
  phi.lo = lo;
  phi.hi = hi;
  phi.phi = [raw, mass](double u) { return raw(u) / mass; };
  return phi;
}

PairingReport association_pairing(const std::vector<Trajectory>& trajectories,
                                  const BrokenGeodesic& bg,
                                  const std::vector<TestFunction>& phis,
                                  double quad_tol) {
  PairingReport rep;
  for (const auto& phi : phis) rep.phi_labels.push_back(phi.label);
  for (const auto& traj : trajectories) {
    PairingEntry entry;
    entry.eps = traj.eps();
    for (const auto& phi : phis) {
      if (phi.lo < traj.u_lo() || phi.hi > traj.u_hi())
        throw ParameterError(
            "association_pairing: test function support exceeds trajectory "
            "range");
      // v_at is right-continuous at the jump; integrate each side of
      // u = 0 against its own one-sided limit so the integrands stay
      // continuous on closed subintervals.
      double val = 0.0;
      if (phi.lo < 0.0) {
        auto pre = [&](double u) {
          double vlim = bg.v0 + bg.vdot0 * (1.0 + u);
          return (traj.at(u).v - vlim) * phi.phi(u);
        };
        val += integrate_with_breakpoints(pre, phi.lo, std::min(0.0, phi.hi),
                                          {-traj.eps()}, quad_tol, 40);
      }
      if (phi.hi > 0.0) {
        auto post = [&](double u) {
          return (traj.at(u).v - bg.v_at(u)) * phi.phi(u);
        };
        val += integrate_with_breakpoints(post, std::max(0.0, phi.lo), phi.hi,
                                          {traj.eps()}, quad_tol, 40);
      }
      entry.value.push_back(val);
    }
    rep.entries.push_back(std::move(entry));
  }
  std::vector<double> eps;
  for (const auto& e : rep.entries) eps.push_back(e.eps);
  for (std::size_t k = 0; k < phis.size(); ++k) {
    std::vector<double> err;
    for (const auto& e : rep.entries) err.push_back(std::abs(e.value[k]));
    rep.rates.push_back(fit_loglog(eps, err, 0.0));
    double first = err.empty() ? 0.0 : err.front();
    double last = err.empty() ? 0.0 : err.back();
    rep.converges.push_back(err.size() < 2 || last <= 0.5 * first ||
                            last < 1e-10);
  }
  return rep;
}

ModeratenessReport moderateness_probe(const ChartManifold& M,
                                      const WaveProfile& f, const DeltaNet& net,
                                      const GeodesicData& data,
                                      const std::vector<double>& eps_grid,
                                      int l_max, const IntegratorConfig& cfg,
                                      int jobs) {
  if (l_max > 3)
    throw ParameterError("moderateness_probe: l_max <= 3 (higher derivatives "
                         "only via RHS differentiation)");
  ModeratenessReport rep;
  rep.eps = eps_grid;
  rep.sup_xdot.assign(eps_grid.size(), 0.0);
  rep.sup_xddot.assign(eps_grid.size(), 0.0);
  rep.sup_x3dot.assign(eps_grid.size(), 0.0);
  rep.sup_vddot.assign(eps_grid.size(), 0.0);

  parallel_for_eps(static_cast<int>(eps_grid.size()), jobs, [&](int i) {
    double eps = eps_grid[i];
    Trajectory traj = integrate(M, f, net, eps, data, 2.0 * eps, cfg);
    const int n_grid = 1000;
    for (int t = 0; t <= n_grid; ++t) {
      double u = -eps + 2.0 * eps * t / n_grid;
      GeodesicState s = traj.at(u);
      rep.sup_xdot[i] = std::max(rep.sup_xdot[i], s.xdot.norm());
      rep.sup_xddot[i] = std::max(rep.sup_xddot[i], traj.xddot_at(s).norm());
      if (l_max >= 3)
        rep.sup_x3dot[i] = std::max(rep.sup_x3dot[i], traj.x3dot_at(s).norm());
      rep.sup_vddot[i] = std::max(rep.sup_vddot[i], std::abs(traj.vddot_at(s)));
    }
  });

  rep.xdot_fit = fit_loglog(rep.eps, rep.sup_xdot, 0.0);
  rep.xddot_fit = fit_loglog(rep.eps, rep.sup_xddot, 0.0);
  rep.x3dot_fit = fit_loglog(rep.eps, rep.sup_x3dot, 0.0);
  rep.vddot_fit = fit_loglog(rep.eps, rep.sup_vddot, 0.0);
  // sup|xdot| bounded => slope >= -0.2; each extra derivative may cost one
  // power of eps; vddot obeys an O(eps^-2) estimate.
  rep.xdot_ok = rep.xdot_fit.floored || rep.xdot_fit.slope >= -0.2;
  rep.xddot_ok = rep.xddot_fit.floored || rep.xddot_fit.slope >= -1.2;
  rep.x3dot_ok = l_max < 3 || rep.x3dot_fit.floored || rep.x3dot_fit.slope >= -2.2;
  rep.vddot_ok = rep.vddot_fit.floored || rep.vddot_fit.slope >= -2.2;
  return rep;
}

double gronwall_bykov_bound(double A, double C3, double C4, double C,
                            double eps, double T) {
  if (T < eps) throw ParameterError("gronwall_bykov_bound: T must be >= eps");
  double w = T + eps;
  double single = C3 * w + C4 * C;
  double iterated = C3 * w * w / 2.0 + C4 * C * w;
  return A * std::exp(single + iterated);
}

namespace {

// Lipschitz-type constants of F1(x, xdot) = -Gamma(x) xdot xdot and
// F2(x) = (1/2) grad_h f, estimated by finite differences at states
// visited by the trajectory. Heuristic stand-in for the mean value
// theorem constants on an unspecified compact set.
void estimate_lipschitz(const ChartManifold& M, const WaveProfile& f,
                        const Trajectory& traj, double T, double& c3,
                        double& c4) {
  const int n = M.dim();
  const double h = 1e-5;
  c3 = 0.0;
  c4 = 0.0;
  const int n_samples = 50;
  for (int t = 0; t <= n_samples; ++t) {
    double u = -T + 2.0 * T * t / n_samples;
    GeodesicState s = traj.at(u);
    auto F1 = [&](const Vec& x, const Vec& z) {
      Christoffel gamma = M.christoffel_at(x);
      Vec out(n);
      for (int k = 0; k < n; ++k) out[k] = -z.dot(gamma[k] * z);
      return out;
    };
    Vec base1 = F1(s.x, s.xdot);
    Vec base2 = 0.5 * M.grad_h(f, s.x);
    double j1 = 0.0, j2 = 0.0;
    for (int i = 0; i < n; ++i) {
      Vec xp = s.x;
      xp[i] += h;
      if (!M.in_domain(xp)) continue;
      j1 = std::max(j1, (F1(xp, s.xdot) - base1).norm() / h);
      j2 = std::max(j2, (0.5 * M.grad_h(f, xp) - base2).norm() / h);
      Vec zp = s.xdot;
      zp[i] += h;
      j1 = std::max(j1, (F1(s.x, zp) - base1).norm() / h);
    }
    c3 = std::max(c3, j1);
    c4 = std::max(c4, j2);
  }
}

}  // namespace

StabilityReport stability_probe(const ChartManifold& M, const WaveProfile& f,
                                const DeltaNet& net, const GeodesicData& data,
                                int q, double T,
                                const std::vector<double>& eps_grid,
                                const IntegratorConfig& cfg, int jobs) {
  if (q < 1 || q > 8)
    throw ParameterError("stability_probe: q must lie in {1,...,8}");
  StabilityReport rep;
  rep.q = q;
  rep.entries.assign(eps_grid.size(), StabilityEntry{});

  TestFunction bump = bump_test_function(-1.0, 1.0);
  double u_lo = std::min(-T, data.u0);

  double c3 = 0.0, c4 = 0.0;
  bool constants_ready = false;

  parallel_for_eps(static_cast<int>(eps_grid.size()), jobs, [&](int i) {
    double eps = eps_grid[i];
    double scale = std::pow(eps, q);
    const int n = M.dim();

    Trajectory base = integrate_span(M, f, net, eps, data, u_lo, T, cfg);

    GeodesicData pert = data;
    pert.v0 += scale;
    pert.vdot0 += scale;
    pert.x0 = data.x0.array() + scale;
    pert.xdot0 = data.xdot0.array() + scale;
    Forcing forcing;
    forcing.a = [&bump, scale](double u) { return scale * bump.phi(u); };
    forcing.b = forcing.a;
    Trajectory tilde =
        integrate_span(M, f, net, eps, pert, u_lo, T, cfg, &forcing);

    double psi = 0.0;
    const int n_grid = 600;
    for (int t = 0; t <= n_grid; ++t) {
      double u = -T + 2.0 * T * t / n_grid;
      GeodesicState a = base.at(u), b = tilde.at(u);
      psi = std::max(psi, (a.x - b.x).norm() + (a.xdot - b.xdot).norm());
    }
    rep.entries[i].eps = eps;
    rep.entries[i].psi_sup = psi;

#pragma omp critical
    if (!constants_ready) {
      estimate_lipschitz(M, f, base, T, c3, c4);
      constants_ready = true;
    }
    (void)n;
  });

  rep.c3 = c3;
  rep.c4 = c4;
  double C = net.l1_norm();
  double root_n = std::sqrt(static_cast<double>(M.dim()));
  for (auto& e : rep.entries) {
    double scale = std::pow(e.eps, q);
    double w = T + e.eps;
    double bump_sup = 1.0 * bump.phi(0.0);
    // Inhomogeneous parts of the integral inequalities: initial offsets
    // plus the accumulated forcing.
    double k1 = root_n + w * root_n + 0.5 * w * w * bump_sup * root_n;
    double k2 = root_n + w * bump_sup * root_n;
    e.bound = gronwall_bykov_bound((k1 + k2) * scale, c3, c4, C, e.eps, T);
  }

  std::vector<double> eps, psi;
  for (const auto& e : rep.entries) {
    eps.push_back(e.eps);
    psi.push_back(e.psi_sup);
  }
  rep.psi_fit = fit_loglog(eps, psi, 100.0 * cfg.rel_tol);
  rep.order_ok = rep.psi_fit.floored || rep.psi_fit.slope >= q - 0.2;
  rep.dominated = true;
  for (const auto& e : rep.entries)
    if (e.psi_sup > e.bound) rep.dominated = false;
  return rep;
}

}  // namespace iwave
