#include "iwave/ode.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "iwave/errors.hpp"

namespace iwave {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187,
                 A53 = 64448.0 / 6561, A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247,
                 A64 = 49.0 / 176, A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192,
                 B5 = -2187.0 / 6784, B6 = 11.0 / 84;
constexpr double C2 = 1.0 / 5, C3 = 3.0 / 10, C4 = 4.0 / 5, C5 = 8.0 / 9;
// Error coefficients (5th minus embedded 4th order solution).
constexpr double E1 = 71.0 / 57600, E3 = -71.0 / 16695, E4 = 71.0 / 1920,
                 E5 = -17253.0 / 339200, E6 = 22.0 / 525, E7 = -1.0 / 40;
// Dense-output coefficients.
constexpr double D1 = -12715105075.0 / 11282082432.0;
constexpr double D3 = 87487479700.0 / 32700410799.0;
constexpr double D4 = -10690763975.0 / 1880347072.0;
constexpr double D5 = 701980252875.0 / 199316789632.0;
constexpr double D6 = -1453857185.0 / 822651844.0;
constexpr double D7 = 69997945.0 / 29380423.0;

}  // namespace

void DenseSolution::eval(double u, std::span<double> out) const {
  if (steps_.empty()) throw RangeError("dense eval: empty solution");
  double lo = u_lo(), hi = u_hi();
  double slack = 1e-12 * (1.0 + std::abs(lo) + std::abs(hi));
  if (u < lo - slack || u > hi + slack)
    throw RangeError("dense eval: u=" + std::to_string(u) +
                     " outside [" + std::to_string(lo) + ", " +
                     std::to_string(hi) + "]");
  // Steps are ordered along the direction of integration.
  double dir = (u_to_ >= u_from_) ? 1.0 : -1.0;
  std::size_t lo_i = 0, hi_i = steps_.size() - 1;
  while (lo_i < hi_i) {
    std::size_t mid = (lo_i + hi_i) / 2;
    const Step& s = steps_[mid];
    if (dir * (u - (s.u0 + s.h)) > 0)
      lo_i = mid + 1;
    else
      hi_i = mid;
  }
  const Step& s = steps_[lo_i];
  double theta = (u - s.u0) / s.h;
  theta = std::clamp(theta, 0.0, 1.0);
  double th1 = 1.0 - theta;
  int n = dim_;
  for (int i = 0; i < n; ++i) {
    const double* rc = s.rcont.data() + 5 * i;
    out[i] = rc[0] + theta * (rc[1] + th1 * (rc[2] + theta * (rc[3] + th1 * rc[4])));
  }
}

std::vector<double> DenseSolution::eval(double u) const {
  std::vector<double> out(dim_);
  eval(u, out);
  return out;
}

DenseSolution integrate_dopri5(const OdeRhs& rhs, std::span<const double> y0,
                               double u_from, double u_to,
                               const OdeOptions& opts) {
  const int n = static_cast<int>(y0.size());
  const double dir = (u_to >= u_from) ? 1.0 : -1.0;
  const double span = std::abs(u_to - u_from);

  DenseSolution sol;
  sol.dim_ = n;
  sol.u_from_ = u_from;
  sol.u_to_ = u_to;

  if (span == 0.0) {
    sol.y_final_.assign(y0.begin(), y0.end());
    DenseSolution::Step s;
    s.u0 = u_from;
    s.h = dir * 1e-300;
    s.rcont.assign(5 * n, 0.0);
    for (int i = 0; i < n; ++i) s.rcont[5 * i] = y0[i];
    sol.steps_.push_back(std::move(s));
    return sol;
  }

  // Mandatory mesh points strictly inside the interval, ordered along dir.
  std::vector<double> mesh;
  for (double m : opts.mandatory_points) {
    if (dir * (m - u_from) > 0 && dir * (u_to - m) > 0) mesh.push_back(m);
  }
  mesh.push_back(u_to);
  std::sort(mesh.begin(), mesh.end(),
            [dir](double a, double b) { return dir * a < dir * b; });
  mesh.erase(std::unique(mesh.begin(), mesh.end()), mesh.end());

  std::vector<double> y(y0.begin(), y0.end());
  std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);
  std::vector<double> ytmp(n), y5(n);

  auto cap_at = [&](double u) {
    double cap = opts.max_step;
    if (opts.step_cap) cap = std::min(cap, opts.step_cap(u));
    return std::max(cap, 1e-300);
  };

  double u = u_from;
  double h = opts.initial_step > 0 ? opts.initial_step
                                   : std::min(opts.max_step, span / 100.0);
  h = std::min(h, cap_at(u));

  rhs(u, y, k1);
  sol.stats_.n_rhs++;
  bool fsal_valid = true;

  std::size_t mesh_i = 0;
  long steps = 0;
  const double uround = std::numeric_limits<double>::epsilon();

  while (dir * (u_to - u) > 0) {
    if (++steps > opts.max_steps)
      throw IntegratorError("dopri5: step budget exceeded at u=" +
                            std::to_string(u));
    while (mesh_i + 1 < mesh.size() && dir * (mesh[mesh_i] - u) <= 0) ++mesh_i;
    double target = mesh[mesh_i];
    double remaining = std::abs(target - u);
    h = std::min({h, cap_at(u), remaining});
    if (h < 4.0 * uround * std::max(1.0, std::abs(u)))
      throw IntegratorError("dopri5: step size collapsed at u=" +
                            std::to_string(u));
    double hs = dir * h;

    if (!fsal_valid) {
      rhs(u, y, k1);
      sol.stats_.n_rhs++;
      fsal_valid = true;
    }

    for (int i = 0; i < n; ++i) ytmp[i] = y[i] + hs * A21 * k1[i];
    rhs(u + C2 * hs, ytmp, k2);
    for (int i = 0; i < n; ++i) ytmp[i] = y[i] + hs * (A31 * k1[i] + A32 * k2[i]);
    rhs(u + C3 * hs, ytmp, k3);
    for (int i = 0; i < n; ++i)
      ytmp[i] = y[i] + hs * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
    rhs(u + C4 * hs, ytmp, k4);
    for (int i = 0; i < n; ++i)
      ytmp[i] = y[i] + hs * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
    rhs(u + C5 * hs, ytmp, k5);
    for (int i = 0; i < n; ++i)
      ytmp[i] = y[i] + hs * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] +
                             A64 * k4[i] + A65 * k5[i]);
    rhs(u + hs, ytmp, k6);
    for (int i = 0; i < n; ++i)
      y5[i] = y[i] + hs * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] +
                           B6 * k6[i]);
    rhs(u + hs, y5, k7);
    sol.stats_.n_rhs += 6;

    double err = 0.0;
    for (int i = 0; i < n; ++i) {
      double e = hs * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] +
                       E6 * k6[i] + E7 * k7[i]);
      double sc = opts.abs_tol +
                  opts.rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
      err += (e / sc) * (e / sc);
    }
    err = std::sqrt(err / n);

    if (err <= 1.0) {
      // Accept: record dense coefficients.
      DenseSolution::Step step;
      step.u0 = u;
      step.h = hs;
      step.rcont.resize(5 * n);
      for (int i = 0; i < n; ++i) {
        double ydiff = y5[i] - y[i];
        double bspl = hs * k1[i] - ydiff;
        double* rc = step.rcont.data() + 5 * i;
        rc[0] = y[i];
        rc[1] = ydiff;
        rc[2] = bspl;
        rc[3] = ydiff - hs * k7[i] - bspl;
        rc[4] = hs * (D1 * k1[i] + D3 * k3[i] + D4 * k4[i] + D5 * k5[i] +
                      D6 * k6[i] + D7 * k7[i]);
      }
      sol.steps_.push_back(std::move(step));

      sol.stats_.n_accepted++;
      sol.stats_.min_step = std::min(sol.stats_.min_step, h);
      bool at_target = std::abs(target - (u + hs)) <=
                       4.0 * uround * std::max(1.0, std::abs(target));
      u = at_target ? target : u + hs;
      y.swap(y5);
      k1.swap(k7);  // FSAL
      if (opts.check) opts.check(u, y);
      double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
      h = h * std::clamp(fac, 0.2, 10.0);
    } else {
      sol.stats_.n_rejected++;
      // k1 still holds f(u, y); FSAL stays valid across the rejection.
      double fac = 0.9 * std::pow(err, -0.2);
      h = h * std::clamp(fac, 0.1, 1.0);
    }
  }

  sol.y_final_ = y;
  return sol;
}

void PiecewiseDense::add(DenseSolution sol) {
  u_lo_ = std::min(u_lo_, sol.u_lo());
  u_hi_ = std::max(u_hi_, sol.u_hi());
  pieces_.push_back(std::move(sol));
}

std::vector<double> PiecewiseDense::eval(double u) const {
  if (pieces_.empty()) throw RangeError("piecewise eval: empty");
  const DenseSolution* best = nullptr;
  for (const auto& p : pieces_) {
    if (u >= p.u_lo() && u <= p.u_hi()) {
      best = &p;
      break;
    }
  }
  if (!best) {
    double slack = 1e-12 * (1.0 + std::abs(u_lo_) + std::abs(u_hi_));
    if (u >= u_lo_ - slack && u <= u_hi_ + slack)
      best = (std::abs(u - pieces_.front().u_lo()) <
              std::abs(u - pieces_.front().u_hi()))
                 ? &pieces_.front()
                 : &pieces_.back();
    else
      throw RangeError("piecewise eval: u=" + std::to_string(u) +
                       " outside covered range");
  }
  return best->eval(std::clamp(u, best->u_lo(), best->u_hi()));
}

}  // namespace iwave
