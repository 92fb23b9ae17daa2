#include "iwave/manifold.hpp"

#include <cmath>

#include "iwave/errors.hpp"
#include "iwave/impulse.hpp"

namespace iwave {

namespace {

std::string point_str(const Vec& x) {
  std::string s = "(";
  for (int i = 0; i < x.size(); ++i)
    s += (i ? ", " : "") + std::to_string(x[i]);
  return s + ")";
}

}  // namespace

ChartManifold::ChartManifold(std::string name, int dim,
                             std::function<bool(const Vec&)> domain,
                             std::function<Mat(const Vec&)> metric,
                             std::function<Christoffel(const Vec&)> christoffel,
                             double fd_step)
    : name_(std::move(name)),
      dim_(dim),
      domain_(std::move(domain)),
      metric_(std::move(metric)),
      christoffel_(std::move(christoffel)),
      fd_step_(fd_step) {}

void ChartManifold::require_in_domain(const Vec& x) const {
  if (x.size() != dim_)
    throw DomainError(name_ + ": point has dimension " +
                      std::to_string(x.size()) + ", chart has " +
                      std::to_string(dim_));
  if (!domain_(x))
    throw DomainError(name_ + ": point " + point_str(x) +
                      " outside chart domain");
}

Mat ChartManifold::metric_at(const Vec& x) const {
  require_in_domain(x);
  Mat h = metric_(x);
  double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if ((h - h.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw GeometryError(name_ + ": metric not symmetric at " + point_str(x));
  Eigen::LLT<Mat> llt(0.5 * (h + h.transpose()));
  if (llt.info() != Eigen::Success)
    throw GeometryError(name_ + ": metric not positive-definite at " +
                        point_str(x));
  return h;
}

Mat ChartManifold::inverse_metric_at(const Vec& x) const {
  Mat h = metric_at(x);
  return h.llt().solve(Mat::Identity(dim_, dim_));
}

Christoffel ChartManifold::christoffel_at(const Vec& x) const {
  if (christoffel_) {
    require_in_domain(x);
    return christoffel_(x);
  }
  return christoffel_fd_at(x);
}

Christoffel ChartManifold::christoffel_fd_at(const Vec& x) const {
  require_in_domain(x);
  const int n = dim_;
  const double s = fd_step_;

  // dh[m](i,j) = d_m h_ij by central differences.
  std::vector<Mat> dh(n);
  for (int m = 0; m < n; ++m) {
    Vec xp = x, xm = x;
    xp[m] += s;
    xm[m] -= s;
    if (!domain_(xp) || !domain_(xm))
      throw DifferentiationError(name_ +
                                 ": finite-difference stencil leaves the "
                                 "chart domain at " + point_str(x));
    dh[m] = (metric_(xp) - metric_(xm)) / (2.0 * s);
  }

  Mat hinv = inverse_metric_at(x);
  Christoffel gamma(n, Mat::Zero(n, n));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double g = 0.0;
        for (int m = 0; m < n; ++m)
          g += 0.5 * hinv(k, m) * (dh[i](j, m) + dh[j](i, m) - dh[m](i, j));
        gamma[k](i, j) = g;
        gamma[k](j, i) = g;
      }
  return gamma;
}

Vec ChartManifold::grad_h(const WaveProfile& f, const Vec& x) const {
  require_in_domain(x);
  return inverse_metric_at(x) * f.partials(x);
}

double ChartManifold::h_norm(const Vec& x, const Vec& v) const {
  Mat h = metric_at(x);
  return std::sqrt(v.dot(h * v));
}

BackgroundGeodesic::State BackgroundGeodesic::at(double u) const {
  std::vector<double> y = dense.eval(u);
  State s;
  s.u = u;
  s.x = Eigen::Map<const Vec>(y.data(), dim);
  s.xdot = Eigen::Map<const Vec>(y.data() + dim, dim);
  return s;
}

namespace {

OdeRhs geodesic_rhs(const ChartManifold& M) {
  int n = M.dim();
  return [&M, n](double u, std::span<const double> y, std::span<double> dy) {
    Vec x = Eigen::Map<const Vec>(y.data(), n);
    Vec xd = Eigen::Map<const Vec>(y.data() + n, n);
    if (!M.in_domain(x))
      throw ChartExitError(M.name() + ": geodesic left chart domain", u);
    Christoffel gamma = M.christoffel_at(x);
    for (int i = 0; i < n; ++i) dy[i] = xd[i];
    for (int k = 0; k < n; ++k) dy[n + k] = -xd.dot(gamma[k] * xd);
  };
}

DenseSolution run_geodesic(const ChartManifold& M, const Vec& x0,
                           const Vec& xdot0, double u0, double u1,
                           double tol) {
  int n = M.dim();
  std::vector<double> y0(2 * n);
  for (int i = 0; i < n; ++i) {
    y0[i] = x0[i];
    y0[n + i] = xdot0[i];
  }
  OdeOptions opts;
  opts.rel_tol = tol;
  opts.abs_tol = tol * 1e-2;
  opts.max_step = 0.1;
  opts.check = [&M, n](double u, std::span<const double> y) {
    Vec x = Eigen::Map<const Vec>(y.data(), n);
    if (!M.in_domain(x))
      throw ChartExitError(M.name() + ": geodesic left chart domain", u);
  };
  return integrate_dopri5(geodesic_rhs(M), y0, u0, u1, opts);
}

void fill_samples(BackgroundGeodesic& g, const ChartManifold& M, double tol) {
  int n = M.dim();
  const int n_samples = 65;
  double lo = g.u_lo(), hi = g.u_hi();
  double speed0 = -1.0;
  for (int s = 0; s < n_samples; ++s) {
    double u = lo + (hi - lo) * s / (n_samples - 1);
    std::vector<double> y = g.dense.eval(u);
    BackgroundGeodesic::State st;
    st.u = u;
    st.x = Eigen::Map<const Vec>(y.data(), n);
    st.xdot = Eigen::Map<const Vec>(y.data() + n, n);
    double sp = M.h_norm(st.x, st.xdot);
    if (speed0 < 0) speed0 = M.h_norm(g.at(g.start_u).x, g.at(g.start_u).xdot);
    g.speed_drift = std::max(g.speed_drift, std::abs(sp - speed0));
    g.states.push_back(std::move(st));
  }
  (void)tol;
}

}  // namespace

BackgroundGeodesic background_geodesic(const ChartManifold& M, const Vec& x0,
                                       const Vec& xdot0, double u0, double u1,
                                       double tol) {
  M.require_in_domain(x0);
  BackgroundGeodesic g;
  g.start_u = u0;
  g.dim = M.dim();
  g.dense.add(run_geodesic(M, x0, xdot0, u0, u1, tol));
  fill_samples(g, M, tol);
  return g;
}

BackgroundGeodesic background_geodesic_span(const ChartManifold& M,
                                            const Vec& x0, const Vec& xdot0,
                                            double u0, double u_lo,
                                            double u_hi, double tol) {
  M.require_in_domain(x0);
  BackgroundGeodesic g;
  g.start_u = u0;
  g.dim = M.dim();
  if (u_lo < u0) g.dense.add(run_geodesic(M, x0, xdot0, u0, u_lo, tol));
  if (u_hi > u0) g.dense.add(run_geodesic(M, x0, xdot0, u0, u_hi, tol));
  if (u_lo >= u0 && u_hi <= u0)
    g.dense.add(run_geodesic(M, x0, xdot0, u0, u0, tol));
  fill_samples(g, M, tol);
  return g;
}

std::shared_ptr<const ChartManifold> make_builtin_manifold(
    const std::string& spec) {
  if (spec.rfind("euclidean", 0) == 0) {
    int n = 2;
    auto colon = spec.find(':');
    if (colon != std::string::npos) n = std::stoi(spec.substr(colon + 1));
    if (n < 1) throw ConfigError("manifold: euclidean dimension must be >= 1");
    return std::make_shared<ChartManifold>(
        spec, n, [](const Vec&) { return true; },
        [n](const Vec&) { return Mat::Identity(n, n); },
        [n](const Vec&) { return Christoffel(n, Mat::Zero(n, n)); });
  }
  if (spec == "sphere") {
    // (theta, phi) chart, h = diag(1, sin^2 theta).
    const double margin = 1e-3;
    return std::make_shared<ChartManifold>(
        spec, 2,
        [margin](const Vec& x) {
          return x[0] > margin && x[0] < M_PI - margin;
        },
        [](const Vec& x) {
          Mat h = Mat::Zero(2, 2);
          h(0, 0) = 1.0;
          h(1, 1) = std::sin(x[0]) * std::sin(x[0]);
          return h;
        },
        [](const Vec& x) {
          double th = x[0];
          Christoffel g(2, Mat::Zero(2, 2));
          g[0](1, 1) = -std::sin(th) * std::cos(th);
          g[1](0, 1) = g[1](1, 0) = std::cos(th) / std::sin(th);
          return g;
        });
  }
  if (spec == "half-plane") {
    // Hyperbolic upper half-plane, h = diag(1/y^2, 1/y^2), coords (x, y).
    return std::make_shared<ChartManifold>(
        spec, 2, [](const Vec& x) { return x[1] > 0.0; },
        [](const Vec& x) {
          Mat h = Mat::Zero(2, 2);
          h(0, 0) = h(1, 1) = 1.0 / (x[1] * x[1]);
          return h;
        },
        [](const Vec& x) {
          double y = x[1];
          Christoffel g(2, Mat::Zero(2, 2));
          g[0](0, 1) = g[0](1, 0) = -1.0 / y;
          g[1](0, 0) = 1.0 / y;
          g[1](1, 1) = -1.0 / y;
          return g;
        });
  }
  throw ConfigError("manifold: unknown builtin '" + spec + "'");
}

std::shared_ptr<const ChartManifold> make_custom_manifold(
    const std::string& name, const std::vector<std::string>& coords,
    const std::vector<std::vector<std::string>>& metric_exprs,
    double fd_step) {
  const int n = static_cast<int>(coords.size());
  if (n < 1) throw ConfigError("manifold: custom metric needs coordinates");
  if (static_cast<int>(metric_exprs.size()) != n)
    throw ConfigError("manifold: metric must have " + std::to_string(n) +
                      " rows");
  auto entries = std::make_shared<std::vector<Expr>>();
  entries->reserve(n * n);
  for (const auto& row : metric_exprs) {
    if (static_cast<int>(row.size()) != n)
      throw ConfigError("manifold: metric rows must have " +
                        std::to_string(n) + " entries");
    for (const auto& e : row) entries->push_back(Expr::parse(e, coords));
  }
  auto metric = [entries, n](const Vec& x) {
    Mat h(n, n);
    std::span<const double> v(x.data(), static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) h(i, j) = (*entries)[i * n + j].eval(v);
    return h;
  };
  return std::make_shared<ChartManifold>(
      name, n, [](const Vec&) { return true; }, metric, nullptr, fd_step);
}

}  // namespace iwave
