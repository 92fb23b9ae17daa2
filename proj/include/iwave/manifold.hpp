#ifndef IWAVE_MANIFOLD_HPP
#define IWAVE_MANIFOLD_HPP

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "iwave/expr.hpp"
#include "iwave/ode.hpp"

namespace iwave {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
// Christoffel symbols: tensor[k](i,j) = Gamma^k_ij.
using Christoffel = std::vector<Mat>;

class WaveProfile;  // impulse.hpp

// Complete Riemannian background (N,h) in a single global chart.
// Immutable after construction; all evaluators are pure.
class ChartManifold {
public:
  ChartManifold(std::string name, int dim,
                std::function<bool(const Vec&)> domain,
                std::function<Mat(const Vec&)> metric,
                std::function<Christoffel(const Vec&)> christoffel_analytic =
                    nullptr,
                double fd_step = 1e-5);

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  double fd_step() const { return fd_step_; }
  bool has_analytic_christoffel() const { return christoffel_ != nullptr; }

  bool in_domain(const Vec& x) const { return domain_(x); }
  void require_in_domain(const Vec& x) const;

  // Symmetric positive-definite h(x). GeometryError if the evaluator
  // produces something that is not.
  Mat metric_at(const Vec& x) const;
  Mat inverse_metric_at(const Vec& x) const;

  // Analytic symbols when available, otherwise central finite
  // differences of the metric.
  Christoffel christoffel_at(const Vec& x) const;
  // Finite-difference symbols regardless of an analytic evaluator
  // (consistency checks).
  Christoffel christoffel_fd_at(const Vec& x) const;

  // grad^h f = h^{km} d_m f.
  Vec grad_h(const WaveProfile& f, const Vec& x) const;

  // |v|_h = sqrt(h_ij v^i v^j).
  double h_norm(const Vec& x, const Vec& v) const;

private:
  std::string name_;
  int dim_;
  std::function<bool(const Vec&)> domain_;
  std::function<Mat(const Vec&)> metric_;
  std::function<Christoffel(const Vec&)> christoffel_;
  double fd_step_;
};

// Sampled solution of the background geodesic equation on (N,h).
struct BackgroundGeodesic {
  struct State {
    double u;
    Vec x;
    Vec xdot;
  };

  double start_u = 0.0;
  int dim = 0;
  std::vector<State> states;        // ordered in u
  PiecewiseDense dense;             // state layout [x, xdot]
  double speed_drift = 0.0;         // max | |xdot|_h - |xdot(u0)|_h |

  State at(double u) const;
  double u_lo() const { return dense.u_lo(); }
  double u_hi() const { return dense.u_hi(); }
};

// Integrate the geodesic equation of (N,h) from data (x0, xdot0) at u0.
// Backward intervals (u1 < u0) are allowed.
BackgroundGeodesic background_geodesic(const ChartManifold& M, const Vec& x0,
                                       const Vec& xdot0, double u0, double u1,
                                       double tol = 1e-10);

// Like above but covering [u_lo, u_hi] with data given at u0 inside.
BackgroundGeodesic background_geodesic_span(const ChartManifold& M,
                                            const Vec& x0, const Vec& xdot0,
                                            double u0, double u_lo,
                                            double u_hi, double tol = 1e-10);

// Builtins: "euclidean:<n>", "sphere", "half-plane".
std::shared_ptr<const ChartManifold> make_builtin_manifold(
    const std::string& spec);

// Custom manifold from coordinate names and an expression per metric
// entry (row-major, symmetric; entries below the diagonal may repeat).
std::shared_ptr<const ChartManifold> make_custom_manifold(
    const std::string& name, const std::vector<std::string>& coords,
    const std::vector<std::vector<std::string>>& metric_exprs,
    double fd_step = 1e-5);

}  // namespace iwave

#endif
