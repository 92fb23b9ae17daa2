#ifndef IWAVE_ODE_HPP
#define IWAVE_ODE_HPP

#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace iwave {

// Right-hand side: dy(u, y, dydu). dydu has the same size as y.
using OdeRhs =
    std::function<void(double, std::span<const double>, std::span<double>)>;

struct OdeOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = 0.1;
  double initial_step = 0.0;  // 0 = choose automatically
  long max_steps = 5'000'000;
  // Optional per-location cap on |h| (used to resolve the impulse).
  std::function<double(double)> step_cap;
  // Mesh points the integrator must land on exactly.
  std::vector<double> mandatory_points;
  // Called after every accepted step; may throw (e.g. ChartExitError).
  std::function<void(double, std::span<const double>)> check;
};

struct OdeStats {
  long n_accepted = 0;
  long n_rejected = 0;
  long n_rhs = 0;
  double min_step = std::numeric_limits<double>::infinity();
};

// Piecewise-polynomial continuous extension of an accepted DOPRI5 run.
class DenseSolution {
public:
  struct Step {
    double u0, h;                   // signed h
    std::vector<double> rcont;      // 5 * dim coefficients
  };

  int dim() const { return dim_; }
  double u_from() const { return u_from_; }
  double u_to() const { return u_to_; }
  double u_lo() const { return std::min(u_from_, u_to_); }
  double u_hi() const { return std::max(u_from_, u_to_); }

  void eval(double u, std::span<double> out) const;
  std::vector<double> eval(double u) const;

  const std::vector<double>& final_state() const { return y_final_; }
  const OdeStats& stats() const { return stats_; }

private:
  friend DenseSolution integrate_dopri5(const OdeRhs&, std::span<const double>,
                                        double, double, const OdeOptions&);
  int dim_ = 0;
  double u_from_ = 0, u_to_ = 0;
  std::vector<Step> steps_;
  std::vector<double> y_final_;
  OdeStats stats_;
};

// Integrate from u_from to u_to (either direction). Throws IntegratorError
// on step collapse or step-budget exhaustion; rethrows whatever opts.check
// throws.
DenseSolution integrate_dopri5(const OdeRhs& rhs, std::span<const double> y0,
                               double u_from, double u_to,
                               const OdeOptions& opts);

// Several DenseSolutions (e.g. a backward and a forward run from shared
// data) glued into one evaluable object.
class PiecewiseDense {
public:
  PiecewiseDense() = default;
  void add(DenseSolution sol);

  double u_lo() const { return u_lo_; }
  double u_hi() const { return u_hi_; }
  std::vector<double> eval(double u) const;
  const std::vector<DenseSolution>& pieces() const { return pieces_; }

private:
  std::vector<DenseSolution> pieces_;
  double u_lo_ = std::numeric_limits<double>::infinity();
  double u_hi_ = -std::numeric_limits<double>::infinity();
};

}  // namespace iwave

#endif
