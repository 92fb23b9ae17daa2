#ifndef IWAVE_IMPULSE_HPP
#define IWAVE_IMPULSE_HPP

#include <functional>
#include <string>
#include <vector>

#include "iwave/expr.hpp"
#include "iwave/manifold.hpp"

namespace iwave {

// Mother function rho of a scaling delta net: smooth, supported in (-1,1),
// with an analytic derivative.
struct Mother {
  std::string label;
  std::function<double(double)> rho;
  std::function<double(double)> drho;
  double support_lo = -1.0;
  double support_hi = 1.0;
};

// Strict delta net under the pure-scaling model delta_eps(u) = rho(u/eps)/eps.
// Immutable after construction.
class DeltaNet {
public:
  explicit DeltaNet(Mother mother, double quad_tol = 1e-12);

  const std::string& label() const { return label_; }
  double mass() const { return mass_; }      // integral of rho
  double l1_norm() const { return l1_; }     // integral of |rho|, the bound C

  // delta_eps(u); exactly 0 for |u| >= eps. ParameterError if eps is not
  // in (0, 1].
  double eval(double eps, double u) const;
  // d/du delta_eps(u) = rho'(u/eps)/eps^2.
  double deriv(double eps, double u) const;

  // integral of delta_eps over [a, b] by adaptive quadrature.
  double mass_partial(double eps, double a, double b, double tol = 1e-12) const;

  const Mother& mother() const { return mother_; }

  // (eps, u) -> value view for the validator.
  std::function<double(double, double)> family() const;

private:
  Mother mother_;
  std::string label_;
  double mass_;
  double l1_;
};

// An eps-indexed family that need not follow the scaling model; used to
// feed deliberate non-examples to the validator.
struct DeltaFamily {
  std::string label;
  std::function<double(double, double)> eval;  // (eps, u)
};

struct AxiomVerdict {
  bool pass = false;
  std::string detail;
};

struct ValidationReport {
  std::string label;
  AxiomVerdict support;    // (i)  supp inside (-eps, eps)
  AxiomVerdict mass;       // (ii) integral -> 1
  AxiomVerdict l1_bound;   // (iii) uniform L1 bound
  double witnessed_c = 0.0;
  double mass_limit = 0.0;  // integral at the smallest eps
  bool all_pass() const { return support.pass && mass.pass && l1_bound.pass; }
};

// Checks Def.-2 style axioms on a family over the given eps grid.
ValidationReport validate_strict(const DeltaFamily& family,
                                 const std::vector<double>& eps_list,
                                 double quad_tol = 1e-8);

ValidationReport validate_strict(const DeltaNet& net,
                                 const std::vector<double>& eps_list,
                                 double quad_tol = 1e-8);

// Shipped nets: "bump" (symmetric), "bump-asym" (support in (-1, 0.2)),
// "bump-signed" (mass 1, L1 norm 1.6).
DeltaNet make_net(const std::string& name);

// Shipped nets plus the crafted non-examples "bad-support", "bad-mass",
// "bad-l1".
DeltaFamily make_family(const std::string& name);

// Smooth wave profile f on the N-chart with partial derivatives.
class WaveProfile {
public:
  WaveProfile() = default;
  WaveProfile(std::string label, std::function<double(const Vec&)> f,
              std::function<Vec(const Vec&)> partials = nullptr,
              double fd_step = 1e-6);

  // Parse from the expression grammar in the given chart coordinates.
  static WaveProfile from_expression(const std::string& expr,
                                     const std::vector<std::string>& coords);

  static WaveProfile zero(int dim);

  const std::string& label() const { return label_; }
  bool is_zero() const { return zero_; }

  double operator()(const Vec& x) const { return f_(x); }
  Vec partials(const Vec& x) const;

private:
  std::string label_;
  std::function<double(const Vec&)> f_;
  std::function<Vec(const Vec&)> partials_;
  double fd_step_ = 1e-6;
  bool zero_ = false;
};

}  // namespace iwave

#endif
