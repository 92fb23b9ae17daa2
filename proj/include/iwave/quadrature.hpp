#ifndef IWAVE_QUADRATURE_HPP
#define IWAVE_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace iwave {

// Adaptive Simpson quadrature. Throws QuadratureError when the recursion
// limit is reached without meeting the tolerance.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double tol = 1e-12, int max_depth = 48);

// Same, but splits the interval at the given breakpoints first (delta nets
// and Heaviside-like integrands have kinks the plain recursion resolves
// slowly).
double integrate_with_breakpoints(const std::function<double(double)>& f,
                                  double a, double b,
                                  std::vector<double> breakpoints,
                                  double tol = 1e-12, int max_depth = 48);

}  // namespace iwave

#endif
