#ifndef IWAVE_ERRORS_HPP
#define IWAVE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace iwave {

// Base class for all engine errors. CLI maps these to exit code 3.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Chart point outside the manifold's coordinate domain.
class DomainError : public Error {
public:
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

// Metric failed a structural check (symmetry, positive-definiteness).
class GeometryError : public Error {
public:
  explicit GeometryError(const std::string& msg) : Error(msg) {}
};

// Finite-difference stencil left the chart domain.
class DifferentiationError : public Error {
public:
  explicit DifferentiationError(const std::string& msg) : Error(msg) {}
};

// Integrated curve left the chart domain; carries the parameter value
// at which the exit was detected.
class ChartExitError : public Error {
public:
  ChartExitError(const std::string& msg, double exit_param)
      : Error(msg), exit_param(exit_param) {}
  double exit_param;
};

class IntegratorError : public Error {
public:
  explicit IntegratorError(const std::string& msg) : Error(msg) {}
};

class ParameterError : public Error {
public:
  explicit ParameterError(const std::string& msg) : Error(msg) {}
};

class QuadratureError : public Error {
public:
  explicit QuadratureError(const std::string& msg) : Error(msg) {}
};

class RangeError : public Error {
public:
  explicit RangeError(const std::string& msg) : Error(msg) {}
};

// Bad scenario configuration. CLI maps this to exit code 2.
class ConfigError : public Error {
public:
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

}  // namespace iwave

#endif
