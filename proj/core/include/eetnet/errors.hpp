#ifndef EETNET_ERRORS_HPP
#define EETNET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace eetnet {

/// Invalid argument to a builder or solver (bad sizes, negative rates, ...).
class ParameterError : public std::invalid_argument {
public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

/// Inconsistent run configuration (preset/topology mismatch, bad config file).
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Adaptive integrator could not proceed; carries the time reached.
class IntegrationError : public std::runtime_error {
public:
  IntegrationError(const std::string& what, double t_reached)
      : std::runtime_error(what), t_reached_(t_reached) {}
  double t_reached() const { return t_reached_; }

private:
  double t_reached_;
};

/// Every sample of a disorder ensemble was flagged divergent.
class EnsembleDegenerateError : public std::runtime_error {
public:
  explicit EnsembleDegenerateError(const std::string& what) : std::runtime_error(what) {}
};

/// Linear operator required to be invertible turned out singular.
class SingularOperatorError : public std::runtime_error {
public:
  explicit SingularOperatorError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace eetnet

#endif
