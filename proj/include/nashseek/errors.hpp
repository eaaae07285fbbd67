#ifndef NASHSEEK_ERRORS_HPP
#define NASHSEEK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nashseek {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Vector/matrix sizes do not match the game or graph dimensions.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Player or node index outside the valid range.
class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

/// The symmetric part of the game Jacobian is not positive definite, so no
/// monotonicity constant exists and no gain condition can be certified.
class NotStronglyMonotone : public Error {
 public:
  using Error::Error;
};

/// The stationarity system H x = -b is numerically singular.
class SingularSystem : public Error {
 public:
  using Error::Error;
};

/// Iterative solver exhausted its iteration budget.
class NoConvergence : public Error {
 public:
  using Error::Error;
};

/// Operation requires a connected communication graph.
class DisconnectedGraph : public Error {
 public:
  using Error::Error;
};

/// A distributed strategy was requested without a communication graph.
class MissingGraph : public Error {
 public:
  using Error::Error;
};

/// The trajectory or state was produced by a different strategy kind.
class WrongStrategyKind : public Error {
 public:
  using Error::Error;
};

/// Integration produced a non-finite state entry, typically because the step
/// size is too large for the chosen gains.
class NonFiniteState : public Error {
 public:
  NonFiniteState(const std::string& what, double time, long step)
      : Error(what), time_(time), step_(step) {}
  double time() const { return time_; }
  long step() const { return step_; }

 private:
  double time_;
  long step_;
};

/// Scenario text could not be parsed; line() is 1-based.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, int line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  explicit ConfigError(const std::string& what) : Error(what), line_(0) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Scenario parsed but a value is inconsistent or missing.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace nashseek

#endif  // NASHSEEK_ERRORS_HPP
