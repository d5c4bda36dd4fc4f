#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace solitonlab {

/// Invalid configuration or parameters rejected before any computation.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input outside the physical domain of a closed-form relation (v >= c, f >= cutoff, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Failure detected while a computation was running.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CflViolation : public NumericalError {
 public:
  CflViolation(const std::string& what, double time, double dt, double dt_limit)
      : NumericalError(what), time_(time), dt_(dt), dt_limit_(dt_limit) {}

  double time() const noexcept { return time_; }
  double dt() const noexcept { return dt_; }
  double dt_limit() const noexcept { return dt_limit_; }

 private:
  double time_;
  double dt_;
  double dt_limit_;
};

/// The polar decomposition hit an interior zero of the wavefunction.
class NodeError : public NumericalError {
 public:
  NodeError(const std::string& what, std::vector<double> node_positions)
      : NumericalError(what), positions_(std::move(node_positions)) {}

  const std::vector<double>& node_positions() const noexcept { return positions_; }

 private:
  std::vector<double> positions_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace solitonlab
