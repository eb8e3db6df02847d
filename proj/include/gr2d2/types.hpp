#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace gr2d2 {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Eigen::Index;

// Invalid distribution/configuration parameters (non-positive shapes, bad dimensions, ...).
struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of a function (e.g. trigamma(x<=0)).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Bad run configuration or input file content detected before any computation.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Unrecoverable numerical failure inside an MCMC run; carries the sweep and step.
struct ChainError : std::runtime_error {
  ChainError(const std::string& step, long iteration, const std::string& what)
      : std::runtime_error("chain error at iteration " + std::to_string(iteration) +
                           ", step " + step + ": " + what),
        step_name(step),
        iteration_index(iteration) {}
  std::string step_name;
  long iteration_index;
};

// Malformed input data file; carries the 1-based row where parsing failed.
struct IngestError : std::runtime_error {
  IngestError(long row, const std::string& what)
      : std::runtime_error("ingestion error at row " + std::to_string(row) + ": " + what),
        row_index(row) {}
  explicit IngestError(const std::string& what) : std::runtime_error(what), row_index(-1) {}
  long row_index;
};

}  // namespace gr2d2
