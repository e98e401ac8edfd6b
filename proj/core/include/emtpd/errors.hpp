#pragma once

#include <stdexcept>
#include <string>

namespace emtpd {

/// Invalid user-facing configuration (population size, strategy names, model mismatch...).
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A probability model could not be fitted (too few samples).
class ModelError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Input data violates a numeric precondition (NaN/inf coordinates).
class DataError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Quality indicator called with an empty or inconsistent point set.
class IndicatorError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Broken internal contract: index out of range, length mismatch.
class InternalError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// A task evaluator threw or returned a malformed objective vector.
class EvaluationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The task does not provide what was asked of it (e.g. no Pareto-front sampler).
class UnsupportedTaskError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

} // namespace emtpd
