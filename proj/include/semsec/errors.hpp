#pragma once

#include <stdexcept>
#include <string>

namespace semsec {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration or mismatched dimensions.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of a formula (e.g. D_u <= 0).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Point or distortion target lies outside the region where a quantity is defined.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// Parameter choice makes a closed form degenerate (zero denominator, log of <= 0).
class DegenerateError : public Error {
 public:
  using Error::Error;
};

class SingularError : public Error {
 public:
  using Error::Error;
};

/// Iterative solver failed to converge.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// Non-finite value produced during sampling.
class NumericError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace semsec
