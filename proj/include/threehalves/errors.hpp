#pragma once

#include <stdexcept>
#include <string>

namespace threehalves {

// Root of every error the library throws.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Out-of-domain parameter or argument.
class DomainError : public Error {
public:
  using Error::Error;
};

// kappa <= -epsilon^2/2: the variance process would explode.
class FellerViolation : public DomainError {
public:
  using DomainError::DomainError;
};

class NonPositiveSample : public DomainError {
public:
  using DomainError::DomainError;
};

class OddSubintervals : public DomainError {
public:
  using DomainError::DomainError;
};

class NonPositiveU : public DomainError {
public:
  using DomainError::DomainError;
};

class EmptyPathSet : public Error {
public:
  using Error::Error;
};

// Invalid experiment configuration; the message names the offending field.
class ConfigError : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

// NaN or Inf produced by a simulated path.
class NumericalFailure : public Error {
public:
  using Error::Error;
};

}  // namespace threehalves
