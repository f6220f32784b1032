#pragma once

#include <stdexcept>
#include <string>

namespace qbic {

// Base class for all library-specific failures.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Quasi-observed information is numerically singular for a candidate.
class SingularInformation : public Error {
public:
  explicit SingularInformation(const std::string& msg) : Error(msg) {}
};

// Quasi-log-likelihood is not finite at the starting point.
class InitializationError : public Error {
public:
  explicit InitializationError(const std::string& msg) : Error(msg) {}
};

// Every candidate in a selection run was excluded.
class NoValidCandidate : public Error {
public:
  explicit NoValidCandidate(const std::string& msg) : Error(msg) {}
};

// Exhaustive enumeration would exceed the subset-count guard.
class TooManyCandidates : public Error {
public:
  explicit TooManyCandidates(const std::string& msg) : Error(msg) {}
};

// Tensor quadrature requested above the supported dimension.
class UnsupportedDimension : public Error {
public:
  explicit UnsupportedDimension(const std::string& msg) : Error(msg) {}
};

// An operation that needs a converged fit was given a non-converged one.
class InvalidFit : public Error {
public:
  explicit InvalidFit(const std::string& msg) : Error(msg) {}
};

// Point estimate lies outside the prior's support.
class PriorSupportError : public Error {
public:
  explicit PriorSupportError(const std::string& msg) : Error(msg) {}
};

// Rate check on a misspecified scenario without a supplied reference value.
class MissingReference : public Error {
public:
  explicit MissingReference(const std::string& msg) : Error(msg) {}
};

// CSV column required by the schema is absent.
class SchemaError : public Error {
public:
  explicit SchemaError(const std::string& msg) : Error(msg) {}
};

// CSV cell could not be parsed as a number.
class ParseError : public Error {
public:
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

// Series too short for the requested lag/differencing.
class InsufficientHistory : public Error {
public:
  explicit InsufficientHistory(const std::string& msg) : Error(msg) {}
};

// Column with zero sample standard deviation cannot be normalized.
class DegenerateColumn : public Error {
public:
  explicit DegenerateColumn(const std::string& msg) : Error(msg) {}
};

}  // namespace qbic
