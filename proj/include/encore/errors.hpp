#pragma once

#include <stdexcept>
#include <string>

namespace encore {

// Base class for every failure raised by the pipeline. The CLI maps these
// to exit code 1; anything escaping as a plain std::exception is a bug.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input table is structurally unusable (missing header, missing column).
class SchemaError : public Error {
 public:
  explicit SchemaError(const std::string& msg) : Error(msg) {}
};

// Content-level problems: inconsistent references, empty datasets,
// degenerate entities, undefined statistics.
class DataError : public Error {
 public:
  explicit DataError(const std::string& msg) : Error(msg) {}
};

// Caller violated a documented precondition (dimension mismatch, bad k, ...).
class ContractError : public Error {
 public:
  explicit ContractError(const std::string& msg) : Error(msg) {}
};

// Entity id not known to the model or table being queried.
class LookupError : public Error {
 public:
  explicit LookupError(const std::string& msg) : Error(msg) {}
};

}  // namespace encore
