#pragma once

#include <stdexcept>
#include <string>

namespace fracext {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ResourceLimit : public Error {
 public:
  using Error::Error;
};

// Raised by the counterexample constructors; what() names the violated constraint.
class InfeasibleParameters : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Malformed configuration input; path() is a JSON-pointer-like location.
class SchemaError : public Error {
 public:
  SchemaError(std::string path, const std::string& msg)
      : Error(path + ": " + msg), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace fracext
