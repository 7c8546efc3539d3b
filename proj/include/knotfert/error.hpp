#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace knotfert {

/// Base for all library errors.  `exit_code()` is what the CLI returns.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
  virtual int exit_code() const noexcept { return 1; }
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at offset " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }
  const char* kind() const noexcept override { return "parse"; }
  int exit_code() const noexcept override { return 2; }

 private:
  std::size_t position_;
};

class ValidationError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "validation"; }
  int exit_code() const noexcept override { return 3; }
};

/// An explicit refusal to run past a configured size limit.
class LimitError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "limit"; }
  int exit_code() const noexcept override { return 4; }
};

/// The loaded knot table does not reach far enough for the request.
class HorizonError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "horizon"; }
  int exit_code() const noexcept override { return 5; }
};

/// A braid whose closure has more than one component.
class NonKnotClosureError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "non_knot_closure"; }
  int exit_code() const noexcept override { return 6; }
};

/// Malformed table, manifest or cache data.
class DataError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "data"; }
  int exit_code() const noexcept override { return 7; }
};

}  // namespace knotfert
