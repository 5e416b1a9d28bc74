#pragma once

#include <stdexcept>
#include <string>

namespace bpslab {

// Error categories double as the CLI's exit-code contract.
enum class ErrorKind {
  input,     // malformed or out-of-contract arguments
  range,     // integer overflow of a derived quantity (period, D(x), ...)
  domain,    // mathematically undefined result for valid-looking input
  resource,  // memory budget exceeded
  numeric,   // iterative method failed to converge
  io,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct InputError : Error {
  explicit InputError(const std::string& what) : Error(ErrorKind::input, what) {}
};

struct RangeError : Error {
  explicit RangeError(const std::string& what) : Error(ErrorKind::range, what) {}
};

// Carries the raw value that fell outside the domain (e.g. a negative radicand).
struct DomainError : Error {
  DomainError(const std::string& what, double raw)
      : Error(ErrorKind::domain, what), raw_value(raw) {}
  double raw_value;
};

struct ResourceError : Error {
  explicit ResourceError(const std::string& what) : Error(ErrorKind::resource, what) {}
};

struct NumericError : Error {
  explicit NumericError(const std::string& what) : Error(ErrorKind::numeric, what) {}
};

struct IoError : Error {
  explicit IoError(const std::string& what) : Error(ErrorKind::io, what) {}
};

}  // namespace bpslab
