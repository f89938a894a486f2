#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace collabnet {

// Base of every error the library raises on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad or unreadable input data. The CLI maps this to exit code 1.
class InputError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration (flags, sweeps, generator settings). Exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A malformed row in a delimited input table.
class ParseError : public InputError {
 public:
  ParseError(std::size_t row, std::string reason);

  std::size_t row() const noexcept { return row_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t row_;
  std::string reason_;
};

}  // namespace collabnet
