#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace v2v {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad parameters, flags or ranges. The CLI maps these to exit status 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Bad or inconsistent input data. The CLI maps these to exit status 1.
class DataError : public Error {
 public:
  using Error::Error;
};

// A record-level decode failure. `record()` is the zero-based record index
// (binary) or the one-based line number (text).
class ParseError : public DataError {
 public:
  ParseError(std::uint64_t record, const std::string& what)
      : DataError(what), record_(record) {}

  std::uint64_t record() const noexcept { return record_; }

 private:
  std::uint64_t record_;
};

}  // namespace v2v
