#pragma once

#include <charconv>
#include <stdexcept>
#include <string>

namespace bgate {

enum class ErrorCode {
  InvalidArgument,   // bad parameter or precondition violation
  DataError,         // malformed input data (duplicate cells, zero totals, bad rows)
  LookupError,       // missing temperature/menu/state/cell
  RangeError,        // table evaluated outside its domain
  InsufficientData,  // not enough usable samples for a statistic
  IoError,           // file system / format problems
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

using StateId = std::string;

// Shortest decimal token that parses back to the same double.
inline std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace bgate
