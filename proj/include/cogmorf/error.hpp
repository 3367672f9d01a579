#pragma once

#include <stdexcept>
#include <string>

namespace cogmorf {

enum class ErrorCode {
  invalid_argument,
  io,
  format,
  contract,
  bookkeeping,
};

const char* error_code_name(ErrorCode code) noexcept;

// All failures inside the library surface as this exception; the C API
// translates the code into a cmorf_status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace cogmorf
