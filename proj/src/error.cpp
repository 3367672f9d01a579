#include "cogmorf/error.hpp"

namespace cogmorf {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::io: return "io";
    case ErrorCode::format: return "format";
    case ErrorCode::contract: return "contract";
    case ErrorCode::bookkeeping: return "bookkeeping";
  }
  return "unknown";
}

}  // namespace cogmorf
