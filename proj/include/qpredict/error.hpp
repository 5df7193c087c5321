#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qpredict {

enum class ErrorCode {
  argument,
  degenerate_projection,
  spectrum_not_sparse,
  precondition,
  capacity,
  horizon,
  internal_consistency,
  config,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::argument: return "argument";
    case ErrorCode::degenerate_projection: return "degenerate_projection";
    case ErrorCode::spectrum_not_sparse: return "spectrum_not_sparse";
    case ErrorCode::precondition: return "precondition";
    case ErrorCode::capacity: return "capacity";
    case ErrorCode::horizon: return "horizon";
    case ErrorCode::internal_consistency: return "internal_consistency";
    case ErrorCode::config: return "config";
  }
  return "unknown";
}

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto an exit status without parsing messages.
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

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) throw Error(code, message);
}

}  // namespace qpredict
