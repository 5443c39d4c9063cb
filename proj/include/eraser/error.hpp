#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace eraser {

enum class ErrorCode {
  dimension_mismatch,
  zero_probability_branch,
  degenerate_pattern,
  fit_failed,
  invalid_argument,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::dimension_mismatch: return "dimension-mismatch";
    case ErrorCode::zero_probability_branch: return "zero-probability-branch";
    case ErrorCode::degenerate_pattern: return "degenerate-pattern";
    case ErrorCode::fit_failed: return "fit-failed";
    case ErrorCode::invalid_argument: return "invalid-argument";
  }
  return "unknown";
}

}  // namespace eraser
