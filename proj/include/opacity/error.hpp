#pragma once

#include <stdexcept>
#include <string>

namespace opacity {

enum class ErrorCode {
  unknown_event,
  not_deterministic,
  alphabet_mismatch,
  invalid_instance,
  not_unary,
  too_few_events,
  name_clash,
  unary,
  empty_initial,
  malformed_witness,
  invalid_params,
  syntax_error,
  semantic_error,
  usage,
};

const char* to_string(ErrorCode code);

/// Every failure in the library is reported through this type. `line` is
/// nonzero only for parse errors.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::size_t line = 0)
      : std::runtime_error(message), code_(code), line_(line) {}

  ErrorCode code() const noexcept { return code_; }
  std::size_t line() const noexcept { return line_; }

 private:
  ErrorCode code_;
  std::size_t line_;
};

}  // namespace opacity
