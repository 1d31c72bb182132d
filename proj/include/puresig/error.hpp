#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace puresig {

enum class ErrorCode {
  kDivisionAtOne,
  kSpaceTooLarge,
  kNotApplicable,
  kSumMismatch,
  kIndexOutOfRange,
  kIncomparableChain,
  kConvexityViolation,
  kDimensionMismatch,
  kInvalidArgument,
  kParse,
};

std::string_view error_code_name(ErrorCode code);

/// Exception carrying one of the library's error codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace puresig
