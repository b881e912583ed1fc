#pragma once

#include <stdexcept>
#include <string>

namespace noisebench {

/// Machine-readable error categories, mirrored by the CLI exit codes.
enum class ErrorCategory {
  InvalidParameter,
  InvalidInput,
  DegenerateInput,
  DegenerateFit,
  NoConvergence,
  EmbeddingFailure,
  NumericalDesign,
  Format,
  CorruptFile,
  Parse,
  Io,
};

inline const char* category_name(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::InvalidParameter: return "invalid-parameter";
    case ErrorCategory::InvalidInput: return "invalid-input";
    case ErrorCategory::DegenerateInput: return "degenerate-input";
    case ErrorCategory::DegenerateFit: return "degenerate-fit";
    case ErrorCategory::NoConvergence: return "no-convergence";
    case ErrorCategory::EmbeddingFailure: return "embedding-failure";
    case ErrorCategory::NumericalDesign: return "numerical-design";
    case ErrorCategory::Format: return "format";
    case ErrorCategory::CorruptFile: return "corrupt-file";
    case ErrorCategory::Parse: return "parse";
    case ErrorCategory::Io: return "io";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& message)
      : std::runtime_error(std::string(category_name(category)) + ": " + message),
        category_(category),
        message_(message) {}

  ErrorCategory category() const noexcept { return category_; }
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCategory category_;
  std::string message_;
};

[[noreturn]] inline void fail(ErrorCategory c, const std::string& msg) { throw Error(c, msg); }

inline void require(bool ok, ErrorCategory c, const std::string& msg) {
  if (!ok) fail(c, msg);
}

}  // namespace noisebench
