#pragma once

#include <stdexcept>
#include <string>

namespace regseed {

// Structural precondition on input data is violated (bad graph, bad complex,
// bad CLI argument).  CLI exit code 1.
struct ValidationError : std::invalid_argument {
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// An exhaustive enumeration or sampling budget would exceed its work cap.
// We never fall back to silent sampling; the caller must raise the cap or
// switch modes explicitly.  CLI exit code 2.
struct WorkCapError : std::runtime_error {
  explicit WorkCapError(const std::string& what) : std::runtime_error(what) {}
};

// An arbitrary-precision value would exceed the configured digit cap.
// CLI exit code 2.
struct DigitCapError : std::runtime_error {
  explicit DigitCapError(const std::string& what) : std::runtime_error(what) {}
};

// A verification suite found a violated inequality.  CLI exit code 3.
struct VerificationError : std::runtime_error {
  explicit VerificationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace regseed
