#pragma once

#include <stdexcept>
#include <string>

namespace avd {

enum class ErrorCode {
  Parse = 1,
  Domain,
  Degenerate,
  NotSpd,
  Argument,
  Resolution,
  Io,
  Inapplicable,
};

/// Every failure raised by the library. The code maps one-to-one onto the
/// status values of the C API.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace avd
