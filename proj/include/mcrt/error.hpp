#ifndef MCRT_ERROR_HPP
#define MCRT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace mcrt {

/// Categories of recoverable failures reported by the library.
enum class ErrorCode {
  InvalidSize,
  UnsupportedKind,
  UnsupportedParameter,
  InvalidInterval,
  ModeMismatch,
  InvalidDelta,
  Divisibility,
  InvalidArgument,
  SizeLimit,
  Alignment,
  NotFound,
  Encoding,
  InvalidContour,
  Domain,
  Rank,
  Config,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

}  // namespace mcrt

#endif  // MCRT_ERROR_HPP
