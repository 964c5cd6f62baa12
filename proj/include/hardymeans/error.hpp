#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hardymeans {

// Stable error categories. The CLI prints code_name() on stderr, so the
// strings returned there must not change between releases.
enum class ErrorCode {
  invalid_input,     // malformed sample vector, parameter, or configuration
  invalid_generator, // generator outside its contract (non-monotone, g <= 0, ...)
  overflow,          // generator evaluation left the finite range
  non_convergence,   // Gaussian iteration or optimizer did not converge
  no_sign_change,    // root bracket does not straddle zero
  out_of_range,      // size limits (Kedlaya n caps)
  parse_error,       // mean-expression syntax
  arity_error,       // wrong number of arguments in a mean expression
  unknown_generator, // unrecognized generator name
};

std::string_view code_name(ErrorCode code) noexcept;

class MeanError : public std::runtime_error {
 public:
  MeanError(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Parse failure with the byte offset of the offending token and the set of
// tokens that would have been accepted there.
class ParseError : public MeanError {
 public:
  ParseError(ErrorCode code, std::size_t offset, std::string expected,
             const std::string& what)
      : MeanError(code, what), offset_(offset), expected_(std::move(expected)) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::string expected_;
};

}  // namespace hardymeans
