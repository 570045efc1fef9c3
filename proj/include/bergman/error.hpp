#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bergman {

enum class ErrorCode {
  invalid_argument = 1,
  parse_error,
  domain_error,
  not_converged,
  non_finite,
  dimension_mismatch,
  io_error,
};

// Every failure raised by the library carries a code so the C layer can map
// it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t offset, const std::string& what)
      : Error(ErrorCode::parse_error,
              what + " at byte offset " + std::to_string(offset)),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace bergman
