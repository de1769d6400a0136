#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hespeed {

enum class Errc {
  LengthMismatch,
  KindViolation,
  IndexOutOfRange,
  DuplicateVertex,
  NotAPoset,
  NotATournament,
  NotAGraph,
  NotTransitive,
  VertexInT,
  ParseError,
  OrderTooLarge,
  InvalidProperty,
  UnknownFamily,
  BadPart,
  InsufficientPoints,
};

std::string_view errc_name(Errc code);

// Every domain failure in the library is reported as an Error; the CLI maps
// these to exit status 1 and prints errc_name().
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const noexcept { return code_; }
  std::string_view name() const noexcept { return errc_name(code_); }

 private:
  Errc code_;
};

}  // namespace hespeed
