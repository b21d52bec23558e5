#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace auglab {

enum class ErrorKind {
  MalformedSyntax,
  BadEdgeMultiplicity,
  EmptyDiagram,
  NoPath,
  HypothesisFailure,
  InvalidSystem,
  InvalidRequest,
  BadBeltParameter,
  UnboundSymbol,
  Io,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every failure raised by the library carries one of the kinds above so that
// callers (the CLI in particular) can map it to a stable name and exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace auglab
