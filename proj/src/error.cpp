#include "auglab/error.hpp"

namespace auglab {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::MalformedSyntax: return "MalformedSyntax";
    case ErrorKind::BadEdgeMultiplicity: return "BadEdgeMultiplicity";
    case ErrorKind::EmptyDiagram: return "EmptyDiagram";
    case ErrorKind::NoPath: return "NoPath";
    case ErrorKind::HypothesisFailure: return "HypothesisFailure";
    case ErrorKind::InvalidSystem: return "InvalidSystem";
    case ErrorKind::InvalidRequest: return "InvalidRequest";
    case ErrorKind::BadBeltParameter: return "BadBeltParameter";
    case ErrorKind::UnboundSymbol: return "UnboundSymbol";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace auglab
