#include "witness_forge/error.hpp"

namespace witness_forge {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateLabel: return "DuplicateLabel";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::CannotTraceAll: return "CannotTraceAll";
    case ErrorCode::NotAPermutation: return "NotAPermutation";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::BadDimension: return "BadDimension";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::WrongPartyCount: return "WrongPartyCount";
    case ErrorCode::WrongDimensions: return "WrongDimensions";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::NotPPT: return "NotPPT";
    case ErrorCode::OutOfProvenRange: return "OutOfProvenRange";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::BadSpec: return "BadSpec";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace witness_forge
