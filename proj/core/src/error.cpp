#include "a2a/error.hpp"

namespace a2a {

std::string_view to_string(Errc code) noexcept {
    switch (code) {
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::NotPrime: return "NotPrime";
    case Errc::NoSuchRoot: return "NoSuchRoot";
    case Errc::DimensionError: return "DimensionError";
    case Errc::SingularMatrix: return "SingularMatrix";
    case Errc::DuplicatePoints: return "DuplicatePoints";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::ParseError: return "ParseError";
    case Errc::BadConfig: return "BadConfig";
    case Errc::BadMessage: return "BadMessage";
    case Errc::PortOverflow: return "PortOverflow";
    case Errc::PortReuse: return "PortReuse";
    case Errc::NonTermination: return "NonTermination";
    case Errc::NoTrace: return "NoTrace";
    case Errc::Degenerate: return "Degenerate";
    case Errc::ParamsInconsistent: return "ParamsInconsistent";
    case Errc::IncompletePrepare: return "IncompletePrepare";
    case Errc::NotAPower: return "NotAPower";
    case Errc::BadDigit: return "BadDigit";
    case Errc::TooManyProcessors: return "TooManyProcessors";
    case Errc::BadPhi: return "BadPhi";
    case Errc::BadPartition: return "BadPartition";
    }
    return "Unknown";
}

bool is_model_violation(Errc code) noexcept {
    return code == Errc::BadMessage || code == Errc::PortOverflow ||
           code == Errc::PortReuse || code == Errc::NonTermination;
}

Error::Error(Errc code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

} // namespace a2a
