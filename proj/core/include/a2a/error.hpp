#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace a2a {

/// Error kinds raised across the library. The names are part of the CLI
/// contract: they are printed verbatim when a command fails.
enum class Errc {
    // field arithmetic
    FieldMismatch,
    DivisionByZero,
    NotPrime,
    NoSuchRoot,
    // linear algebra
    DimensionError,
    SingularMatrix,
    DuplicatePoints,
    OutOfRange,
    ParseError,
    // network model
    BadConfig,
    BadMessage,
    PortOverflow,
    PortReuse,
    NonTermination,
    NoTrace,
    // protocols
    Degenerate,
    ParamsInconsistent,
    IncompletePrepare,
    NotAPower,
    BadDigit,
    TooManyProcessors,
    BadPhi,
    BadPartition,
};

std::string_view to_string(Errc code) noexcept;

/// True for errors that signal a violation of the synchronous p-port model.
bool is_model_violation(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& detail);

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace a2a
