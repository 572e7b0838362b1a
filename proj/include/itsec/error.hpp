#pragma once

#include <stdexcept>
#include <string>

namespace itsec {

/// Structured error categories surfaced by the library.
enum class Errc {
    mode_mismatch,      ///< rational/float values mixed in one expression
    alphabet_mismatch,  ///< operands defined over different alphabets
    invalid_argument,   ///< malformed distribution, bad range, etc.
    non_square,         ///< operation requires a square channel
    cap_exceeded,       ///< enumeration would exceed the configured cap
    iteration_cap,      ///< iterative solver hit its iteration budget
    infeasible,         ///< optimization problem infeasible (internal defect)
    parse_error,        ///< malformed input document
    io_error,           ///< file could not be read/written
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::mode_mismatch: return "mode_mismatch";
        case Errc::alphabet_mismatch: return "alphabet_mismatch";
        case Errc::invalid_argument: return "invalid_argument";
        case Errc::non_square: return "non_square";
        case Errc::cap_exceeded: return "cap_exceeded";
        case Errc::iteration_cap: return "iteration_cap";
        case Errc::infeasible: return "infeasible";
        case Errc::parse_error: return "parse_error";
        case Errc::io_error: return "io_error";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace itsec
