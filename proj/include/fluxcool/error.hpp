#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fluxcool {

enum class ErrorKind {
    Domain,          // argument outside the function's domain
    NotReached,      // drive excursion never reaches the crossover
    Singular,        // 0/0 style input (zero width on resonance)
    Validity,        // approximation used outside its regime
    DegenerateChain, // rate generator has no unique stationary state
    Config,          // bad configuration / CLI input
    Io,
};

constexpr std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Domain: return "domain";
    case ErrorKind::NotReached: return "not-reached";
    case ErrorKind::Singular: return "singular-input";
    case ErrorKind::Validity: return "validity";
    case ErrorKind::DegenerateChain: return "degenerate-chain";
    case ErrorKind::Config: return "config";
    case ErrorKind::Io: return "io";
    }
    return "unknown";
}

/// True for errors caused by user input rather than by a computation.
constexpr bool is_input_error(ErrorKind kind) {
    return kind == ErrorKind::Config || kind == ErrorKind::Io;
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace fluxcool
