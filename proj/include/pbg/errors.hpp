#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pbg {

using Index = std::uint32_t;
inline constexpr Index kNone = ~Index{0};

enum class ErrorKind {
    TableArity,
    NotByAutomorphisms,
    CompositionDomain,
    NotComposable,
    EmptyCarrier,
    NotSurjective,
    InvalidCrossedModule,
    StructureMapNotHom,
    NotBijective,
    NotFree,
    IllDefinedComposition,
    BaseNotFiberProduct,
    InvalidGerbe,
    NotBaseTrivial,
    PreconditionNotMet,
    NotFreeAtLevel,
    IllDefined,
    CarrierTooLarge,
    NoGroupElement,
    IllDefinedOnClasses,
    SquareFailure,
    SearchExhausted,
    NotAFibration,
    QuotientIllDefined,
    ParseError,
    DanglingReference,
    UnknownSubcommand,
};

std::string_view error_kind_name(ErrorKind k);

// Input-shaped errors map to CLI exit code 2, failed mathematics to 1.
bool is_input_error(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t col, const std::string& msg)
        : Error(ErrorKind::ParseError,
                "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg),
          line_(line), col_(col) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return col_; }

private:
    std::size_t line_;
    std::size_t col_;
};

[[noreturn]] inline void raise(ErrorKind k, const std::string& what) { throw Error(k, what); }

}  // namespace pbg
