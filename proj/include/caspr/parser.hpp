#pragma once

#include <caspr/ast.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace caspr {

struct SourceSpan {
    std::string file{"<input>"};
    int         line{1};
    int         column{1};
};

[[nodiscard]] std::string to_string(const SourceSpan& s);

class ParseError : public std::runtime_error {
public:
    ParseError(SourceSpan span, const std::string& message)
        : std::runtime_error(to_string(span) + ": " + message), span_(std::move(span)), message_(message) {}

    [[nodiscard]] const SourceSpan&  span() const noexcept { return span_; }
    [[nodiscard]] const std::string& message() const noexcept { return message_; }

private:
    SourceSpan  span_;
    std::string message_;
};

/// Missing, duplicated or misordered section directive.
class SectionError : public ParseError {
public:
    using ParseError::ParseError;
};

class SafetyError : public ParseError {
public:
    SafetyError(SourceSpan span, std::string variable)
        : ParseError(std::move(span), "unsafe variable " + variable), variable_(std::move(variable)) {}
    [[nodiscard]] const std::string& variable() const noexcept { return variable_; }

private:
    std::string variable_;
};

struct ParseOptions {
    std::string file{"<input>"};
    // Generated programs use the reserved prefix; user input may not.
    bool allow_reserved{false};
};

/// Parses plain ASP text. Choice rules `{a; b}.` are desugared into even loops
/// over `caspr_n_<pred>` complements.
[[nodiscard]] Program parse_program(std::string_view text, const ParseOptions& opts);
[[nodiscard]] Program parse_program(std::string_view text, std::string_view file = "<input>");

/// Parses the sectioned quantified-program format and validates the result.
[[nodiscard]] QuantifiedProgram parse_quantified(std::string_view text, std::string_view file = "<input>");

/// Parses a whitespace-separated list of ground atoms, e.g. a solver model line.
[[nodiscard]] Interpretation parse_atoms(std::string_view text);

} // namespace caspr
