#pragma once

#include <caspr/ast.hpp>

#include <optional>
#include <string>
#include <vector>

namespace caspr {

struct Diagnostic {
    enum class Kind {
        ReservedPrefix,
        HeadOverlap,
        NotStratified,
        WeakInConstraintProgram,
        GlobalVocabulary,
        Unsafe,
        AggregateInWeakBody,
        LevelOverlap,
    };
    enum class Severity { Error, Warning };

    Kind        kind;
    Severity    severity{Severity::Error};
    std::string where;
    std::string message;
};

[[nodiscard]] std::string_view to_string(Diagnostic::Kind k) noexcept;
[[nodiscard]] std::string      to_string(const Diagnostic& d);

/// First variable of `r` that no positive atom binds, if any.
[[nodiscard]] std::optional<std::string> unsafe_variable(const Rule& r);
[[nodiscard]] std::optional<std::string> unsafe_variable(const WeakConstraint& w);

/// True iff no cycle of the predicate dependency graph passes through a
/// negated literal (aggregate conditions count as negative edges).
[[nodiscard]] bool is_stratified(const Program& p);

/// Safety and prefix checks for a single program; `where` labels diagnostics.
[[nodiscard]] std::vector<Diagnostic> validate(const Program& p, std::string_view where);

/// All invariant violations of `qp`; warnings do not make a program invalid.
[[nodiscard]] std::vector<Diagnostic> validate(const QuantifiedProgram& qp);

[[nodiscard]] bool has_errors(const std::vector<Diagnostic>& diags) noexcept;

} // namespace caspr
