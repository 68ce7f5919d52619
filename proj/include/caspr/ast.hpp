#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace caspr {

/// Prefix reserved for every machine-generated symbol.
inline constexpr std::string_view kReservedPrefix = "caspr_";

[[nodiscard]] bool is_reserved(std::string_view predicate) noexcept;

struct Term {
    enum class Kind : std::uint8_t { Integer, Symbol, Variable };

    Kind         kind{Kind::Integer};
    std::int64_t value{0};
    std::string  name;

    static Term integer(std::int64_t v) { return Term{Kind::Integer, v, {}}; }
    static Term symbol(std::string n) { return Term{Kind::Symbol, 0, std::move(n)}; }
    static Term variable(std::string n) { return Term{Kind::Variable, 0, std::move(n)}; }

    [[nodiscard]] bool is_variable() const noexcept { return kind == Kind::Variable; }
    [[nodiscard]] bool is_integer() const noexcept { return kind == Kind::Integer; }
    [[nodiscard]] bool is_ground() const noexcept { return kind != Kind::Variable; }

    // Integers sort before symbols, symbols before variables.
    bool                 operator==(const Term&) const = default;
    std::strong_ordering operator<=>(const Term&) const = default;
};

struct Atom {
    std::string       predicate;
    std::vector<Term> args;

    Atom() = default;
    Atom(std::string pred, std::vector<Term> a = {}) : predicate(std::move(pred)), args(std::move(a)) {}

    [[nodiscard]] bool        is_ground() const noexcept;
    [[nodiscard]] std::size_t arity() const noexcept { return args.size(); }

    bool                 operator==(const Atom&) const = default;
    std::strong_ordering operator<=>(const Atom&) const = default;
};

/// Predicate name plus arity; the unit renamed by signature substitution.
struct PredicateSig {
    std::string name;
    std::size_t arity{0};

    bool                 operator==(const PredicateSig&) const = default;
    std::strong_ordering operator<=>(const PredicateSig&) const = default;
};

[[nodiscard]] inline PredicateSig signature_of(const Atom& a) { return {a.predicate, a.arity()}; }

enum class CmpOp : std::uint8_t { Eq, Ne, Lt, Le, Gt, Ge };

/// Operator obtained when both operands swap sides (`a < b` iff `b > a`).
[[nodiscard]] CmpOp flip(CmpOp op) noexcept;
[[nodiscard]] bool  holds(CmpOp op, std::strong_ordering ord) noexcept;

struct Comparison {
    Term  lhs;
    CmpOp op{CmpOp::Eq};
    Term  rhs;

    bool                 operator==(const Comparison&) const = default;
    std::strong_ordering operator<=>(const Comparison&) const = default;
};

struct Literal;

struct AggregateElement {
    std::vector<Term>    terms;
    std::vector<Literal> condition;

    bool                 operator==(const AggregateElement&) const;
    std::strong_ordering operator<=>(const AggregateElement&) const;
};

enum class AggregateFn : std::uint8_t { Sum, Count };

/// Body aggregate in the normalized form `#fn{ elements } op guard`.
struct Aggregate {
    AggregateFn                   fn{AggregateFn::Sum};
    std::vector<AggregateElement> elements;
    CmpOp                         op{CmpOp::Eq};
    Term                          guard;

    bool                 operator==(const Aggregate&) const = default;
    std::strong_ordering operator<=>(const Aggregate&) const = default;
};

struct Literal {
    std::variant<Atom, Comparison, Aggregate> content;
    bool                                      negated{false};

    static Literal pos(Atom a) { return Literal{std::move(a), false}; }
    static Literal neg(Atom a) { return Literal{std::move(a), true}; }
    static Literal cmp(Term l, CmpOp op, Term r) { return Literal{Comparison{std::move(l), op, std::move(r)}, false}; }

    [[nodiscard]] const Atom* atom() const noexcept { return std::get_if<Atom>(&content); }
    [[nodiscard]] Atom*       atom() noexcept { return std::get_if<Atom>(&content); }
    [[nodiscard]] bool        is_atom() const noexcept { return atom() != nullptr; }
    [[nodiscard]] bool        is_positive_atom() const noexcept { return is_atom() && !negated; }

    bool                 operator==(const Literal&) const = default;
    std::strong_ordering operator<=>(const Literal&) const = default;
};

using Body = std::vector<Literal>;

struct Rule {
    std::optional<Atom> head;
    Body                body;

    enum class Kind : std::uint8_t { Normal, Constraint, Fact };

    [[nodiscard]] Kind kind() const noexcept {
        if (!head) {
            return Kind::Constraint;
        }
        return body.empty() ? Kind::Fact : Kind::Normal;
    }
    [[nodiscard]] bool is_constraint() const noexcept { return !head.has_value(); }

    static Rule fact(Atom a) { return Rule{std::move(a), {}}; }
    static Rule constraint(Body b) { return Rule{std::nullopt, std::move(b)}; }

    bool                 operator==(const Rule&) const = default;
    std::strong_ordering operator<=>(const Rule&) const = default;
};

struct WeakConstraint {
    Body              body;
    Term              weight{Term::integer(1)};
    std::int64_t      level{0};
    std::vector<Term> tuple;

    bool                 operator==(const WeakConstraint&) const = default;
    std::strong_ordering operator<=>(const WeakConstraint&) const = default;
};

/// Rules and weak constraints. Equality is structural and ignores statement
/// order; body-literal order is significant.
struct Program {
    std::vector<Rule>           rules;
    std::vector<WeakConstraint> weaks;

    [[nodiscard]] bool empty() const noexcept { return rules.empty() && weaks.empty(); }

    Program& append(const Program& other);
    Program& add(Rule r) {
        rules.push_back(std::move(r));
        return *this;
    }
    Program& add(WeakConstraint w) {
        weaks.push_back(std::move(w));
        return *this;
    }

    /// Predicates occurring in some rule head.
    [[nodiscard]] std::set<PredicateSig> head_predicates() const;
    /// Predicates occurring anywhere (heads, bodies, aggregate conditions, weaks).
    [[nodiscard]] std::set<PredicateSig> predicates() const;
    /// Sorted set of weak-constraint levels.
    [[nodiscard]] std::set<std::int64_t> levels() const;
    /// Smallest weak-constraint level, or `fallback` if there are none.
    [[nodiscard]] std::int64_t min_level(std::int64_t fallback = 0) const;

    bool operator==(const Program& o) const;
};

enum class Quantifier : std::uint8_t { Exists, Forall };

[[nodiscard]] constexpr Quantifier opponent(Quantifier q) noexcept {
    return q == Quantifier::Exists ? Quantifier::Forall : Quantifier::Exists;
}

/// `q1 P1 q2 P2 : C : C^w`.
struct QuantifiedProgram {
    Quantifier                  q1{Quantifier::Exists};
    Program                     p1;
    Quantifier                  q2{Quantifier::Forall};
    Program                     p2;
    Program                     c;
    std::vector<WeakConstraint> cw;

    [[nodiscard]] bool is_alternating() const noexcept { return q1 != q2; }
    [[nodiscard]] bool is_existential() const noexcept { return q1 == Quantifier::Exists; }

    bool operator==(const QuantifiedProgram&) const = default;
};

/// A set of ground atoms.
using Interpretation = std::set<Atom>;

/// Atoms of `m` whose predicate is in `preds`.
[[nodiscard]] Interpretation project(const Interpretation& m, const std::set<PredicateSig>& preds);
/// Atoms of `m` without the reserved prefix.
[[nodiscard]] Interpretation strip_reserved(const Interpretation& m);

} // namespace caspr
