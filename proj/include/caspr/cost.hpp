#pragma once

#include <caspr/ast.hpp>

#include <functional>
#include <map>
#include <span>
#include <stdexcept>

namespace caspr {

/// Cost per priority level; an absent level costs 0.
class CostVector {
public:
    CostVector() = default;
    CostVector(std::initializer_list<std::pair<const std::int64_t, std::int64_t>> init) : entries_(init) {}
    explicit CostVector(std::map<std::int64_t, std::int64_t> e) : entries_(std::move(e)) {}

    [[nodiscard]] std::int64_t at(std::int64_t level) const noexcept;
    void                       set(std::int64_t level, std::int64_t cost) { entries_[level] = cost; }
    void                       add(std::int64_t level, std::int64_t cost) { entries_[level] += cost; }

    /// Levels mentioned explicitly, including zero entries.
    [[nodiscard]] const std::map<std::int64_t, std::int64_t>& entries() const noexcept { return entries_; }
    [[nodiscard]] std::set<std::int64_t>                      levels() const;

    /// Sum of both vectors level by level.
    [[nodiscard]] CostVector merged(const CostVector& other) const;

    /// Equality treats absent levels as zero.
    bool operator==(const CostVector& o) const;

private:
    std::map<std::int64_t, std::int64_t> entries_;
};

[[nodiscard]] std::string to_string(const CostVector& c);

/// True iff `b` is dominated by `a`: at the highest level where they differ,
/// `a` has the strictly smaller cost.
[[nodiscard]] bool dominates(const CostVector& a, const CostVector& b);

class CostError : public std::runtime_error {
public:
    enum class Kind { NonGroundWeight, AggregateInWeakBody };
    CostError(Kind k, const std::string& msg) : std::runtime_error(msg), kind_(k) {}
    [[nodiscard]] Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// Variable bindings produced while matching a body.
using Substitution = std::map<std::string, Term>;

[[nodiscard]] Term apply(const Substitution& s, const Term& t);
[[nodiscard]] Atom apply(const Substitution& s, const Atom& a);

/// Calls `fn` for every substitution under which the body (atoms and
/// comparisons only) is true in `model`. Substitutions ground every variable
/// of a safe body.
void for_each_match(const Body& body, const Interpretation& model, const std::function<void(const Substitution&)>& fn);

/// Per-level sum of weights over the distinct violation tuples (w, l, t).
/// Every level of `weaks` appears in the result, possibly with cost 0.
[[nodiscard]] CostVector evaluate_cost(std::span<const WeakConstraint> weaks, const Interpretation& model);

} // namespace caspr
