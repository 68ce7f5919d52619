#pragma once

#include <caspr/ast.hpp>

#include <stdexcept>

namespace caspr {

class TransformError : public std::runtime_error {
public:
    enum class Kind { NonHeadAtom, NotStratified, NonAlternating };
    TransformError(Kind k, const std::string& msg) : std::runtime_error(msg), kind_(k) {}
    [[nodiscard]] Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// Fresh-signature tag; `p` is renamed to `caspr_<alpha>_<beta>_p`.
struct SignatureTag {
    std::string alpha;
    std::string beta;

    [[nodiscard]] std::string suffix() const { return beta.empty() ? alpha : alpha + "_" + beta; }
    [[nodiscard]] std::string render(std::string_view pred) const {
        return std::string(kReservedPrefix) + suffix() + "_" + std::string(pred);
    }
};

/// A predicate paired with the polarity of the literals to rewrite.
struct LiteralPattern {
    PredicateSig sig;
    bool         negated{false};

    std::strong_ordering operator<=>(const LiteralPattern&) const = default;
    bool                 operator==(const LiteralPattern&) const  = default;
};

using PatternSet = std::set<LiteralPattern>;

/// Positive patterns for `preds`.
[[nodiscard]] PatternSet positive(const std::set<PredicateSig>& preds);
/// Negated patterns for `preds`.
[[nodiscard]] PatternSet negative(const std::set<PredicateSig>& preds);
/// heads(P) together with their negations.
[[nodiscard]] PatternSet lits(const Program& p);

[[nodiscard]] Literal        rename(const PatternSet& pats, const SignatureTag& tag, const Literal& l);
[[nodiscard]] Body           rename(const PatternSet& pats, const SignatureTag& tag, const Body& b);
[[nodiscard]] Rule           rename(const PatternSet& pats, const SignatureTag& tag, const Rule& r);
[[nodiscard]] WeakConstraint rename(const PatternSet& pats, const SignatureTag& tag, const WeakConstraint& w);
[[nodiscard]] Program        rename(const PatternSet& pats, const SignatureTag& tag, const Program& p);

/// A countermove found during search, with the fresh names its refinement owns.
struct CountermoveRecord {
    int            id{1};
    Interpretation ce;

    [[nodiscard]] std::string  beta() const { return "ce" + std::to_string(id); }
    [[nodiscard]] SignatureTag pos_tag() const { return {"pos", beta()}; }
    [[nodiscard]] SignatureTag neg_tag() const { return {"neg", beta()}; }
    [[nodiscard]] SignatureTag clone_tag() const { return {"clone", beta()}; }
    [[nodiscard]] Atom         as_atom() const { return Atom("caspr_as_" + beta()); }
    [[nodiscard]] Atom         fail_atom() const { return Atom("caspr_fail_" + beta()); }
    [[nodiscard]] Atom         dom_atom() const { return Atom("caspr_dom_" + beta()); }
    [[nodiscard]] Atom         unsat_neg_atom() const { return Atom(neg_tag().render("caspr_unsat")); }
    [[nodiscard]] Atom         defeat_atom() const { return Atom("caspr_defeat_" + beta()); }
};

inline const Atom kViolated{"caspr_v"};
inline const Atom kUnsat{"caspr_unsat"};

/// Facts for `m` plus, per head predicate of `p1`, a guard constraint that
/// rejects every atom of that predicate outside `m`.
[[nodiscard]] Program fix(const Program& p1, const Interpretation& m);

/// Constraints `:- B` become `caspr_v :- B`; adds `:- not caspr_v`.
[[nodiscard]] Program complement(const Program& c);

/// Constraints `:- B` become `caspr_unsat :- B`; adds `:~ caspr_unsat. [1@l]`.
[[nodiscard]] Program relaxed(const Program& c, std::int64_t level);

/// Countermove program: P2 plus the relaxed (complemented when q1 is
/// existential) check program one level below P2's lowest level.
[[nodiscard]] Program ctr(const QuantifiedProgram& qp);

[[nodiscard]] Program check_as(const Program& p2, const CountermoveRecord& rec);

/// `caspr_v_<tag>(w,l,t) :- B` per weak and `caspr_cl_<tag>(T,l)` per level.
[[nodiscard]] Program     cost_program(const Program& p, const SignatureTag& tag);
[[nodiscard]] std::string cost_predicate(const SignatureTag& tag);
[[nodiscard]] std::string violation_predicate(const SignatureTag& tag);

/// Rules of `p` (weak constraints dropped) over the record's clone signature.
[[nodiscard]] Program clone_rules(const Program& p, const CountermoveRecord& rec);

/// Derives `dom` iff the cost vector over `cl_a` is dominated by the one over
/// `cl_b`. Auxiliary predicates are named after `suffix`.
[[nodiscard]] Program dominance_rules(const std::string& cl_a, const std::string& cl_b, const std::string& suffix,
                                      const Atom& dom);

[[nodiscard]] Program check_dom(const SignatureTag& tag_a, const SignatureTag& tag_b, const std::set<std::int64_t>& levels,
                                const CountermoveRecord& rec);

/// Appends `guard` to every rule and weak-constraint body.
[[nodiscard]] Program controlled_or(const Program& p, const Literal& guard);

/// Refinement program for one countermove. Its only weak constraints are the
/// three condition preferences at levels lmin-1, lmin-2 and lmin-3.
[[nodiscard]] Program ref(const QuantifiedProgram& qp, const CountermoveRecord& rec);

/// Smallest level among P1's weak constraints (0 if none); refinement levels
/// lie strictly below it.
[[nodiscard]] std::int64_t refinement_base_level(const QuantifiedProgram& qp);

} // namespace caspr
