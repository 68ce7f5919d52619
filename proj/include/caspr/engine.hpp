#pragma once

#include <caspr/ast.hpp>
#include <caspr/oracle.hpp>
#include <caspr/transform.hpp>

#include <optional>
#include <string>
#include <vector>

namespace caspr {

/// How the refinement of each countermove enters the abstraction's objective.
enum class RefinementPreference {
    /// The three per-condition weak constraints of the refinement program,
    /// shared by all countermoves at levels lmin-1..lmin-3.
    Layered,
    /// One weak constraint per countermove at level lmin-1 penalizing moves
    /// that the countermove still defeats, so the abstraction minimizes the
    /// number of known countermoves that still apply.
    Defeat,
};

[[nodiscard]] std::string_view to_string(RefinementPreference p) noexcept;

struct EngineOptions {
    RefinementPreference preference{RefinementPreference::Defeat};
    /// Extra rules and weak constraints added to the abstraction.
    Program extension;
    /// Countermoves to refine with before the first move is computed.
    std::vector<CountermoveRecord> initial;
    long max_iterations{1000000};
    /// Re-check NoWinningMove with the reference evaluator when P1 has at most
    /// this many optimal answer sets (0 disables).
    std::size_t paranoid_cap{0};
};

struct CegarStats {
    long                           iterations{0};
    long                           oracle_calls{0};
    std::vector<CountermoveRecord> countermoves;
};

struct CegarResult {
    enum class Outcome { Winning, NoWinningMove, Unknown };

    Outcome outcome{Outcome::Unknown};
    /// Winning move over P1's user vocabulary.
    Interpretation move;
    /// Winning move over heads(P1), including generated complements.
    Interpretation full_move;
    std::string    reason;
    CegarStats     stats;
    /// Set when the paranoid cross-check disagrees with the engine.
    std::optional<std::string> discrepancy;

    [[nodiscard]] bool winning() const noexcept { return outcome == Outcome::Winning; }
};

[[nodiscard]] std::string_view to_string(CegarResult::Outcome o) noexcept;

/// Atoms of `m2` over head predicates of P2.
[[nodiscard]] Interpretation extract_countermove(const Interpretation& m2, const QuantifiedProgram& qp);

/// True iff some record's three refinement conditions all fail in `n`, i.e.
/// its countermove still counters the move encoded by `n`.
[[nodiscard]] bool defeat_check(const Interpretation& n, const std::vector<CountermoveRecord>& cms);

/// Refinement of one countermove in the form used under `pref`.
[[nodiscard]] Program refinement(const QuantifiedProgram& qp, const CountermoveRecord& rec, RefinementPreference pref);

/// Move reported to users: atoms over predicates of P1 without reserved names.
[[nodiscard]] Interpretation user_move(const Interpretation& m, const QuantifiedProgram& qp);

class Engine {
public:
    Engine(const QuantifiedProgram& qp, Oracle& oracle, EngineOptions opts = {});

    CegarResult run();

private:
    CegarResult finish(CegarResult r);

    const QuantifiedProgram& qp_;
    Oracle&                  oracle_;
    EngineOptions            opts_;
    long                     calls_at_start_{0};
};

[[nodiscard]] CegarResult find_winning_move(const QuantifiedProgram& qp, const SolverConfig& cfg,
                                            EngineOptions opts = {});

} // namespace caspr
