#pragma once

#include <caspr/cost.hpp>
#include <caspr/engine.hpp>

namespace caspr {

struct OptStats {
    /// Quantified answer sets found, one per optimization step.
    long qas_found{0};
    long oracle_calls{0};
    /// CEGAR iterations summed over all steps.
    long iterations{0};
    long countermoves{0};
    /// Merged cost of each quantified answer set in discovery order.
    std::vector<CostVector> cost_sequence;
};

struct OptResult {
    enum class Outcome { Optimal, NoQas, Unknown };

    Outcome                    outcome{Outcome::Unknown};
    Interpretation             move;
    Interpretation             full_move;
    CostVector                 cost;
    std::string                reason;
    OptStats                   stats;
    std::optional<std::string> discrepancy;
};

[[nodiscard]] std::string_view to_string(OptResult::Outcome o) noexcept;

/// Levels of `cw` moved below `lmin - 3` by the affine shift
/// l -> l + (lmin - 3) - max(levels) - 1.
[[nodiscard]] std::vector<WeakConstraint> shift_global_levels(const std::vector<WeakConstraint>& cw, std::int64_t lmin);

/// Constraints that admit only moves whose P1 cost is `pinned` and whose merged
/// P1 ∪ C^w cost dominates `bound`.
[[nodiscard]] Program improvement_constraints(const QuantifiedProgram& qp, const CostVector& pinned,
                                              const CostVector& bound);

/// Repeatedly asks for a quantified answer set cheaper than the last one.
[[nodiscard]] OptResult solve_upper(const QuantifiedProgram& qp, Oracle& oracle, EngineOptions opts = {});

/// Adds the global weak constraints below the refinement levels so that the
/// first winning move is already optimal.
[[nodiscard]] OptResult solve_lower(const QuantifiedProgram& qp, Oracle& oracle, EngineOptions opts = {});

} // namespace caspr
