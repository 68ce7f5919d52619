#pragma once

#include <caspr/ast.hpp>
#include <caspr/cost.hpp>
#include <caspr/oracle.hpp>

#include <optional>
#include <stdexcept>

namespace caspr {

class ReferenceError : public std::runtime_error {
public:
    enum class Kind { CapExceeded, Unknown, NotExistential };
    ReferenceError(Kind k, const std::string& msg) : std::runtime_error(msg), kind_(k) {}
    [[nodiscard]] Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

struct ReferenceReport {
    bool                        coherent{false};
    std::vector<Interpretation> qas;
    std::vector<Interpretation> opt_qas;
    std::optional<CostVector>   opt_cost;
};

/// Direct nested enumeration of the quantified semantics. Exponential; meant
/// as ground truth for small instances.
class Reference {
public:
    explicit Reference(Oracle& oracle, std::size_t cap = 10000) : oracle_(oracle), cap_(cap) {}

    /// OptAS(P1), each restricted to heads(P1). Throws CapExceeded past the cap.
    std::vector<Interpretation> moves(const QuantifiedProgram& qp);

    /// Optimal answer sets of P2 ∪ fix(P1, m1), each paired with whether it
    /// satisfies C.
    std::vector<std::pair<Interpretation, bool>> inner(const QuantifiedProgram& qp, const Interpretation& m1);

    /// Countermoves to `m1`: optimal inner answer sets violating C (q1 = Exists)
    /// or satisfying it (q1 = Forall), restricted to heads(P2).
    std::set<Interpretation> countermoves(const QuantifiedProgram& qp, const Interpretation& m1);

    /// Whether `Q2 P2 ∪ fix(P1, m1) : C` is coherent.
    bool inner_coherent(const QuantifiedProgram& qp, const Interpretation& m1);

    bool coherent(const QuantifiedProgram& qp);

    /// Quantified answer sets; q1 must be Exists.
    std::vector<Interpretation> enumerate_qas(const QuantifiedProgram& qp);

    /// Non-dominated QAS under the merged P1 ∪ C^w cost.
    std::pair<std::vector<Interpretation>, std::optional<CostVector>> optimal_qas(const QuantifiedProgram& qp);

    ReferenceReport report(const QuantifiedProgram& qp);

private:
    Oracle&     oracle_;
    std::size_t cap_;
    // OptAS(P1) with full atom sets, cached per program.
    std::optional<std::pair<Program, std::vector<Interpretation>>> p1_cache_;

    const std::vector<Interpretation>& p1_optima(const Program& p1);
};

/// Merged cost C(M, P1 ∪ C^w) of a move.
[[nodiscard]] CostVector merged_cost(const QuantifiedProgram& qp, const Interpretation& model);

} // namespace caspr
