#include <caspr/engine.hpp>

#include <caspr/emit.hpp>
#include <caspr/reference.hpp>

#include <algorithm>

namespace caspr {

std::string_view to_string(RefinementPreference p) noexcept {
    return p == RefinementPreference::Layered ? "layered" : "defeat";
}

std::string_view to_string(CegarResult::Outcome o) noexcept {
    switch (o) {
        case CegarResult::Outcome::Winning      : return "winning";
        case CegarResult::Outcome::NoWinningMove: return "no-winning-move";
        case CegarResult::Outcome::Unknown      : return "unknown";
    }
    return "?";
}

Interpretation extract_countermove(const Interpretation& m2, const QuantifiedProgram& qp) {
    return project(m2, qp.p2.head_predicates());
}

bool defeat_check(const Interpretation& n, const std::vector<CountermoveRecord>& cms) {
    return std::ranges::any_of(cms, [&](const CountermoveRecord& rec) {
        return n.contains(rec.as_atom()) && !n.contains(rec.dom_atom()) && n.contains(rec.unsat_neg_atom());
    });
}

Program refinement(const QuantifiedProgram& qp, const CountermoveRecord& rec, RefinementPreference pref) {
    Program out = ref(qp, rec);
    if (pref == RefinementPreference::Layered) {
        return out;
    }
    out.weaks.clear();
    out.add(Rule{rec.defeat_atom(),
                 {Literal::pos(rec.as_atom()), Literal::neg(rec.dom_atom()), Literal::pos(rec.unsat_neg_atom())}});
    out.add(WeakConstraint{
        {Literal::pos(rec.defeat_atom())}, Term::integer(1), refinement_base_level(qp) - 1, {Term::integer(rec.id)}});
    return out;
}

Interpretation user_move(const Interpretation& m, const QuantifiedProgram& qp) {
    return strip_reserved(project(m, qp.p1.predicates()));
}

Engine::Engine(const QuantifiedProgram& qp, Oracle& oracle, EngineOptions opts)
    : qp_(qp), oracle_(oracle), opts_(std::move(opts)) {}

CegarResult Engine::finish(CegarResult r) {
    if (opts_.paranoid_cap > 0 && r.outcome != CegarResult::Outcome::Unknown) {
        try {
            Reference reference(oracle_, opts_.paranoid_cap);
            if (r.winning()) {
                auto cms = reference.countermoves(qp_, r.full_move);
                if (!cms.empty()) {
                    r.discrepancy = "winning move " + to_text(r.move) + " admits countermove " + to_text(*cms.begin());
                }
            }
            else {
                bool coherent = reference.coherent(qp_);
                if (coherent == qp_.is_existential()) {
                    r.discrepancy = "engine found no winning move but the reference evaluator reports the program " +
                                    std::string(coherent ? "coherent" : "incoherent") + " (" +
                                    std::to_string(r.stats.countermoves.size()) + " countermoves, preference " +
                                    std::string(to_string(opts_.preference)) + ")";
                }
            }
        }
        catch (const ReferenceError&) {
            // Too large or timed out; the cross-check is best effort.
        }
    }
    r.stats.oracle_calls = oracle_.calls() - calls_at_start_;
    return r;
}

CegarResult Engine::run() {
    if (!qp_.is_alternating()) {
        throw TransformError(TransformError::Kind::NonAlternating, "the engine needs alternating quantifiers");
    }
    calls_at_start_ = oracle_.calls();
    CegarResult r;
    auto&       cms   = r.stats.countermoves;
    const auto  heads = qp_.p1.head_predicates();
    const auto  pref  = opts_.preference;

    Program abstraction = qp_.p1;
    abstraction.append(opts_.extension);
    for (const auto& rec : opts_.initial) {
        cms.push_back(rec);
        abstraction.append(refinement(qp_, rec, pref));
    }
    const Program counter = ctr(qp_);

    // Next move from the abstraction, or an outcome that ends the search.
    auto next_move = [&]() -> std::optional<Interpretation> {
        auto n = oracle_.solve_optimal(abstraction);
        if (n.status == SolveStatus::Unknown) {
            r.outcome = CegarResult::Outcome::Unknown;
            r.reason  = "abstraction solve: " + n.reason;
            return std::nullopt;
        }
        if (!n.has_model() || defeat_check(n.models.front(), cms)) {
            r.outcome = CegarResult::Outcome::NoWinningMove;
            return std::nullopt;
        }
        return project(n.models.front(), heads);
    };

    auto m1 = next_move();
    while (m1) {
        if (++r.stats.iterations > opts_.max_iterations) {
            r.outcome = CegarResult::Outcome::Unknown;
            r.reason  = "iteration cap reached";
            return finish(r);
        }
        Program check = counter;
        check.append(fix(qp_.p1, *m1));
        auto m2 = oracle_.solve_optimal(check);
        if (m2.status == SolveStatus::Unknown) {
            r.outcome = CegarResult::Outcome::Unknown;
            r.reason  = "countermove solve: " + m2.reason;
            return finish(r);
        }
        if (!m2.has_model() || m2.models.front().contains(kUnsat)) {
            r.outcome   = CegarResult::Outcome::Winning;
            r.full_move = *m1;
            r.move      = user_move(*m1, qp_);
            return finish(r);
        }
        CountermoveRecord rec{static_cast<int>(cms.size()) + 1, extract_countermove(m2.models.front(), qp_)};
        auto              same = std::ranges::find_if(cms, [&](const CountermoveRecord& c) { return c.ce == rec.ce; });
        if (same != cms.end()) {
            r.outcome     = CegarResult::Outcome::Unknown;
            r.reason      = "countermove " + to_text(rec.ce) + " found again after refinement " + same->beta();
            r.discrepancy = r.reason;
            return finish(r);
        }
        abstraction.append(refinement(qp_, rec, pref));
        cms.push_back(std::move(rec));
        m1 = next_move();
    }
    return finish(r);
}

CegarResult find_winning_move(const QuantifiedProgram& qp, const SolverConfig& cfg, EngineOptions opts) {
    Oracle oracle(cfg);
    return Engine(qp, oracle, std::move(opts)).run();
}

} // namespace caspr
