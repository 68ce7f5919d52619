#include <caspr/optimize.hpp>

#include <caspr/reference.hpp>

#include <algorithm>

namespace caspr {

std::string_view to_string(OptResult::Outcome o) noexcept {
    switch (o) {
        case OptResult::Outcome::Optimal: return "optimal";
        case OptResult::Outcome::NoQas  : return "no-qas";
        case OptResult::Outcome::Unknown: return "unknown";
    }
    return "?";
}

std::vector<WeakConstraint> shift_global_levels(const std::vector<WeakConstraint>& cw, std::int64_t lmin) {
    if (cw.empty()) {
        return {};
    }
    auto top    = std::ranges::max_element(cw, {}, &WeakConstraint::level)->level;
    auto lambda = (lmin - 3) - top - 1;
    auto out    = cw;
    for (auto& w : out) {
        w.level += lambda;
    }
    return out;
}

Program improvement_constraints(const QuantifiedProgram& qp, const CostVector& pinned, const CostVector& bound) {
    Program out;
    const SignatureTag loc{"loc", ""};
    const SignatureTag mrg{"mrg", ""};
    Program            local;
    local.weaks = qp.p1.weaks;
    out.append(cost_program(local, loc));
    auto T = Term::variable("T");
    for (auto l : qp.p1.levels()) {
        out.add(Rule::constraint({Literal::pos(Atom(cost_predicate(loc), {T, Term::integer(l)})),
                                  Literal::cmp(T, CmpOp::Ne, Term::integer(pinned.at(l)))}));
    }

    Program merged;
    merged.weaks = qp.p1.weaks;
    merged.weaks.insert(merged.weaks.end(), qp.cw.begin(), qp.cw.end());
    out.append(cost_program(merged, mrg));
    for (auto l : merged.levels()) {
        out.add(Rule::fact(Atom("caspr_prev", {Term::integer(bound.at(l)), Term::integer(l)})));
    }
    Atom improved("caspr_improved");
    out.append(dominance_rules("caspr_prev", cost_predicate(mrg), "imp", improved));
    out.add(Rule::constraint({Literal::neg(improved)}));
    return out;
}

namespace {

void absorb(OptStats& s, const CegarResult& r) {
    s.oracle_calls += r.stats.oracle_calls;
    s.iterations += r.stats.iterations;
    s.countermoves = static_cast<long>(r.stats.countermoves.size());
}

OptResult from_failure(const CegarResult& r, OptResult out) {
    out.outcome     = r.outcome == CegarResult::Outcome::Unknown ? OptResult::Outcome::Unknown : OptResult::Outcome::NoQas;
    out.reason      = r.reason;
    out.discrepancy = r.discrepancy;
    return out;
}

void require_existential(const QuantifiedProgram& qp) {
    if (!qp.is_existential() || !qp.is_alternating()) {
        throw TransformError(TransformError::Kind::NonAlternating, "optimization needs an exists-forall program");
    }
}

} // namespace

OptResult solve_upper(const QuantifiedProgram& qp, Oracle& oracle, EngineOptions opts) {
    require_existential(qp);
    OptResult out;
    auto      first = Engine(qp, oracle, opts).run();
    absorb(out.stats, first);
    if (!first.winning()) {
        return from_failure(first, std::move(out));
    }
    out.full_move = first.full_move;
    out.move      = first.move;
    out.cost      = merged_cost(qp, first.full_move);
    out.stats.cost_sequence.push_back(out.cost);
    out.stats.qas_found = 1;
    out.discrepancy     = first.discrepancy;
    out.outcome         = OptResult::Outcome::Optimal;
    if (qp.p1.weaks.empty() && qp.cw.empty()) {
        return out;
    }

    // Every optimal answer set of P1 has the same P1 cost.
    const auto pinned = evaluate_cost(qp.p1.weaks, first.full_move);
    auto       cms    = first.stats.countermoves;
    while (true) {
        EngineOptions step = opts;
        step.extension.append(improvement_constraints(qp, pinned, out.cost));
        step.initial = cms;
        auto r       = Engine(qp, oracle, step).run();
        absorb(out.stats, r);
        if (r.discrepancy) {
            out.discrepancy = r.discrepancy;
        }
        if (r.outcome == CegarResult::Outcome::Unknown) {
            out.outcome = OptResult::Outcome::Unknown;
            out.reason  = r.reason;
            return out;
        }
        if (!r.winning()) {
            return out;
        }
        cms           = r.stats.countermoves;
        out.full_move = r.full_move;
        out.move      = r.move;
        out.cost      = merged_cost(qp, r.full_move);
        out.stats.cost_sequence.push_back(out.cost);
        ++out.stats.qas_found;
    }
}

OptResult solve_lower(const QuantifiedProgram& qp, Oracle& oracle, EngineOptions opts) {
    require_existential(qp);
    OptResult out;
    // P1 weaks sharing a level with C^w are shifted along with it: the merged
    // cost counts a violation tuple present in both only once.
    std::set<std::int64_t>      global_levels;
    std::vector<WeakConstraint> to_shift = qp.cw;
    for (const auto& w : qp.cw) {
        global_levels.insert(w.level);
    }
    for (const auto& w : qp.p1.weaks) {
        if (global_levels.contains(w.level)) {
            to_shift.push_back(w);
        }
    }
    for (auto& w : shift_global_levels(to_shift, refinement_base_level(qp))) {
        opts.extension.add(std::move(w));
    }
    auto r = Engine(qp, oracle, opts).run();
    absorb(out.stats, r);
    if (!r.winning()) {
        return from_failure(r, std::move(out));
    }
    out.outcome   = OptResult::Outcome::Optimal;
    out.full_move = r.full_move;
    out.move      = r.move;
    out.cost      = merged_cost(qp, r.full_move);
    out.stats.cost_sequence.push_back(out.cost);
    out.stats.qas_found = 1;
    out.discrepancy     = r.discrepancy;
    return out;
}

} // namespace caspr
