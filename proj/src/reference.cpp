#include <caspr/reference.hpp>

#include <algorithm>

namespace caspr {

namespace {

const Atom kRefViolated{"caspr_ref_violated"};

// C with its constraints turned into rules for one fresh atom. C is stratified
// and shares no head with P1 or P2, so on top of a fixed model it has exactly
// one answer set, and that answer set contains the atom iff the model
// violates C.
Program violation_detector(const Program& c) {
    Program out;
    for (const auto& r : c.rules) {
        out.add(r.is_constraint() ? Rule{kRefViolated, r.body} : r);
    }
    return out;
}

SolveOutcome checked(SolveOutcome out, const char* what) {
    if (out.status == SolveStatus::Unknown) {
        throw ReferenceError(ReferenceError::Kind::Unknown, std::string(what) + ": " + out.reason);
    }
    return out;
}

} // namespace

CostVector merged_cost(const QuantifiedProgram& qp, const Interpretation& model) {
    std::vector<WeakConstraint> all = qp.p1.weaks;
    all.insert(all.end(), qp.cw.begin(), qp.cw.end());
    return evaluate_cost(all, model);
}

const std::vector<Interpretation>& Reference::p1_optima(const Program& p1) {
    if (p1_cache_ && p1_cache_->first == p1) {
        return p1_cache_->second;
    }
    SolverConfig cfg = oracle_.config();
    cfg.model_limit  = static_cast<int>(cap_ + 1);
    Oracle local(cfg);
    auto   out = checked(local.enumerate_optimal(p1), "enumerating OptAS(P1)");
    if (out.models.size() > cap_) {
        throw ReferenceError(ReferenceError::Kind::CapExceeded,
                             "P1 has more than " + std::to_string(cap_) + " optimal answer sets");
    }
    std::ranges::sort(out.models);
    p1_cache_.emplace(p1, std::move(out.models));
    return p1_cache_->second;
}

std::vector<Interpretation> Reference::moves(const QuantifiedProgram& qp) {
    auto                        heads = qp.p1.head_predicates();
    std::vector<Interpretation> out;
    for (const auto& m : p1_optima(qp.p1)) {
        out.push_back(project(m, heads));
    }
    return out;
}

std::vector<std::pair<Interpretation, bool>> Reference::inner(const QuantifiedProgram& qp, const Interpretation& m1) {
    Program prog = qp.p2;
    for (const auto& a : m1) {
        prog.add(Rule::fact(a));
    }
    prog.append(violation_detector(qp.c));
    auto out = checked(oracle_.enumerate_optimal(prog), "enumerating inner optima");
    std::vector<std::pair<Interpretation, bool>> res;
    for (auto& m : out.models) {
        bool violated = m.erase(kRefViolated) > 0;
        res.emplace_back(std::move(m), !violated);
    }
    return res;
}

std::set<Interpretation> Reference::countermoves(const QuantifiedProgram& qp, const Interpretation& m1) {
    auto                     heads = qp.p2.head_predicates();
    std::set<Interpretation> out;
    for (const auto& [m2, sat] : inner(qp, m1)) {
        if (sat == (qp.q1 == Quantifier::Forall)) {
            out.insert(project(m2, heads));
        }
    }
    return out;
}

bool Reference::inner_coherent(const QuantifiedProgram& qp, const Interpretation& m1) {
    auto optima = inner(qp, m1);
    auto sat    = [](const auto& p) { return p.second; };
    return qp.q2 == Quantifier::Forall ? std::ranges::all_of(optima, sat) : std::ranges::any_of(optima, sat);
}

bool Reference::coherent(const QuantifiedProgram& qp) {
    const auto ms = moves(qp);
    for (const auto& m : ms) {
        bool ok = inner_coherent(qp, m);
        if (qp.q1 == Quantifier::Exists && ok) {
            return true;
        }
        if (qp.q1 == Quantifier::Forall && !ok) {
            return false;
        }
    }
    return qp.q1 == Quantifier::Forall;
}

std::vector<Interpretation> Reference::enumerate_qas(const QuantifiedProgram& qp) {
    if (qp.q1 != Quantifier::Exists) {
        throw ReferenceError(ReferenceError::Kind::NotExistential, "quantified answer sets need q1 = exists");
    }
    std::vector<Interpretation> out;
    for (const auto& m : moves(qp)) {
        if (inner_coherent(qp, m)) {
            out.push_back(m);
        }
    }
    return out;
}

namespace {

std::pair<std::vector<Interpretation>, std::optional<CostVector>> cheapest(const QuantifiedProgram&         qp,
                                                                         const std::vector<Interpretation>& qas) {
    if (qas.empty()) {
        return {{}, std::nullopt};
    }
    std::vector<CostVector> costs;
    for (const auto& m : qas) {
        costs.push_back(merged_cost(qp, m));
    }
    CostVector best = costs.front();
    for (const auto& c : costs) {
        if (dominates(c, best)) {
            best = c;
        }
    }
    std::vector<Interpretation> out;
    for (std::size_t i = 0; i < qas.size(); ++i) {
        if (costs[i] == best) {
            out.push_back(qas[i]);
        }
    }
    return {out, best};
}

} // namespace

std::pair<std::vector<Interpretation>, std::optional<CostVector>> Reference::optimal_qas(const QuantifiedProgram& qp) {
    return cheapest(qp, enumerate_qas(qp));
}

ReferenceReport Reference::report(const QuantifiedProgram& qp) {
    ReferenceReport r;
    if (qp.q1 == Quantifier::Exists) {
        r.qas            = enumerate_qas(qp);
        auto [opt, cost] = cheapest(qp, r.qas);
        r.coherent       = !r.qas.empty();
        r.opt_qas        = std::move(opt);
        r.opt_cost       = cost;
    }
    else {
        r.coherent = coherent(qp);
    }
    return r;
}

} // namespace caspr
