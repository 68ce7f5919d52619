#include "brute.hpp"

#include <algorithm>
#include <stdexcept>

namespace brute {

namespace {

struct GroundRule {
    std::optional<Atom> head;
    std::vector<Atom>   pos;
    std::vector<Atom>   neg;
};

void split(const caspr::Body& body, std::vector<Atom>& pos, std::vector<Atom>& neg) {
    for (const auto& l : body) {
        const Atom* a = l.atom();
        if (a == nullptr) {
            throw std::invalid_argument("brute: only atom literals are supported");
        }
        for (const auto& t : a->args) {
            if (t.kind == caspr::Term::Kind::Variable) {
                throw std::invalid_argument("brute: program is not ground");
            }
        }
        (l.negated ? neg : pos).push_back(*a);
    }
}

bool body_true(const std::vector<Atom>& pos, const std::vector<Atom>& neg, const Interpretation& m) {
    return std::ranges::all_of(pos, [&](const Atom& a) { return m.contains(a); }) &&
           std::ranges::none_of(neg, [&](const Atom& a) { return m.contains(a); });
}

} // namespace

std::vector<Interpretation> answer_sets(const Program& p) {
    std::vector<GroundRule> rules;
    std::set<Atom>          heads;
    for (const auto& r : p.rules) {
        GroundRule g{r.head, {}, {}};
        split(r.body, g.pos, g.neg);
        if (r.head) {
            heads.insert(*r.head);
        }
        rules.push_back(std::move(g));
    }
    std::vector<Atom> atoms(heads.begin(), heads.end());
    if (atoms.size() > 22) {
        throw std::invalid_argument("brute: too many atoms");
    }
    std::vector<Interpretation> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << atoms.size()); ++mask) {
        Interpretation m;
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            if ((mask >> i & 1) != 0) {
                m.insert(atoms[i]);
            }
        }
        // Least model of the reduct.
        Interpretation lm;
        for (bool changed = true; changed;) {
            changed = false;
            for (const auto& r : rules) {
                if (!r.head || lm.contains(*r.head)) {
                    continue;
                }
                bool neg_ok = std::ranges::none_of(r.neg, [&](const Atom& a) { return m.contains(a); });
                bool pos_ok = std::ranges::all_of(r.pos, [&](const Atom& a) { return lm.contains(a); });
                if (neg_ok && pos_ok) {
                    lm.insert(*r.head);
                    changed = true;
                }
            }
        }
        if (lm != m) {
            continue;
        }
        bool violated = std::ranges::any_of(rules, [&](const GroundRule& r) { return !r.head && body_true(r.pos, r.neg, m); });
        if (!violated) {
            out.push_back(std::move(m));
        }
    }
    return out;
}

Cost cost(const std::vector<caspr::WeakConstraint>& weaks, const Interpretation& m) {
    std::set<std::tuple<std::int64_t, std::int64_t, std::vector<caspr::Term>>> seen;
    Cost                                                                        c;
    for (const auto& w : weaks) {
        c[w.level] += 0;
        std::vector<Atom> pos, neg;
        split(w.body, pos, neg);
        if (body_true(pos, neg, m)) {
            seen.emplace(w.weight.value, w.level, w.tuple);
        }
    }
    for (const auto& [weight, level, tuple] : seen) {
        c[level] += weight;
    }
    return c;
}

Cost normalized(Cost c) {
    std::erase_if(c, [](const auto& e) { return e.second == 0; });
    return c;
}

bool better(const Cost& a, const Cost& b) {
    std::set<std::int64_t> levels;
    for (const auto& [l, _] : a) levels.insert(l);
    for (const auto& [l, _] : b) levels.insert(l);
    for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
        auto ca = a.contains(*it) ? a.at(*it) : 0;
        auto cb = b.contains(*it) ? b.at(*it) : 0;
        if (ca != cb) {
            return ca < cb;
        }
    }
    return false;
}

std::vector<Interpretation> optimal(const Program& p) {
    auto all = answer_sets(p);
    std::vector<Cost> costs;
    for (const auto& m : all) {
        costs.push_back(cost(p.weaks, m));
    }
    std::vector<Interpretation> out;
    for (std::size_t i = 0; i < all.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < all.size() && !dominated; ++j) {
            dominated = better(costs[j], costs[i]);
        }
        if (!dominated) {
            out.push_back(all[i]);
        }
    }
    return out;
}

namespace {

Program with_facts(Program p, const Interpretation& m) {
    for (const auto& a : m) {
        p.add(caspr::Rule::fact(a));
    }
    return p;
}

std::set<Atom> head_atoms(const Program& p) {
    std::set<Atom> out;
    for (const auto& r : p.rules) {
        if (r.head) {
            out.insert(*r.head);
        }
    }
    return out;
}

} // namespace

std::vector<Interpretation> inner(const QuantifiedProgram& qp, const Interpretation& m1) {
    return optimal(with_facts(qp.p2, m1));
}

bool satisfies(const Program& c, const Interpretation& m) { return !answer_sets(with_facts(c, m)).empty(); }

std::set<Interpretation> countermoves(const QuantifiedProgram& qp, const Interpretation& m1) {
    const auto               heads = head_atoms(qp.p2);
    const bool               want  = !qp.is_existential();
    std::set<Interpretation> out;
    for (const auto& m2 : inner(qp, m1)) {
        if (satisfies(qp.c, m2) == want) {
            Interpretation proj;
            std::ranges::copy_if(m2, std::inserter(proj, proj.end()), [&](const Atom& a) { return heads.contains(a); });
            out.insert(std::move(proj));
        }
    }
    return out;
}

bool inner_coherent(const QuantifiedProgram& qp, const Interpretation& m1) {
    auto ms = inner(qp, m1);
    auto ok = [&](const Interpretation& m2) { return satisfies(qp.c, m2); };
    return qp.q2 == caspr::Quantifier::Forall ? std::ranges::all_of(ms, ok) : std::ranges::any_of(ms, ok);
}

bool coherent(const QuantifiedProgram& qp) {
    auto moves = optimal(qp.p1);
    auto ok    = [&](const Interpretation& m1) { return inner_coherent(qp, m1); };
    return qp.q1 == caspr::Quantifier::Forall ? std::ranges::all_of(moves, ok) : std::ranges::any_of(moves, ok);
}

std::vector<Interpretation> qas(const QuantifiedProgram& qp) {
    std::vector<Interpretation> out;
    for (const auto& m1 : optimal(qp.p1)) {
        if (inner_coherent(qp, m1)) {
            out.push_back(m1);
        }
    }
    return out;
}

std::optional<Cost> optimal_qas_cost(const QuantifiedProgram& qp) {
    auto weaks = qp.p1.weaks;
    weaks.insert(weaks.end(), qp.cw.begin(), qp.cw.end());
    std::optional<Cost> best;
    for (const auto& m : qas(qp)) {
        auto c = cost(weaks, m);
        if (!best || better(c, *best)) {
            best = c;
        }
    }
    return best;
}

} // namespace brute
