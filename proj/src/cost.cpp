#include <caspr/cost.hpp>

#include <caspr/emit.hpp>

#include <algorithm>
#include <tuple>
#include <unordered_map>

namespace caspr {

std::int64_t CostVector::at(std::int64_t level) const noexcept {
    auto it = entries_.find(level);
    return it == entries_.end() ? 0 : it->second;
}

std::set<std::int64_t> CostVector::levels() const {
    std::set<std::int64_t> out;
    for (const auto& [l, _] : entries_) {
        out.insert(l);
    }
    return out;
}

CostVector CostVector::merged(const CostVector& other) const {
    CostVector out = *this;
    for (const auto& [l, c] : other.entries_) {
        out.add(l, c);
    }
    return out;
}

bool CostVector::operator==(const CostVector& o) const {
    auto levels_a = levels();
    auto levels_b = o.levels();
    levels_a.insert(levels_b.begin(), levels_b.end());
    return std::ranges::all_of(levels_a, [&](std::int64_t l) { return at(l) == o.at(l); });
}

std::string to_string(const CostVector& c) {
    std::string out = "{";
    bool        first = true;
    for (auto it = c.entries().rbegin(); it != c.entries().rend(); ++it) {
        out += first ? "" : ", ";
        out += std::to_string(it->first) + ":" + std::to_string(it->second);
        first = false;
    }
    return out + "}";
}

bool dominates(const CostVector& a, const CostVector& b) {
    auto levels = a.levels();
    auto lb     = b.levels();
    levels.insert(lb.begin(), lb.end());
    for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
        auto ca = a.at(*it);
        auto cb = b.at(*it);
        if (ca != cb) {
            return cb > ca;
        }
    }
    return false;
}

Term apply(const Substitution& s, const Term& t) {
    if (t.is_variable()) {
        if (auto it = s.find(t.name); it != s.end()) {
            return it->second;
        }
    }
    return t;
}

Atom apply(const Substitution& s, const Atom& a) {
    Atom out{a.predicate, {}};
    out.args.reserve(a.args.size());
    for (const auto& t : a.args) {
        out.args.push_back(caspr::apply(s, t));
    }
    return out;
}

namespace {

struct SigHash {
    std::size_t operator()(const PredicateSig& p) const noexcept {
        return std::hash<std::string>{}(p.name) ^ (p.arity * 0x9e3779b97f4a7c15ULL);
    }
};

using AtomIndex = std::unordered_map<PredicateSig, std::vector<const Atom*>, SigHash>;

AtomIndex index_of(const Interpretation& model) {
    AtomIndex idx;
    for (const auto& a : model) {
        idx[signature_of(a)].push_back(&a);
    }
    return idx;
}

bool unify(const Atom& pattern, const Atom& ground, Substitution& s) {
    for (std::size_t i = 0; i < pattern.args.size(); ++i) {
        const auto& p = pattern.args[i];
        if (p.is_variable()) {
            auto [it, fresh] = s.try_emplace(p.name, ground.args[i]);
            if (!fresh && it->second != ground.args[i]) {
                return false;
            }
        }
        else if (p != ground.args[i]) {
            return false;
        }
    }
    return true;
}

class Matcher {
public:
    Matcher(const Body& body, const Interpretation& model, const std::function<void(const Substitution&)>& fn)
        : model_(model), index_(index_of(model)), fn_(fn) {
        for (const auto& lit : body) {
            if (std::holds_alternative<Aggregate>(lit.content)) {
                throw CostError(CostError::Kind::AggregateInWeakBody, "aggregate in body: " + to_text(lit));
            }
            (lit.is_positive_atom() ? positive_ : rest_).push_back(&lit);
        }
    }

    void run() {
        Substitution s;
        match(0, s);
    }

private:
    void match(std::size_t i, Substitution& s) {
        if (i == positive_.size()) {
            check_rest(0, s);
            return;
        }
        const Atom& pattern = *positive_[i]->atom();
        auto        it      = index_.find(signature_of(pattern));
        if (it == index_.end()) {
            return;
        }
        for (const Atom* candidate : it->second) {
            Substitution next = s;
            if (unify(pattern, *candidate, next)) {
                match(i + 1, next);
            }
        }
    }

    // Comparisons may bind one side through `=`; negated atoms need ground args.
    void check_rest(std::size_t i, Substitution& s) {
        if (i == rest_.size()) {
            fn_(s);
            return;
        }
        const Literal& lit = *rest_[i];
        if (const auto* a = lit.atom()) {
            auto g = caspr::apply(s, *a);
            if (!g.is_ground()) {
                throw CostError(CostError::Kind::NonGroundWeight, "unbound variable in negated literal: " + to_text(lit));
            }
            bool present = model_.contains(g);
            if (present != lit.negated) {
                check_rest(i + 1, s);
            }
            return;
        }
        const auto& cmp = std::get<Comparison>(lit.content);
        Term        l   = caspr::apply(s, cmp.lhs);
        Term        r   = caspr::apply(s, cmp.rhs);
        if (cmp.op == CmpOp::Eq && l.is_variable() != r.is_variable()) {
            Substitution next = s;
            if (l.is_variable()) {
                next[l.name] = r;
            }
            else {
                next[r.name] = l;
            }
            check_rest(i + 1, next);
            return;
        }
        if (!l.is_ground() || !r.is_ground()) {
            throw CostError(CostError::Kind::NonGroundWeight, "unbound variable in comparison: " + to_text(lit));
        }
        bool ok = holds(cmp.op, l <=> r);
        if (ok != lit.negated) {
            check_rest(i + 1, s);
        }
    }

    const Interpretation&                            model_;
    AtomIndex                                        index_;
    const std::function<void(const Substitution&)>& fn_;
    std::vector<const Literal*>                      positive_;
    std::vector<const Literal*>                      rest_;
};

} // namespace

void for_each_match(const Body& body, const Interpretation& model, const std::function<void(const Substitution&)>& fn) {
    Matcher(body, model, fn).run();
}

CostVector evaluate_cost(std::span<const WeakConstraint> weaks, const Interpretation& model) {
    using Violation = std::tuple<Term, std::int64_t, std::vector<Term>>;
    std::set<Violation> violations;
    CostVector          out;
    for (const auto& w : weaks) {
        out.add(w.level, 0);
        for_each_match(w.body, model, [&](const Substitution& s) {
            Term weight = caspr::apply(s, w.weight);
            if (!weight.is_integer()) {
                throw CostError(CostError::Kind::NonGroundWeight,
                                "weight does not evaluate to an integer: " + to_text(weight));
            }
            std::vector<Term> tuple;
            tuple.reserve(w.tuple.size());
            for (const auto& t : w.tuple) {
                auto g = caspr::apply(s, t);
                if (!g.is_ground()) {
                    throw CostError(CostError::Kind::NonGroundWeight, "unbound tuple term: " + to_text(t));
                }
                tuple.push_back(std::move(g));
            }
            violations.emplace(std::move(weight), w.level, std::move(tuple));
        });
    }
    for (const auto& [weight, level, tuple] : violations) {
        out.add(level, weight.value);
    }
    return out;
}

} // namespace caspr
