#include <caspr/validate.hpp>

#include <caspr/emit.hpp>

#include <algorithm>
#include <functional>
#include <map>

namespace caspr {

namespace {

using VarSet = std::set<std::string>;

void add_vars(const Term& t, VarSet& out) {
    if (t.is_variable()) {
        out.insert(t.name);
    }
}

void add_vars(const Atom& a, VarSet& out) {
    for (const auto& t : a.args) {
        add_vars(t, out);
    }
}

void add_vars(const AggregateElement& e, VarSet& out);

void add_vars(const Literal& l, VarSet& out, bool include_aggregate_elements) {
    if (const auto* a = l.atom()) {
        add_vars(*a, out);
    }
    else if (const auto* c = std::get_if<Comparison>(&l.content)) {
        add_vars(c->lhs, out);
        add_vars(c->rhs, out);
    }
    else {
        const auto& agg = std::get<Aggregate>(l.content);
        add_vars(agg.guard, out);
        if (include_aggregate_elements) {
            for (const auto& e : agg.elements) {
                add_vars(e, out);
            }
        }
    }
}

void add_vars(const AggregateElement& e, VarSet& out) {
    for (const auto& t : e.terms) {
        add_vars(t, out);
    }
    for (const auto& l : e.condition) {
        add_vars(l, out, true);
    }
}

VarSet positive_vars(const Body& body) {
    VarSet out;
    for (const auto& l : body) {
        if (l.is_positive_atom()) {
            add_vars(*l.atom(), out);
        }
    }
    return out;
}

// `X = t` with `t` bound and aggregate assignments `#sum{...} = X` bind X.
void close_under_assignments(const Body& body, VarSet& bound) {
    bool changed = true;
    auto is_bound = [&](const Term& t) { return !t.is_variable() || bound.contains(t.name); };
    while (changed) {
        changed = false;
        for (const auto& l : body) {
            if (l.negated) {
                continue;
            }
            if (const auto* c = std::get_if<Comparison>(&l.content); c && c->op == CmpOp::Eq) {
                if (c->lhs.is_variable() && !bound.contains(c->lhs.name) && is_bound(c->rhs)) {
                    changed = bound.insert(c->lhs.name).second || changed;
                }
                if (c->rhs.is_variable() && !bound.contains(c->rhs.name) && is_bound(c->lhs)) {
                    changed = bound.insert(c->rhs.name).second || changed;
                }
            }
            else if (const auto* agg = std::get_if<Aggregate>(&l.content); agg && agg->op == CmpOp::Eq) {
                if (agg->guard.is_variable()) {
                    changed = bound.insert(agg->guard.name).second || changed;
                }
            }
        }
    }
}

std::optional<std::string> unsafe_in(const std::optional<Atom>& head, const Body& body, const std::vector<Term>& extra) {
    VarSet outside;
    if (head) {
        add_vars(*head, outside);
    }
    for (const auto& t : extra) {
        add_vars(t, outside);
    }
    for (const auto& l : body) {
        add_vars(l, outside, false);
    }
    VarSet bound = positive_vars(body);
    close_under_assignments(body, bound);
    for (const auto& v : outside) {
        if (v != "_" && !bound.contains(v)) {
            return v;
        }
    }
    for (const auto& l : body) {
        const auto* agg = std::get_if<Aggregate>(&l.content);
        if (!agg) {
            continue;
        }
        for (const auto& e : agg->elements) {
            VarSet element_vars;
            add_vars(e, element_vars);
            VarSet local_bound = positive_vars(e.condition);
            close_under_assignments(e.condition, local_bound);
            for (const auto& v : element_vars) {
                bool global = outside.contains(v);
                if (global ? !bound.contains(v) : !local_bound.contains(v)) {
                    return v;
                }
            }
        }
    }
    return std::nullopt;
}

bool has_aggregate(const Body& body) {
    return std::ranges::any_of(body, [](const Literal& l) { return std::holds_alternative<Aggregate>(l.content); });
}

// Choice-rule complements introduced by the parser.
bool generated_complement(std::string_view pred) { return pred.starts_with("caspr_n_"); }

} // namespace

std::string_view to_string(Diagnostic::Kind k) noexcept {
    switch (k) {
        case Diagnostic::Kind::ReservedPrefix         : return "ReservedPrefix";
        case Diagnostic::Kind::HeadOverlap            : return "HeadOverlap";
        case Diagnostic::Kind::NotStratified          : return "NotStratified";
        case Diagnostic::Kind::WeakInConstraintProgram: return "WeakInConstraintProgram";
        case Diagnostic::Kind::GlobalVocabulary       : return "GlobalVocabulary";
        case Diagnostic::Kind::Unsafe                 : return "Unsafe";
        case Diagnostic::Kind::AggregateInWeakBody    : return "AggregateInWeakBody";
        case Diagnostic::Kind::LevelOverlap           : return "LevelOverlap";
    }
    return "?";
}

std::string to_string(const Diagnostic& d) {
    std::string sev = d.severity == Diagnostic::Severity::Error ? "error" : "warning";
    return sev + " [" + std::string(to_string(d.kind)) + "] " + d.where + ": " + d.message;
}

std::optional<std::string> unsafe_variable(const Rule& r) { return unsafe_in(r.head, r.body, {}); }

std::optional<std::string> unsafe_variable(const WeakConstraint& w) {
    std::vector<Term> extra = w.tuple;
    extra.push_back(w.weight);
    return unsafe_in(std::nullopt, w.body, extra);
}

bool is_stratified(const Program& p) {
    struct Edge {
        PredicateSig to;
        bool         negative;
    };
    std::map<PredicateSig, std::vector<Edge>> graph;
    std::function<void(const PredicateSig&, const Body&, bool)> add_edges = [&](const PredicateSig& from, const Body& body,
                                                                                 bool inside_aggregate) {
        for (const auto& l : body) {
            if (const auto* a = l.atom()) {
                graph[from].push_back({signature_of(*a), l.negated || inside_aggregate});
                graph.try_emplace(signature_of(*a));
            }
            else if (const auto* agg = std::get_if<Aggregate>(&l.content)) {
                for (const auto& e : agg->elements) {
                    add_edges(from, e.condition, true);
                }
            }
        }
    };
    for (const auto& r : p.rules) {
        if (r.head) {
            auto from = signature_of(*r.head);
            graph.try_emplace(from);
            add_edges(from, r.body, false);
        }
    }

    // Tarjan's SCC; a negative edge inside one component breaks stratification.
    std::map<PredicateSig, int> index;
    std::map<PredicateSig, int> low;
    std::map<PredicateSig, int> component;
    std::vector<PredicateSig>   stack;
    std::set<PredicateSig>      on_stack;
    int                         counter = 0;
    int                         comps   = 0;
    std::function<void(const PredicateSig&)> visit = [&](const PredicateSig& v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack.insert(v);
        for (const auto& e : graph[v]) {
            if (!index.contains(e.to)) {
                visit(e.to);
                low[v] = std::min(low[v], low[e.to]);
            }
            else if (on_stack.contains(e.to)) {
                low[v] = std::min(low[v], index[e.to]);
            }
        }
        if (low[v] == index[v]) {
            PredicateSig w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack.erase(w);
                component[w] = comps;
            } while (w != v);
            ++comps;
        }
    };
    for (const auto& [v, _] : graph) {
        if (!index.contains(v)) {
            visit(v);
        }
    }
    for (const auto& [from, edges] : graph) {
        for (const auto& e : edges) {
            if (e.negative && component[from] == component[e.to]) {
                return false;
            }
        }
    }
    return true;
}

std::vector<Diagnostic> validate(const Program& p, std::string_view where) {
    using K = Diagnostic::Kind;
    std::vector<Diagnostic> out;
    auto                    at = [&](std::string_view kind, std::size_t i) {
        return std::string(where) + " " + std::string(kind) + " " + std::to_string(i + 1);
    };
    for (const auto& pred : p.predicates()) {
        if (is_reserved(pred.name) && !generated_complement(pred.name)) {
            out.push_back({K::ReservedPrefix, Diagnostic::Severity::Error, std::string(where),
                           "predicate " + pred.name + " uses the reserved prefix"});
        }
    }
    for (std::size_t i = 0; i < p.rules.size(); ++i) {
        if (auto v = unsafe_variable(p.rules[i])) {
            out.push_back({K::Unsafe, Diagnostic::Severity::Error, at("rule", i),
                           "unsafe variable " + *v + " in " + to_text(p.rules[i])});
        }
    }
    for (std::size_t i = 0; i < p.weaks.size(); ++i) {
        if (has_aggregate(p.weaks[i].body)) {
            out.push_back({K::AggregateInWeakBody, Diagnostic::Severity::Error, at("weak constraint", i),
                           "aggregates are not supported in weak constraint bodies"});
        }
        if (auto v = unsafe_variable(p.weaks[i])) {
            out.push_back({K::Unsafe, Diagnostic::Severity::Error, at("weak constraint", i),
                           "unsafe variable " + *v + " in " + to_text(p.weaks[i])});
        }
    }
    return out;
}

std::vector<Diagnostic> validate(const QuantifiedProgram& qp) {
    using K = Diagnostic::Kind;
    std::vector<Diagnostic> out;
    auto                    append = [&](std::vector<Diagnostic> d) { out.insert(out.end(), d.begin(), d.end()); };
    append(validate(qp.p1, "P1"));
    append(validate(qp.p2, "P2"));
    append(validate(qp.c, "C"));
    Program global;
    global.weaks = qp.cw;
    append(validate(global, "C^w"));

    auto h1 = qp.p1.head_predicates();
    auto h2 = qp.p2.head_predicates();
    for (const auto& p : h2) {
        if (h1.contains(p)) {
            out.push_back({K::HeadOverlap, Diagnostic::Severity::Error, "P1/P2",
                           "predicate " + p.name + "/" + std::to_string(p.arity) + " is defined in both P1 and P2"});
        }
    }
    for (const auto& p : qp.c.head_predicates()) {
        if (h1.contains(p) || h2.contains(p)) {
            out.push_back({K::HeadOverlap, Diagnostic::Severity::Error, "C",
                           "predicate " + p.name + "/" + std::to_string(p.arity) + " is also defined in P1 or P2"});
        }
    }
    if (!qp.c.weaks.empty()) {
        out.push_back({K::WeakInConstraintProgram, Diagnostic::Severity::Error, "C",
                       "the check program must not contain weak constraints"});
    }
    if (!is_stratified(qp.c)) {
        out.push_back({K::NotStratified, Diagnostic::Severity::Error, "C", "the check program is not stratified"});
    }
    auto p1_preds = qp.p1.predicates();
    for (const auto& p : global.predicates()) {
        if (!p1_preds.contains(p)) {
            out.push_back({K::GlobalVocabulary, Diagnostic::Severity::Error, "C^w",
                           "predicate " + p.name + "/" + std::to_string(p.arity) + " does not occur in P1"});
        }
    }
    auto l1 = qp.p1.levels();
    for (auto l : qp.p2.levels()) {
        if (l1.contains(l)) {
            out.push_back({K::LevelOverlap, Diagnostic::Severity::Warning, "P1/P2",
                           "level " + std::to_string(l) + " is used by weak constraints of both P1 and P2"});
        }
    }
    return out;
}

bool has_errors(const std::vector<Diagnostic>& diags) noexcept {
    return std::ranges::any_of(diags, [](const Diagnostic& d) { return d.severity == Diagnostic::Severity::Error; });
}

} // namespace caspr
