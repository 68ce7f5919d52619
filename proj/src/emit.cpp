#include <caspr/emit.hpp>

namespace caspr {

namespace {
template <class Range, class Fn>
std::string join(const Range& r, std::string_view sep, Fn fn) {
    std::string out;
    bool        first = true;
    for (const auto& x : r) {
        if (!first) {
            out += sep;
        }
        out += fn(x);
        first = false;
    }
    return out;
}

std::string body_text(const Body& b) {
    return join(b, ", ", [](const Literal& l) { return to_text(l); });
}
} // namespace

std::string to_text(const Term& t) {
    return t.is_integer() ? std::to_string(t.value) : t.name;
}

std::string to_text(const Atom& a) {
    if (a.args.empty()) {
        return a.predicate;
    }
    return a.predicate + "(" + join(a.args, ",", [](const Term& t) { return to_text(t); }) + ")";
}

std::string to_text(CmpOp op) {
    switch (op) {
        case CmpOp::Eq: return "=";
        case CmpOp::Ne: return "!=";
        case CmpOp::Lt: return "<";
        case CmpOp::Le: return "<=";
        case CmpOp::Gt: return ">";
        case CmpOp::Ge: return ">=";
    }
    return "?";
}

std::string to_text(const Literal& l) {
    std::string prefix = l.negated ? "not " : "";
    if (const auto* a = l.atom()) {
        return prefix + to_text(*a);
    }
    if (const auto* c = std::get_if<Comparison>(&l.content)) {
        return prefix + to_text(c->lhs) + " " + to_text(c->op) + " " + to_text(c->rhs);
    }
    const auto& agg = std::get<Aggregate>(l.content);
    auto        elems = join(agg.elements, "; ", [](const AggregateElement& e) {
        auto terms = join(e.terms, ",", [](const Term& t) { return to_text(t); });
        return e.condition.empty() ? terms : terms + " : " + body_text(e.condition);
    });
    return prefix + (agg.fn == AggregateFn::Sum ? "#sum{" : "#count{") + elems + "} " + to_text(agg.op) + " " +
           to_text(agg.guard);
}

std::string to_text(const Rule& r) {
    if (!r.head) {
        return ":- " + body_text(r.body) + ".";
    }
    if (r.body.empty()) {
        return to_text(*r.head) + ".";
    }
    return to_text(*r.head) + " :- " + body_text(r.body) + ".";
}

std::string to_text(const WeakConstraint& w) {
    std::string out = ":~ " + body_text(w.body) + ". [" + to_text(w.weight) + "@" + std::to_string(w.level);
    for (const auto& t : w.tuple) {
        out += "," + to_text(t);
    }
    return out + "]";
}

std::string to_text(const Interpretation& m) {
    return "{" + join(m, ", ", [](const Atom& a) { return to_text(a); }) + "}";
}

std::string emit_text(const Program& p) {
    std::string out;
    for (const auto& r : p.rules) {
        out += to_text(r);
        out += '\n';
    }
    for (const auto& w : p.weaks) {
        out += to_text(w);
        out += '\n';
    }
    return out;
}

std::string emit_text(const QuantifiedProgram& qp) {
    auto directive = [](Quantifier q) { return q == Quantifier::Exists ? "%@exists\n" : "%@forall\n"; };
    std::string out = directive(qp.q1) + emit_text(qp.p1) + directive(qp.q2) + emit_text(qp.p2);
    if (!qp.c.empty() || !qp.cw.empty()) {
        out += "%@constraint\n" + emit_text(qp.c);
    }
    if (!qp.cw.empty()) {
        out += "%@global\n";
        for (const auto& w : qp.cw) {
            out += to_text(w) + "\n";
        }
    }
    return out;
}

} // namespace caspr
