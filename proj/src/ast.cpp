#include <caspr/ast.hpp>

#include <algorithm>

namespace caspr {

bool is_reserved(std::string_view predicate) noexcept { return predicate.starts_with(kReservedPrefix); }

bool Atom::is_ground() const noexcept {
    return std::ranges::all_of(args, [](const Term& t) { return t.is_ground(); });
}

CmpOp flip(CmpOp op) noexcept {
    switch (op) {
        case CmpOp::Lt: return CmpOp::Gt;
        case CmpOp::Le: return CmpOp::Ge;
        case CmpOp::Gt: return CmpOp::Lt;
        case CmpOp::Ge: return CmpOp::Le;
        default       : return op;
    }
}

bool holds(CmpOp op, std::strong_ordering ord) noexcept {
    switch (op) {
        case CmpOp::Eq: return ord == 0;
        case CmpOp::Ne: return ord != 0;
        case CmpOp::Lt: return ord < 0;
        case CmpOp::Le: return ord <= 0;
        case CmpOp::Gt: return ord > 0;
        case CmpOp::Ge: return ord >= 0;
    }
    return false;
}

bool                 AggregateElement::operator==(const AggregateElement&) const  = default;
std::strong_ordering AggregateElement::operator<=>(const AggregateElement&) const = default;

Program& Program::append(const Program& other) {
    rules.insert(rules.end(), other.rules.begin(), other.rules.end());
    weaks.insert(weaks.end(), other.weaks.begin(), other.weaks.end());
    return *this;
}

std::set<PredicateSig> Program::head_predicates() const {
    std::set<PredicateSig> out;
    for (const auto& r : rules) {
        if (r.head) {
            out.insert(signature_of(*r.head));
        }
    }
    return out;
}

namespace {
void collect(const Body& body, std::set<PredicateSig>& out) {
    for (const auto& lit : body) {
        if (const auto* a = lit.atom()) {
            out.insert(signature_of(*a));
        }
        else if (const auto* agg = std::get_if<Aggregate>(&lit.content)) {
            for (const auto& e : agg->elements) {
                collect(e.condition, out);
            }
        }
    }
}
} // namespace

std::set<PredicateSig> Program::predicates() const {
    std::set<PredicateSig> out;
    for (const auto& r : rules) {
        if (r.head) {
            out.insert(signature_of(*r.head));
        }
        collect(r.body, out);
    }
    for (const auto& w : weaks) {
        collect(w.body, out);
    }
    return out;
}

std::set<std::int64_t> Program::levels() const {
    std::set<std::int64_t> out;
    for (const auto& w : weaks) {
        out.insert(w.level);
    }
    return out;
}

std::int64_t Program::min_level(std::int64_t fallback) const {
    auto lv = levels();
    return lv.empty() ? fallback : *lv.begin();
}

bool Program::operator==(const Program& o) const {
    if (rules.size() != o.rules.size() || weaks.size() != o.weaks.size()) {
        return false;
    }
    auto sorted = [](auto v) {
        std::ranges::sort(v);
        return v;
    };
    return sorted(rules) == sorted(o.rules) && sorted(weaks) == sorted(o.weaks);
}

Interpretation project(const Interpretation& m, const std::set<PredicateSig>& preds) {
    Interpretation out;
    for (const auto& a : m) {
        if (preds.contains(signature_of(a))) {
            out.insert(a);
        }
    }
    return out;
}

Interpretation strip_reserved(const Interpretation& m) {
    Interpretation out;
    for (const auto& a : m) {
        if (!is_reserved(a.predicate)) {
            out.insert(a);
        }
    }
    return out;
}

} // namespace caspr
