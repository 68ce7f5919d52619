#include <caspr/transform.hpp>

#include <caspr/emit.hpp>
#include <caspr/validate.hpp>

#include <map>

namespace caspr {

namespace {

std::vector<Term> fresh_vars(std::string_view stem, std::size_t n) {
    std::vector<Term> out;
    for (std::size_t i = 1; i <= n; ++i) {
        out.push_back(Term::variable(std::string(stem) + std::to_string(i)));
    }
    return out;
}

bool matches(const PatternSet& pats, const Atom& a, bool negated) {
    return pats.contains(LiteralPattern{signature_of(a), negated});
}

void require_stratified(const Program& c) {
    if (!is_stratified(c)) {
        throw TransformError(TransformError::Kind::NotStratified, "check program is not stratified");
    }
}

} // namespace

PatternSet positive(const std::set<PredicateSig>& preds) {
    PatternSet out;
    for (const auto& p : preds) {
        out.insert({p, false});
    }
    return out;
}

PatternSet negative(const std::set<PredicateSig>& preds) {
    PatternSet out;
    for (const auto& p : preds) {
        out.insert({p, true});
    }
    return out;
}

PatternSet lits(const Program& p) {
    auto heads = p.head_predicates();
    auto out   = positive(heads);
    out.merge(negative(heads));
    return out;
}

Literal rename(const PatternSet& pats, const SignatureTag& tag, const Literal& l) {
    Literal out = l;
    if (auto* a = out.atom()) {
        if (matches(pats, *a, l.negated)) {
            a->predicate = tag.render(a->predicate);
        }
    }
    else if (auto* agg = std::get_if<Aggregate>(&out.content)) {
        for (auto& e : agg->elements) {
            e.condition = rename(pats, tag, e.condition);
        }
    }
    return out;
}

Body rename(const PatternSet& pats, const SignatureTag& tag, const Body& b) {
    Body out;
    out.reserve(b.size());
    for (const auto& l : b) {
        out.push_back(rename(pats, tag, l));
    }
    return out;
}

Rule rename(const PatternSet& pats, const SignatureTag& tag, const Rule& r) {
    Rule out{r.head, rename(pats, tag, r.body)};
    if (out.head && matches(pats, *out.head, false)) {
        out.head->predicate = tag.render(out.head->predicate);
    }
    return out;
}

WeakConstraint rename(const PatternSet& pats, const SignatureTag& tag, const WeakConstraint& w) {
    WeakConstraint out = w;
    out.body           = rename(pats, tag, w.body);
    return out;
}

Program rename(const PatternSet& pats, const SignatureTag& tag, const Program& p) {
    Program out;
    for (const auto& r : p.rules) {
        out.add(rename(pats, tag, r));
    }
    for (const auto& w : p.weaks) {
        out.add(rename(pats, tag, w));
    }
    return out;
}

Program fix(const Program& p1, const Interpretation& m) {
    auto    heads = p1.head_predicates();
    Program out;
    for (const auto& a : m) {
        if (!heads.contains(signature_of(a))) {
            throw TransformError(TransformError::Kind::NonHeadAtom,
                                 "atom " + to_text(a) + " is not over a head predicate of the program");
        }
        out.add(Rule::fact(a));
        out.add(Rule::fact(Atom("caspr_fix_" + a.predicate, a.args)));
    }
    for (const auto& p : heads) {
        auto vars = fresh_vars("X", p.arity);
        out.add(Rule::constraint({Literal::pos(Atom(p.name, vars)), Literal::neg(Atom("caspr_fix_" + p.name, vars))}));
    }
    return out;
}

Program complement(const Program& c) {
    require_stratified(c);
    Program out;
    for (const auto& r : c.rules) {
        out.add(r.is_constraint() ? Rule{kViolated, r.body} : r);
    }
    out.add(Rule::constraint({Literal::neg(kViolated)}));
    return out;
}

Program relaxed(const Program& c, std::int64_t level) {
    require_stratified(c);
    Program out;
    for (const auto& r : c.rules) {
        out.add(r.is_constraint() ? Rule{kUnsat, r.body} : r);
    }
    out.add(WeakConstraint{{Literal::pos(kUnsat)}, Term::integer(1), level, {}});
    return out;
}

Program ctr(const QuantifiedProgram& qp) {
    if (!qp.is_alternating()) {
        throw TransformError(TransformError::Kind::NonAlternating, "countermove program needs alternating quantifiers");
    }
    auto    lmin = qp.p2.min_level(0);
    Program out  = qp.p2;
    out.append(relaxed(qp.is_existential() ? complement(qp.c) : qp.c, lmin - 1));
    return out;
}

Program check_as(const Program& p2, const CountermoveRecord& rec) {
    auto    heads = p2.head_predicates();
    auto    pos   = rec.pos_tag();
    auto    neg   = rec.neg_tag();
    auto    fail  = rec.fail_atom();
    Program out;
    for (const auto& a : rec.ce) {
        out.add(Rule::fact(Atom(neg.render(a.predicate), a.args)));
    }
    auto neg_pats = negative(heads);
    auto pos_pats = positive(heads);
    for (const auto& r : p2.rules) {
        Rule reduct = rename(pos_pats, pos, rename(neg_pats, neg, r));
        if (r.is_constraint()) {
            out.add(Rule{fail, reduct.body});
        }
        else {
            out.add(std::move(reduct));
        }
    }
    for (const auto& p : heads) {
        auto vars = fresh_vars("X", p.arity);
        Atom ap(pos.render(p.name), vars);
        Atom an(neg.render(p.name), vars);
        out.add(Rule{fail, {Literal::pos(ap), Literal::neg(an)}});
        out.add(Rule{fail, {Literal::pos(an), Literal::neg(ap)}});
    }
    out.add(Rule{rec.as_atom(), {Literal::neg(fail)}});
    return out;
}

std::string violation_predicate(const SignatureTag& tag) { return "caspr_v_" + tag.suffix(); }
std::string cost_predicate(const SignatureTag& tag) { return "caspr_cl_" + tag.suffix(); }

Program cost_program(const Program& p, const SignatureTag& tag) {
    auto    v  = violation_predicate(tag);
    auto    cl = cost_predicate(tag);
    Program out;
    // Tuple arities used per level; each needs its own aggregate element.
    std::map<std::int64_t, std::set<std::size_t>> arities;
    for (const auto& w : p.weaks) {
        std::vector<Term> args{w.weight, Term::integer(w.level)};
        args.insert(args.end(), w.tuple.begin(), w.tuple.end());
        out.add(Rule{Atom(v, args), w.body});
        arities[w.level].insert(w.tuple.size());
    }
    for (const auto& [level, sizes] : arities) {
        Aggregate agg{AggregateFn::Sum, {}, CmpOp::Eq, Term::variable("T")};
        for (auto n : sizes) {
            auto              tuple = fresh_vars("T", n);
            std::vector<Term> terms{Term::variable("C")};
            terms.insert(terms.end(), tuple.begin(), tuple.end());
            std::vector<Term> args{Term::variable("C"), Term::integer(level)};
            args.insert(args.end(), tuple.begin(), tuple.end());
            agg.elements.push_back({terms, {Literal::pos(Atom(v, args))}});
        }
        out.add(Rule{Atom(cl, {Term::variable("T"), Term::integer(level)}), {Literal{agg, false}}});
    }
    return out;
}

Program clone_rules(const Program& p, const CountermoveRecord& rec) {
    Program rules_only;
    rules_only.rules = p.rules;
    return rename(lits(p), rec.clone_tag(), rules_only);
}

Program dominance_rules(const std::string& cl_a, const std::string& cl_b, const std::string& suffix, const Atom& dom) {
    auto L  = Term::variable("L");
    auto L1 = Term::variable("L1");
    auto C1 = Term::variable("C1");
    auto C2 = Term::variable("C2");
    Atom diff("caspr_diff_" + suffix, {L});
    Atom has_higher("caspr_hashigher_" + suffix, {L});
    Atom highest("caspr_highest_" + suffix, {L});
    Atom a(cl_a, {C1, L});
    Atom b(cl_b, {C2, L});

    Program out;
    out.add(Rule{diff, {Literal::pos(a), Literal::pos(b), Literal::cmp(C1, CmpOp::Ne, C2)}});
    out.add(Rule{has_higher,
                 {Literal::pos(diff), Literal::pos(Atom(diff.predicate, {L1})), Literal::cmp(L, CmpOp::Lt, L1)}});
    out.add(Rule{highest, {Literal::pos(diff), Literal::neg(has_higher)}});
    out.add(Rule{dom, {Literal::pos(highest), Literal::pos(a), Literal::pos(b), Literal::cmp(C2, CmpOp::Lt, C1)}});
    return out;
}

Program check_dom(const SignatureTag& tag_a, const SignatureTag& tag_b, const std::set<std::int64_t>& levels,
                  const CountermoveRecord& rec) {
    if (levels.empty()) {
        return {};
    }
    return dominance_rules(cost_predicate(tag_a), cost_predicate(tag_b), rec.beta(), rec.dom_atom());
}

Program controlled_or(const Program& p, const Literal& guard) {
    Program out = p;
    for (auto& r : out.rules) {
        r.body.push_back(guard);
    }
    for (auto& w : out.weaks) {
        w.body.push_back(guard);
    }
    return out;
}

std::int64_t refinement_base_level(const QuantifiedProgram& qp) { return qp.p1.min_level(0); }

Program ref(const QuantifiedProgram& qp, const CountermoveRecord& rec) {
    if (!qp.is_alternating()) {
        throw TransformError(TransformError::Kind::NonAlternating, "refinement needs alternating quantifiers");
    }
    const auto lmin  = refinement_base_level(qp);
    const auto as    = rec.as_atom();
    const auto guard = Literal::pos(as);
    const auto p2lit = lits(qp.p2);

    Program out = check_as(qp.p2, rec);
    out.add(WeakConstraint{{Literal::pos(as)}, Term::integer(1), lmin - 1, {}});

    Program p2_ce = rename(p2lit, rec.neg_tag(), qp.p2);
    out.append(controlled_or(cost_program(p2_ce, rec.neg_tag()), guard));
    out.append(controlled_or(clone_rules(qp.p2, rec), guard));
    Program cloned = rename(p2lit, rec.clone_tag(), qp.p2);
    out.append(controlled_or(cost_program(cloned, rec.clone_tag()), guard));
    out.append(controlled_or(check_dom(rec.neg_tag(), rec.clone_tag(), qp.p2.levels(), rec), guard));
    out.add(WeakConstraint{{Literal::pos(as), Literal::neg(rec.dom_atom())}, Term::integer(1), lmin - 2, {}});

    Program c_prime = qp.is_existential() ? relaxed(qp.c, lmin - 3) : relaxed(complement(qp.c), lmin - 3);
    auto    pats    = p2lit;
    pats.merge(lits(c_prime));
    out.append(controlled_or(rename(pats, rec.neg_tag(), c_prime), guard));
    return out;
}

} // namespace caspr
