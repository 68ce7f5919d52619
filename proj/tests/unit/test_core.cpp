#include "brute.hpp"
#include "common.hpp"
#include "random_programs.hpp"

#include <caspr/cost.hpp>
#include <caspr/emit.hpp>
#include <caspr/validate.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace caspr;
using testing_support::atoms;
using testing_support::prog;

TEST_CASE("cost of example weaks", "[core]") {
    auto p = prog(":~ a, not c. [1@1]\n:~ b, not nc. [1@1]\n");
    CHECK(evaluate_cost(p.weaks, atoms("a b nc")) == CostVector{{1, 1}});
    CHECK(evaluate_cost(p.weaks, atoms("a nb c")) == CostVector{{1, 0}});
    CHECK(evaluate_cost({}, atoms("a b")) == CostVector{});
}

TEST_CASE("cost of the two-level example", "[core]") {
    auto p = prog(":~ a,c. [1@1]\n:~ a,d. [2@1]\n:~ b,c. [1@2]\n:~ b,d. [2@2]\n");
    auto c = evaluate_cost(p.weaks, atoms("a c"));
    CHECK(c == CostVector{{1, 1}, {2, 0}});
    CHECK(c.levels() == std::set<std::int64_t>{1, 2});
}

TEST_CASE("violation tuples are deduplicated", "[core]") {
    auto same = prog(":~ a. [1@1]\n:~ b. [1@1]\n");
    CHECK(evaluate_cost(same.weaks, atoms("a b")).at(1) == 1);
    auto tagged = prog(":~ a. [1@1,x]\n:~ b. [1@1,y]\n");
    CHECK(evaluate_cost(tagged.weaks, atoms("a b")).at(1) == 2);
    auto var = prog(":~ p(X). [1@1,X]\n");
    CHECK(evaluate_cost(var.weaks, atoms("p(1) p(2)")).at(1) == 2);
    auto novar = prog(":~ p(X). [1@1]\n");
    CHECK(evaluate_cost(novar.weaks, atoms("p(1) p(2)")).at(1) == 1);
    auto weight = prog(":~ p(X). [X@2,X]\n");
    CHECK(evaluate_cost(weight.weaks, atoms("p(3) p(4)")).at(2) == 7);
}

TEST_CASE("unbound weight variable", "[core]") {
    WeakConstraint w{{Literal::pos(Atom("a"))}, Term::variable("W"), 1, {}};
    std::vector<WeakConstraint> ws{w};
    CHECK_THROWS_AS(evaluate_cost(ws, atoms("a")), CostError);
}

TEST_CASE("dominance examples", "[core]") {
    CHECK(dominates({{1, 1}}, {{1, 2}}));
    CHECK_FALSE(dominates({{1, 5}}, {{1, 5}}));
    CHECK(dominates({{2, 1}, {1, 3}}, {{2, 1}, {1, 5}}));
    CHECK_FALSE(dominates({{2, 2}, {1, 0}}, {{2, 1}, {1, 9}}));
    CHECK(dominates({}, {{-3, 1}}));
}

TEST_CASE("dominance is a strict total order on cost vectors", "[core]") {
    std::mt19937_64 rng(7);
    auto            draw = [&] {
        CostVector c;
        for (int l = -1; l <= 2; ++l) {
            if (rng() % 2 == 0) {
                c.set(l, static_cast<std::int64_t>(rng() % 3));
            }
        }
        return c;
    };
    for (int i = 0; i < 500; ++i) {
        auto a = draw(), b = draw(), c = draw();
        int  holds = int(a == b) + int(dominates(a, b)) + int(dominates(b, a));
        REQUIRE(holds == 1);
        REQUIRE(dominates(a, b) == brute::better(brute::Cost(a.entries()), brute::Cost(b.entries())));
        if (dominates(a, b) && dominates(b, c)) {
            REQUIRE(dominates(a, c));
        }
    }
}

TEST_CASE("evaluate_cost agrees with the brute-force evaluator", "[core]") {
    std::mt19937_64 rng(11);
    int             checked = 0;
    for (int i = 0; i < 100; ++i) {
        auto qp = gen::alternating(rng);
        for (const auto& m : brute::answer_sets(qp.p2)) {
            REQUIRE(brute::normalized(brute::Cost(evaluate_cost(qp.p2.weaks, m).entries())) ==
                    brute::normalized(brute::cost(qp.p2.weaks, m)));
            ++checked;
        }
    }
    CHECK(checked > 100);
}

TEST_CASE("emit then parse is the identity", "[core]") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
        auto qp = gen::alternating(rng, {.global_weaks = i % 2 == 0});
        REQUIRE(parse_quantified(emit_text(qp), "<emit>") == qp);
        auto p = gen::stratified(rng);
        REQUIRE(parse_program(emit_text(p), "<emit>") == p);
    }
    auto agg = prog("p(T) :- #sum{X,Y : q(X,Y), not r(Y)} = T, s(T).\nq :- #count{X : r(X)} >= 2.\n");
    CHECK(prog(emit_text(agg)) == agg);
}

TEST_CASE("emitted surface syntax", "[core]") {
    CHECK(emit_text(prog("a.")) == "a.\n");
    CHECK(emit_text(prog("c :- not nc.")) == "c :- not nc.\n");
    CHECK(emit_text(prog(":~ caspr_unsat. [1@0]")) == ":~ caspr_unsat. [1@0]\n");
    CHECK(emit_text(prog(":~ p(X), X > 2. [X@-1,X,k]")) == ":~ p(X), X > 2. [X@-1,X,k]\n");
}

TEST_CASE("program equality ignores statement order only", "[core]") {
    CHECK(prog("a :- b.\nc :- d.") == prog("c :- d.\na :- b."));
    CHECK_FALSE(prog("a :- b, c.") == prog("a :- c, b."));
}

TEST_CASE("projection and reserved names", "[core]") {
    auto m = atoms("a p(1) caspr_fix_a q");
    CHECK(project(m, {PredicateSig{"p", 1}, PredicateSig{"a", 0}}) == atoms("a p(1)"));
    CHECK(strip_reserved(m) == atoms("a p(1) q"));
}

TEST_CASE("validation of quantified programs", "[core]") {
    QuantifiedProgram qp;
    qp.p1 = prog("a :- not na.\nna :- not a.");
    qp.p2 = prog("c :- not nc.\nnc :- not c.");
    qp.c  = prog(":- nb, nc.");
    CHECK(validate(qp).empty());

    auto bad = qp;
    bad.p1.add(Rule::fact(Atom("caspr_unsat")));
    auto d = validate(bad);
    REQUIRE(d.size() == 1);
    CHECK(d[0].kind == Diagnostic::Kind::ReservedPrefix);

    bad    = qp;
    bad.p1 = prog("c :- not a.\na :- not c.");
    d      = validate(bad);
    REQUIRE(!d.empty());
    CHECK(d[0].kind == Diagnostic::Kind::HeadOverlap);

    bad   = qp;
    bad.c = prog("x :- not y.\ny :- not x.");
    CHECK(has_errors(validate(bad)));

    bad    = qp;
    bad.cw = prog(":~ zz. [1@1]").weaks;
    CHECK(has_errors(validate(bad)));
}

TEST_CASE("stratification", "[core]") {
    CHECK(is_stratified(prog("a :- not b.\nb :- c.")));
    CHECK_FALSE(is_stratified(prog("a :- not b.\nb :- not a.")));
    CHECK_FALSE(is_stratified(prog("a :- #count{X : b(X)} > 0.\nb(1) :- a.")));
}
