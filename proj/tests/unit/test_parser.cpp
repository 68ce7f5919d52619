#include "common.hpp"

#include <caspr/emit.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace caspr;
using testing_support::prog;

TEST_CASE("the running example parses into its four parts", "[parser]") {
    auto qp = parse_quantified(testing_support::kRunningExample, "ex1");
    CHECK(qp.q1 == Quantifier::Exists);
    CHECK(qp.q2 == Quantifier::Forall);
    CHECK(qp.p1.rules.size() == 4);
    CHECK(qp.p1.weaks.empty());
    CHECK(qp.p2.rules.size() == 2);
    REQUIRE(qp.p2.weaks.size() == 2);
    CHECK(qp.c == prog(":- nb, nc."));
    CHECK(qp.cw.empty());
}

TEST_CASE("plain programs", "[parser]") {
    auto p = parse_program("c :- not nc. nc :- not c.", "p2");
    REQUIRE(p.rules.size() == 2);
    CHECK(p.rules[0].kind() == Rule::Kind::Normal);
    CHECK(p.rules[0].head == Atom("c"));
    CHECK(p.rules[0].body == Body{Literal::neg(Atom("nc"))});

    auto w = parse_program(":~ a, not c. [1@1]", "w");
    REQUIRE(w.weaks.size() == 1);
    CHECK(w.weaks[0].weight == Term::integer(1));
    CHECK(w.weaks[0].level == 1);
    CHECK(w.weaks[0].tuple.empty());

    auto tagged = parse_program(":~ p(Y). [2@-3,x,Y]", "w");
    REQUIRE(tagged.weaks.size() == 1);
    CHECK(tagged.weaks[0].level == -3);
    CHECK(tagged.weaks[0].tuple == std::vector<Term>{Term::symbol("x"), Term::variable("Y")});
}

TEST_CASE("unsafe variables are named", "[parser]") {
    try {
        (void)parse_program("p(X) :- not q(X).", "u");
        FAIL("expected SafetyError");
    }
    catch (const SafetyError& e) {
        CHECK(e.variable() == "X");
        CHECK(e.span().line == 1);
    }
    CHECK_THROWS_AS(parse_program(":~ a. [W@1]", "u"), SafetyError);
    CHECK_NOTHROW(parse_program("p(X) :- q(Y), X = Y.", "u"));
    CHECK_NOTHROW(parse_program("p(T) :- #count{X : q(X)} = T.", "u"));
}

TEST_CASE("section errors", "[parser]") {
    CHECK_THROWS_AS(parse_quantified("%@exists\na.\n%@exists\nb.\n%@exists\nc.\n", "s"), SectionError);
    CHECK_THROWS_AS(parse_quantified("a.\n%@exists\n", "s"), SectionError);
    CHECK_THROWS_AS(parse_quantified("%@exists\na.\n%@constraint\n:- a.\n", "s"), SectionError);
    CHECK_THROWS_AS(parse_quantified("%@exists\na.\n%@forall\nb.\n%@global\n:~ a. [1@1]\n%@constraint\n", "s"),
                    SectionError);
}

TEST_CASE("global section holds weak constraints only", "[parser]") {
    CHECK_THROWS_AS(parse_quantified("%@exists\na.\n%@forall\nb.\n%@global\nc :- a.\n", "g"), ParseError);
    auto qp = parse_quantified("%@exists\na.\n%@forall\nb.\n%@global\n:~ a. [1@1]\n", "g");
    CHECK(qp.cw.size() == 1);
    CHECK(qp.c.empty());
}

TEST_CASE("invalid programs are rejected with a location", "[parser]") {
    auto expect_at = [](const std::string& text, int line) {
        try {
            (void)parse_quantified(text, "f.aspq");
            FAIL("expected ParseError for: " << text);
        }
        catch (const ParseError& e) {
            CHECK(e.span().file == "f.aspq");
            CHECK(e.span().line == line);
            CHECK(e.span().column >= 1);
        }
    };
    expect_at("%@exists\ncaspr_x.\n%@forall\nb.\n", 2);
    expect_at("%@exists\na :- b\n%@forall\nb.\n", 3);
    expect_at("%@exists\nc :- not d.\nd :- not c.\n%@forall\nc :- x.\n", 4);
    expect_at("%@exists\na.\n%@forall\nb.\n%@constraint\nx :- not y.\ny :- not x.\n", 5);
    expect_at("%@exists\na.\n%@forall\nb :- a.\n:~ q(L). [1@L]\n", 5);
}

TEST_CASE("choice rules desugar to even loops", "[parser]") {
    auto p = prog("{a; b} :- c.");
    CHECK(p == prog("a :- not caspr_n_a, c.\ncaspr_n_a :- not a, c.\nb :- not caspr_n_b, c.\ncaspr_n_b :- not b, c."));
    CHECK_NOTHROW(parse_program("{a}.", "choice"));
}

TEST_CASE("comments, aggregates and comparisons", "[parser]") {
    auto p = prog("% line\n%* block\n*%\np(1). p(2).\nq(T) :- #sum{X : p(X)} = T.\nr :- 3 <= #count{X : p(X)}.\ns(X) :- p(X), X != 2.\n");
    REQUIRE(p.rules.size() == 5);
    const auto& agg = std::get<Aggregate>(p.rules[3].body[0].content);
    CHECK(agg.fn == AggregateFn::Count);
    CHECK(agg.op == CmpOp::Ge);
    CHECK(agg.guard == Term::integer(3));
}

TEST_CASE("ground atom lists", "[parser]") {
    auto m = parse_atoms("a p(1,x) caspr_v q(-2)");
    CHECK(m.size() == 4);
    CHECK(m.contains(Atom("p", {Term::integer(1), Term::symbol("x")})));
    CHECK(m.contains(Atom("q", {Term::integer(-2)})));
    CHECK(parse_atoms("").empty());
}
