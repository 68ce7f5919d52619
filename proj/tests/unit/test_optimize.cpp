#include "brute.hpp"
#include "common.hpp"
#include "random_programs.hpp"

#include <caspr/optimize.hpp>
#include <caspr/reference.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace caspr;
using testing_support::atoms;

namespace {

QuantifiedProgram ex1w() {
    auto qp = parse_quantified(testing_support::kRunningExample, "ex1");
    qp.cw   = testing_support::prog(":~ a. [1@1]").weaks;
    return qp;
}

} // namespace

TEST_CASE("global level shift", "[optimize]") {
    auto cw = testing_support::prog(":~ a. [1@2]\n:~ b. [1@5]").weaks;
    auto s  = shift_global_levels(cw, 0);
    REQUIRE(s.size() == 2);
    CHECK(s[0].level == -7);
    CHECK(s[1].level == -4);
    CHECK(shift_global_levels({}, 0).empty());
    CHECK(shift_global_levels(cw, -2)[1].level == -6);
}

TEST_CASE("both strategies find the optimal QAS of the running example with a global weak", "[optimize]") {
    Oracle o(testing_support::solver());
    auto   up = solve_upper(ex1w(), o);
    auto   lo = solve_lower(ex1w(), o);
    REQUIRE(up.outcome == OptResult::Outcome::Optimal);
    REQUIRE(lo.outcome == OptResult::Outcome::Optimal);
    CHECK(up.move == atoms("na b"));
    CHECK(lo.move == atoms("na b"));
    CHECK(up.cost == CostVector{{1, 0}});
    CHECK(lo.cost == CostVector{{1, 0}});
    for (std::size_t i = 1; i < up.stats.cost_sequence.size(); ++i) {
        CHECK(dominates(up.stats.cost_sequence[i], up.stats.cost_sequence[i - 1]));
    }
}

TEST_CASE("without weights the first QAS is optimal", "[optimize]") {
    Oracle o(testing_support::solver());
    auto   qp = parse_quantified(testing_support::kRunningExample, "ex1");
    auto   up = solve_upper(qp, o);
    REQUIRE(up.outcome == OptResult::Outcome::Optimal);
    CHECK(up.stats.qas_found == 1);
    CHECK(up.stats.cost_sequence.size() == 1);
}

TEST_CASE("incoherent programs have no QAS", "[optimize]") {
    Oracle o(testing_support::solver());
    auto   qp = parse_quantified("%@exists\na :- not na.\nna :- not a.\n%@forall\nc :- not nc.\nnc :- not c.\n"
                                 "%@constraint\n:- c.\n%@global\n:~ a. [1@1]\n",
                                 "inc");
    CHECK(solve_upper(qp, o).outcome == OptResult::Outcome::NoQas);
    CHECK(solve_lower(qp, o).outcome == OptResult::Outcome::NoQas);
    qp.q1 = Quantifier::Forall;
    qp.q2 = Quantifier::Exists;
    CHECK_THROWS_AS(solve_upper(qp, o), TransformError);
}

TEST_CASE("improvement constraints admit only cheaper moves", "[optimize]") {
    Oracle o(testing_support::solver());
    auto   qp = ex1w();
    auto   p  = qp.p1;
    p.append(improvement_constraints(qp, CostVector{}, CostVector{{1, 1}}));
    auto r = o.enumerate_optimal(p);
    std::set<Interpretation> got;
    for (const auto& m : r.models) got.insert(project(m, qp.p1.head_predicates()));
    CHECK(got == std::set<Interpretation>{atoms("na b"), atoms("na nb")});
}

TEST_CASE("strategies agree with brute force", "[optimize]") {
    std::mt19937_64 rng(77);
    Oracle          o(testing_support::solver());
    for (int i = 0; i < 40; ++i) {
        auto qp = gen::alternating(rng, {.existential_only = true, .global_weaks = true});
        auto expected = brute::optimal_qas_cost(qp);
        auto up       = solve_upper(qp, o);
        auto lo       = solve_lower(qp, o);
        INFO(i);
        REQUIRE((up.outcome == OptResult::Outcome::Optimal) == expected.has_value());
        REQUIRE((lo.outcome == OptResult::Outcome::Optimal) == expected.has_value());
        if (expected) {
            REQUIRE(brute::normalized(brute::Cost(up.cost.entries())) == brute::normalized(*expected));
            REQUIRE(brute::normalized(brute::Cost(lo.cost.entries())) == brute::normalized(*expected));
            REQUIRE(brute::inner_coherent(qp, up.full_move));
            REQUIRE(brute::inner_coherent(qp, lo.full_move));
        }
    }
}
