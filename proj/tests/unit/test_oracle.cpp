#include "common.hpp"

#include <caspr/emit.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <sstream>

using namespace caspr;
using testing_support::atoms;
using testing_support::prog;

namespace {

SolverConfig fixture(const std::string& script, double timeout = 10) {
    SolverConfig cfg;
    cfg.command   = std::string(CASPR_TEST_FIXTURES) + "/" + script;
    cfg.timeout_s = timeout;
    return cfg;
}

// Unsatisfiable and far too hard to finish within a fraction of a second.
Program pigeonhole(int pigeons, int holes) {
    std::ostringstream s;
    for (int p = 1; p <= pigeons; ++p) {
        std::string any = ":- ";
        for (int h = 1; h <= holes; ++h) {
            s << "in(" << p << "," << h << ") :- not out(" << p << "," << h << ").\n";
            s << "out(" << p << "," << h << ") :- not in(" << p << "," << h << ").\n";
            any += std::string(h > 1 ? ", " : "") + "not in(" + std::to_string(p) + "," + std::to_string(h) + ")";
        }
        s << any << ".\n";
    }
    s << ":- in(P,H), in(Q,H), P < Q.\n";
    return prog(s.str());
}

} // namespace

TEST_CASE("solver output parsing", "[oracle]") {
    auto out = parse_solver_output("clingo version 5.8.2\nReading from stdin\nSolving...\nAnswer: 1 (Time: 0.001s)\n"
                                   "a p(1,x)\nOptimization: 1 0\nAnswer: 2 (Time: 0.001s)\nb\nOptimization: 0 0\n"
                                   "OPTIMUM FOUND\n\nModels       : 2\n");
    REQUIRE(out.status == SolveStatus::OptimumFound);
    REQUIRE(out.models.size() == 2);
    CHECK(out.models[0] == atoms("a p(1,x)"));
    CHECK(out.models[1] == atoms("b"));
    CHECK(out.cost_lines.size() == 2);

    CHECK(parse_solver_output("UNSATISFIABLE\n").status == SolveStatus::Unsat);
    CHECK(parse_solver_output("Answer: 1\n\nSATISFIABLE\n").models.front().empty());
    CHECK(parse_solver_output("UNKNOWN\n").status == SolveStatus::Unknown);
    CHECK_FALSE(parse_solver_output("nothing here\n").status.has_value());
    CHECK_THROWS_AS(parse_solver_output("Answer: 1\n"), SolverProtocolError);
    CHECK_THROWS_AS(parse_solver_output("Answer: 1\n:- (\n"), SolverProtocolError);
}

TEST_CASE("status mapping against the solver", "[oracle]") {
    Oracle o(testing_support::solver());
    auto   unsat = o.solve_optimal(prog("a.\n:- a."));
    CHECK(unsat.status == SolveStatus::Unsat);
    CHECK_FALSE(unsat.has_model());

    auto opt = o.solve_optimal(prog("a :- not b.\nb :- not a.\n:~ a. [1@1]"));
    CHECK(opt.status == SolveStatus::OptimumFound);
    REQUIRE(opt.has_model());
    CHECK(opt.models[0] == atoms("b"));

    auto plain = o.solve_optimal(prog("a :- not b.\nb :- not a."));
    CHECK(plain.status == SolveStatus::OptimumFound);
    CHECK(plain.models.size() == 1);

    auto empty = o.solve_optimal(Program{});
    CHECK(empty.status == SolveStatus::OptimumFound);
    CHECK(empty.models.at(0).empty());
    CHECK(o.calls() == 4);
}

TEST_CASE("enumeration returns exactly the optimal models", "[oracle]") {
    Oracle o(testing_support::solver());
    auto   r = o.enumerate_optimal(prog("{a; b; c}.\n:~ a. [1@1]\n:~ b, c. [2@0]"));
    REQUIRE(r.status == SolveStatus::OptimumFound);
    std::set<Interpretation> got;
    for (auto m : r.models) got.insert(strip_reserved(m));
    CHECK(got == std::set<Interpretation>{atoms(""), atoms("b"), atoms("c")});
    CHECK(got.size() == r.models.size());

    auto all = o.enumerate_optimal(prog("{a; b}."));
    CHECK(all.models.size() == 4);

    SolverConfig capped = testing_support::solver();
    capped.model_limit  = 2;
    CHECK(enumerate_optimal(prog("{a; b}."), capped).models.size() == 2);
    CHECK(o.enumerate_optimal(prog("a.\n:- a.")).status == SolveStatus::Unsat);
}

TEST_CASE("timeouts kill the solver and report Unknown", "[oracle]") {
    auto   cfg = testing_support::solver();
    cfg.timeout_s = 0.5;
    Oracle o(cfg);
    auto   t0 = std::chrono::steady_clock::now();
    auto   r  = o.solve_optimal(pigeonhole(11, 10));
    auto   dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(r.status == SolveStatus::Unknown);
    CHECK(dt < 5);

    Oracle sleepy(fixture("sleepy_solver.sh", 0.3));
    t0 = std::chrono::steady_clock::now();
    CHECK(sleepy.solve_optimal(prog("a.")).status == SolveStatus::Unknown);
    CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() < 5);
}

TEST_CASE("deadline caps the total budget", "[oracle]") {
    Oracle o(testing_support::solver());
    o.set_deadline(std::chrono::steady_clock::now() - std::chrono::seconds(1));
    auto r = o.solve_optimal(prog("a."));
    CHECK(r.status == SolveStatus::Unknown);
    CHECK(o.calls() == 0);
}

TEST_CASE("protocol faults", "[oracle]") {
    CHECK_THROWS_AS(Oracle(fixture("garbage_solver.sh")).solve_optimal(prog("a.")), SolverProtocolError);
    CHECK_THROWS_AS(Oracle(fixture("crashing_solver.sh")).solve_optimal(prog("a.")), SolverProtocolError);
    CHECK_THROWS_AS(Oracle(fixture("truncated_solver.sh")).solve_optimal(prog("a.")), SolverProtocolError);
    SolverConfig missing;
    missing.command = "/nonexistent/solver-binary";
    CHECK_THROWS_AS(Oracle(missing).solve_optimal(prog("a.")), SolverSpawnError);
    CHECK_THROWS_AS(probe(missing), SolverSpawnError);
}

TEST_CASE("probe", "[oracle]") {
    auto v = probe(testing_support::solver());
    CHECK_FALSE(v.empty());
}

TEST_CASE("large inputs are streamed", "[oracle]") {
    std::ostringstream s;
    for (int i = 0; i < 20000; ++i) {
        s << "p(" << i << ").\n";
    }
    Oracle o(testing_support::solver());
    auto   r = o.solve_optimal(prog(s.str()));
    REQUIRE(r.has_model());
    CHECK(r.models[0].size() == 20000);
}

TEST_CASE("solver command from the environment", "[oracle]") {
    const char*       prev  = std::getenv("CASPR_SOLVER");
    const std::string saved = prev ? prev : "";
    ::setenv("CASPR_SOLVER", "my-solver --flag", 1);
    auto cfg = SolverConfig::from_env();
    CHECK(cfg.argv() == std::vector<std::string>{"my-solver", "--flag"});
    ::unsetenv("CASPR_SOLVER");
    CHECK(SolverConfig::from_env().command == "clingo");
    if (prev != nullptr) {
        ::setenv("CASPR_SOLVER", saved.c_str(), 1);
    }
}
