// caspr: command-line front end.

#include <caspr/bench.hpp>
#include <caspr/emit.hpp>
#include <caspr/gen.hpp>
#include <caspr/optimize.hpp>
#include <caspr/parser.hpp>
#include <caspr/reference.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using json = nlohmann::json;

namespace {

constexpr int kOk       = 0;
constexpr int kInput    = 10;
constexpr int kSolver   = 20;
constexpr int kUnknown  = 30;
constexpr std::size_t kParanoidCap = 10000;

struct Globals {
    std::string solver;
    double      timeout_s{600};
    bool        json_out{false};
    bool        paranoid{false};
};

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot read " + path);
    }
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

caspr::Oracle make_oracle(const Globals& g) {
    auto cfg = caspr::SolverConfig::from_env();
    if (!g.solver.empty()) {
        cfg.command = g.solver;
    }
    cfg.timeout_s = g.timeout_s;
    caspr::Oracle oracle(cfg);
    oracle.set_deadline(std::chrono::steady_clock::now() +
                        std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                            std::chrono::duration<double>(g.timeout_s)));
    return oracle;
}

json atoms_json(const caspr::Interpretation& m) {
    json out = json::array();
    for (const auto& a : m) {
        out.push_back(caspr::to_text(a));
    }
    return out;
}

json cost_json(const std::optional<caspr::CostVector>& c) {
    if (!c) {
        return nullptr;
    }
    json out = json::object();
    for (auto [level, cost] : c->entries()) {
        out[std::to_string(level)] = cost;
    }
    return out;
}

std::string atoms_text(const caspr::Interpretation& m) {
    std::string out;
    for (const auto& a : m) {
        out += (out.empty() ? "" : " ") + caspr::to_text(a);
    }
    return out;
}

// Shared report for solve, optimize and reference.
struct Report {
    std::string                       status;
    std::optional<caspr::Interpretation> move;
    std::optional<caspr::CostVector>  cost;
    json                              stats = json::object();
    std::optional<std::string>        discrepancy;
    bool                              unknown{false};
};

int emit(const Globals& g, const Report& r) {
    if (g.json_out) {
        json j{{"status", r.status},
               {"move", r.move ? atoms_json(*r.move) : json(nullptr)},
               {"cost", cost_json(r.cost)},
               {"stats", r.stats}};
        if (r.discrepancy) {
            j["discrepancy"] = *r.discrepancy;
        }
        std::cout << j.dump() << '\n';
    }
    else {
        std::string upper = r.status;
        for (auto& c : upper) {
            c = c == '-' ? ' ' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        }
        std::cout << upper << '\n';
        if (r.move) {
            std::cout << "move: " << atoms_text(*r.move) << '\n';
        }
        if (r.cost) {
            std::cout << "cost: " << caspr::to_string(*r.cost) << '\n';
        }
    }
    if (r.discrepancy) {
        std::cerr << "caspr: discrepancy: " << *r.discrepancy << '\n';
        return kSolver;
    }
    return r.unknown ? kUnknown : kOk;
}

caspr::EngineOptions engine_options(const Globals& g, const std::string& preference) {
    caspr::EngineOptions opts;
    opts.preference   = preference == "layered" ? caspr::RefinementPreference::Layered : caspr::RefinementPreference::Defeat;
    opts.paranoid_cap = g.paranoid ? kParanoidCap : 0;
    return opts;
}

int cmd_solve(const Globals& g, const std::string& file, const std::string& preference) {
    auto qp     = caspr::parse_quantified(read_file(file), file);
    auto oracle = make_oracle(g);
    auto start  = std::chrono::steady_clock::now();
    auto v      = caspr::decide(qp, oracle, engine_options(g, preference));
    if (v.by_reference) {
        std::cerr << "caspr: quantifiers do not alternate; using the reference evaluator\n";
    }
    Report r;
    r.status = caspr::to_string(v.outcome);
    r.unknown = v.outcome == caspr::Verdict::Outcome::Unknown;
    if (!v.witness.empty() || (!v.by_reference && !r.unknown &&
                               (v.outcome == caspr::Verdict::Outcome::Coherent) == qp.is_existential())) {
        r.move = v.witness;
    }
    r.discrepancy = v.discrepancy;
    r.stats = {{"iterations", v.iterations},
               {"oracle_calls", oracle.calls()},
               {"time_s", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};
    if (r.unknown && !v.reason.empty()) {
        std::cerr << "caspr: " << v.reason << '\n';
    }
    return emit(g, r);
}

int cmd_optimize(const Globals& g, const std::string& file, const std::string& strategy,
                 const std::string& preference) {
    auto qp     = caspr::parse_quantified(read_file(file), file);
    auto oracle = make_oracle(g);
    auto start  = std::chrono::steady_clock::now();
    auto opts   = engine_options(g, preference);
    auto res    = strategy == "upper" ? caspr::solve_upper(qp, oracle, opts) : caspr::solve_lower(qp, oracle, opts);
    Report r;
    r.status  = caspr::to_string(res.outcome);
    r.unknown = res.outcome == caspr::OptResult::Outcome::Unknown;
    if (res.outcome == caspr::OptResult::Outcome::Optimal) {
        r.move = res.move;
        r.cost = res.cost;
    }
    else if (r.unknown && !res.stats.cost_sequence.empty()) {
        r.move = res.move;
        r.cost = res.cost;
    }
    r.discrepancy = res.discrepancy;
    json seq = json::array();
    for (const auto& c : res.stats.cost_sequence) {
        seq.push_back(cost_json(c));
    }
    r.stats = {{"iterations", res.stats.iterations},
               {"oracle_calls", oracle.calls()},
               {"qas_found", res.stats.qas_found},
               {"countermoves", res.stats.countermoves},
               {"cost_sequence", seq},
               {"time_s", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};
    if (r.unknown && !res.reason.empty()) {
        std::cerr << "caspr: " << res.reason << '\n';
    }
    return emit(g, r);
}

int cmd_reference(const Globals& g, const std::string& file) {
    auto qp     = caspr::parse_quantified(read_file(file), file);
    auto oracle = make_oracle(g);
    auto start  = std::chrono::steady_clock::now();
    caspr::Reference ref(oracle);
    Report           r;
    try {
        if (qp.is_existential()) {
            auto rep = ref.report(qp);
            r.status = rep.coherent ? "coherent" : "incoherent";
            if (!rep.opt_qas.empty()) {
                r.move = caspr::user_move(rep.opt_qas.front(), qp);
                r.cost = rep.opt_cost;
            }
            r.stats["qas"]     = rep.qas.size();
            r.stats["opt_qas"] = rep.opt_qas.size();
        }
        else {
            r.status = ref.coherent(qp) ? "coherent" : "incoherent";
        }
    }
    catch (const caspr::ReferenceError& e) {
        std::cerr << "caspr: " << e.what() << '\n';
        r.status  = "unknown";
        r.unknown = true;
    }
    r.stats["oracle_calls"] = oracle.calls();
    r.stats["time_s"]       = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return emit(g, r);
}

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) {
        throw InputError("cannot write " + out_path);
    }
    out << text;
}

int cmd_probe(const Globals& g) {
    auto cfg = caspr::SolverConfig::from_env();
    if (!g.solver.empty()) {
        cfg.command = g.solver;
    }
    cfg.timeout_s = g.timeout_s;
    auto version  = caspr::probe(cfg);
    if (g.json_out) {
        std::cout << json{{"status", "ok"}, {"solver", cfg.command}, {"version", version}}.dump() << '\n';
    }
    else {
        std::cout << cfg.command << ": " << version << '\n';
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"caspr: solver for two-quantifier ASP with weak constraints"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--solver", g.solver, "solver command (default: $CASPR_SOLVER or clingo)");
    app.add_option("--timeout", g.timeout_s, "time budget in seconds")->check(CLI::PositiveNumber);
    app.add_flag("--json", g.json_out, "machine-readable output");
    app.add_flag("--paranoid", g.paranoid, "cross-check engine answers with the reference evaluator");

    std::string file, strategy = "upper", preference = "defeat";
    auto*       solve = app.add_subcommand("solve", "decide coherence");
    solve->add_option("file", file)->required();
    solve->add_option("--preference", preference, "refinement objective")
        ->check(CLI::IsMember({"defeat", "layered"}));

    auto* optimize = app.add_subcommand("optimize", "find an optimal quantified answer set");
    optimize->add_option("file", file)->required();
    optimize->add_option("--strategy", strategy)->check(CLI::IsMember({"upper", "lower"}));
    optimize->add_option("--preference", preference)->check(CLI::IsMember({"defeat", "layered"}));

    auto* reference = app.add_subcommand("reference", "evaluate by direct enumeration");
    reference->add_option("file", file)->required();

    int           nx = 2, ny = 2, nclauses = 4, n = 10;
    std::uint64_t seed    = 1;
    double        density = 0.5;
    std::string   out_path;
    auto*         gen_qbf = app.add_subcommand("gen-qbf", "random forall-exists QBF as a forall-forall program");
    gen_qbf->add_option("--x", nx, "universal variables")->check(CLI::NonNegativeNumber);
    gen_qbf->add_option("--y", ny, "existential variables")->check(CLI::NonNegativeNumber);
    gen_qbf->add_option("--clauses", nclauses)->check(CLI::PositiveNumber);
    gen_qbf->add_option("--seed", seed);
    gen_qbf->add_option("-o,--output", out_path);

    auto* gen_cc = app.add_subcommand("gen-cc", "clique-coloring instance on an Erdos-Renyi graph");
    gen_cc->add_option("--n", n, "vertices")->check(CLI::Range(2, 1000));
    gen_cc->add_option("--density", density)->check(CLI::Range(0.0, 1.0));
    gen_cc->add_option("--seed", seed);
    gen_cc->add_option("-o,--output", out_path);

    std::vector<std::string> instances;
    std::string              mode = "engine";
    int                      jobs = 1;
    auto*                    bench = app.add_subcommand("bench", "solve instances and print a CSV row each");
    bench->add_option("instances", instances)->required();
    bench->add_option("--mode", mode)->check(CLI::IsMember({"engine", "reference", "upper", "lower"}));
    bench->add_option("--jobs", jobs)->check(CLI::PositiveNumber);
    bench->add_option("-o,--output", out_path);

    auto* probe = app.add_subcommand("probe", "check that the solver speaks the expected protocol");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kInput;
    }

    try {
        if (*solve) return cmd_solve(g, file, preference);
        if (*optimize) return cmd_optimize(g, file, strategy, preference);
        if (*reference) return cmd_reference(g, file);
        if (*gen_qbf) {
            write_output(out_path, caspr::qbf_instance_text(caspr::random_qbf(nx, ny, nclauses, seed)));
            return kOk;
        }
        if (*gen_cc) {
            write_output(out_path, caspr::cc_instance_text(n, density, seed));
            return kOk;
        }
        if (*bench) {
            auto cfg = caspr::SolverConfig::from_env();
            if (!g.solver.empty()) {
                cfg.command = g.solver;
            }
            cfg.timeout_s = g.timeout_s;
            auto               rows = caspr::run_bench(instances, *caspr::parse_bench_mode(mode), cfg, jobs);
            std::ostringstream csv;
            caspr::write_csv(csv, rows);
            write_output(out_path, csv.str());
            return kOk;
        }
        if (*probe) return cmd_probe(g);
    }
    catch (const caspr::ParseError& e) {
        std::cerr << "caspr: " << e.what() << '\n';
        return kInput;
    }
    catch (const InputError& e) {
        std::cerr << "caspr: " << e.what() << '\n';
        return kInput;
    }
    catch (const caspr::TransformError& e) {
        std::cerr << "caspr: " << e.what() << '\n';
        return kInput;
    }
    catch (const caspr::IllFormedQbf& e) {
        std::cerr << "caspr: " << e.what() << '\n';
        return kInput;
    }
    catch (const std::invalid_argument& e) {
        std::cerr << "caspr: " << e.what() << '\n';
        return kInput;
    }
    catch (const caspr::SolverSpawnError& e) {
        std::cerr << "caspr: " << e.what() << '\n';
        return kSolver;
    }
    catch (const caspr::SolverProtocolError& e) {
        std::cerr << "caspr: " << e.what() << '\n';
        return kSolver;
    }
    return kOk;
}
