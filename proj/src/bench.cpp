#include <caspr/bench.hpp>

#include <caspr/optimize.hpp>
#include <caspr/parser.hpp>
#include <caspr/reference.hpp>

#include <atomic>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

namespace caspr {

std::string_view to_string(Verdict::Outcome o) noexcept {
    switch (o) {
        case Verdict::Outcome::Coherent  : return "coherent";
        case Verdict::Outcome::Incoherent: return "incoherent";
        case Verdict::Outcome::Unknown   : return "unknown";
    }
    return "?";
}

Verdict decide(const QuantifiedProgram& qp, Oracle& oracle, const EngineOptions& opts) {
    Verdict v;
    if (!qp.is_alternating()) {
        v.by_reference = true;
        try {
            Reference ref(oracle);
            v.outcome = ref.coherent(qp) ? Verdict::Outcome::Coherent : Verdict::Outcome::Incoherent;
        }
        catch (const ReferenceError& e) {
            v.reason = e.what();
        }
        return v;
    }
    auto r         = Engine(qp, oracle, opts).run();
    v.iterations   = r.stats.iterations;
    v.reason       = r.reason;
    v.discrepancy  = r.discrepancy;
    const bool ex  = qp.is_existential();
    switch (r.outcome) {
        case CegarResult::Outcome::Winning:
            v.outcome = ex ? Verdict::Outcome::Coherent : Verdict::Outcome::Incoherent;
            v.witness = r.move;
            break;
        case CegarResult::Outcome::NoWinningMove:
            v.outcome = ex ? Verdict::Outcome::Incoherent : Verdict::Outcome::Coherent;
            break;
        case CegarResult::Outcome::Unknown: break;
    }
    return v;
}

std::optional<BenchMode> parse_bench_mode(std::string_view s) {
    if (s == "engine") return BenchMode::Engine;
    if (s == "reference") return BenchMode::Reference;
    if (s == "upper") return BenchMode::Upper;
    if (s == "lower") return BenchMode::Lower;
    return std::nullopt;
}

std::string_view to_string(BenchMode m) noexcept {
    switch (m) {
        case BenchMode::Engine   : return "engine";
        case BenchMode::Reference: return "reference";
        case BenchMode::Upper    : return "upper";
        case BenchMode::Lower    : return "lower";
    }
    return "?";
}

BenchRow bench_one(const std::string& path, BenchMode mode, const SolverConfig& cfg) {
    BenchRow row{path, mode, "error", std::nullopt, 0, 0, 0};
    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };

    std::ifstream in(path);
    if (!in) {
        return row;
    }
    std::ostringstream text;
    text << in.rdbuf();
    Oracle oracle(cfg);
    oracle.set_deadline(start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                    std::chrono::duration<double>(cfg.timeout_s)));
    try {
        auto qp = parse_quantified(text.str(), path);
        switch (mode) {
            case BenchMode::Engine: {
                auto v         = decide(qp, oracle);
                row.outcome    = to_string(v.outcome);
                row.iterations = v.iterations;
                break;
            }
            case BenchMode::Reference: {
                Reference ref(oracle);
                try {
                    row.outcome = ref.coherent(qp) ? "coherent" : "incoherent";
                }
                catch (const ReferenceError&) {
                    row.outcome = "unknown";
                }
                break;
            }
            case BenchMode::Upper:
            case BenchMode::Lower: {
                auto r         = mode == BenchMode::Upper ? solve_upper(qp, oracle) : solve_lower(qp, oracle);
                row.outcome    = to_string(r.outcome);
                row.iterations = r.stats.iterations;
                if (r.outcome == OptResult::Outcome::Optimal) {
                    row.cost = r.cost;
                }
                break;
            }
        }
    }
    catch (const std::exception&) {
        row.outcome = "error";
    }
    row.oracle_calls = oracle.calls();
    row.time_s       = elapsed();
    return row;
}

std::vector<BenchRow> run_bench(const std::vector<std::string>& paths, BenchMode mode, const SolverConfig& cfg,
                                int jobs) {
    std::vector<BenchRow> rows(paths.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < paths.size(); i = next++) {
            rows[i] = bench_one(paths[i], mode, cfg);
        }
    };
    const auto n = static_cast<std::size_t>(std::max(1, jobs));
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < std::min(n, paths.size()); ++t) {
        pool.emplace_back(worker);
    }
    worker();
    return rows;
}

std::string cost_field(const CostVector& c) {
    std::string out;
    for (auto it = c.entries().rbegin(); it != c.entries().rend(); ++it) {
        if (!out.empty()) {
            out += ';';
        }
        out += std::to_string(it->first) + ":" + std::to_string(it->second);
    }
    return out;
}

namespace {

// Quotes a field holding a comma or quote.
std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

} // namespace

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
    out << "instance,mode,outcome,cost,time_s,oracle_calls,iterations\n";
    for (const auto& r : rows) {
        out << csv_escape(r.instance) << ',' << to_string(r.mode) << ',' << r.outcome << ','
            << (r.cost ? cost_field(*r.cost) : "") << ',' << std::fixed << std::setprecision(3) << r.time_s << ','
            << r.oracle_calls << ',' << r.iterations << '\n';
    }
}

} // namespace caspr
