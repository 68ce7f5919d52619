#pragma once

#include <caspr/cost.hpp>
#include <caspr/engine.hpp>
#include <caspr/oracle.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace caspr {

/// Coherence decided by the engine, or by the reference evaluator when the
/// quantifiers do not alternate.
struct Verdict {
    enum class Outcome { Coherent, Incoherent, Unknown };

    Outcome outcome{Outcome::Unknown};
    /// Winning move for the existential player, or for the universal one when
    /// incoherent. Empty under the reference evaluator.
    Interpretation             witness;
    bool                       by_reference{false};
    long                       iterations{0};
    std::string                reason;
    std::optional<std::string> discrepancy;
};

[[nodiscard]] std::string_view to_string(Verdict::Outcome o) noexcept;

[[nodiscard]] Verdict decide(const QuantifiedProgram& qp, Oracle& oracle, const EngineOptions& opts = {});

enum class BenchMode { Engine, Reference, Upper, Lower };

[[nodiscard]] std::optional<BenchMode> parse_bench_mode(std::string_view s);
[[nodiscard]] std::string_view         to_string(BenchMode m) noexcept;

struct BenchRow {
    std::string               instance;
    BenchMode                 mode{BenchMode::Engine};
    std::string               outcome;
    std::optional<CostVector> cost;
    double                    time_s{0};
    long                      oracle_calls{0};
    long                      iterations{0};
};

/// Solves one instance file with `cfg.timeout_s` as its total time budget.
/// Unreadable or invalid files give outcome "error".
[[nodiscard]] BenchRow bench_one(const std::string& path, BenchMode mode, const SolverConfig& cfg);

/// Rows in input order, computed by up to `jobs` worker threads.
[[nodiscard]] std::vector<BenchRow> run_bench(const std::vector<std::string>& paths, BenchMode mode,
                                              const SolverConfig& cfg, int jobs = 1);

/// Levels joined as `level:cost` with `;`, highest level first.
[[nodiscard]] std::string cost_field(const CostVector& c);

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows);

} // namespace caspr
