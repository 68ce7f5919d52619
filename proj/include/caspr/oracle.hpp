#pragma once

#include <caspr/ast.hpp>

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace caspr {

struct SolverConfig {
    /// Executable followed by fixed arguments; mode flags are appended per call.
    std::string command{"clingo"};
    double      timeout_s{60.0};
    /// Enumeration cap, 0 for all models.
    int model_limit{0};

    /// `CASPR_SOLVER` if set, else `clingo`.
    static SolverConfig from_env();
    [[nodiscard]] std::vector<std::string> argv() const;
};

class SolverSpawnError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SolverProtocolError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class SolveStatus { Unsat, OptimumFound, Sat, Unknown };

[[nodiscard]] std::string_view to_string(SolveStatus s) noexcept;

struct SolveOutcome {
    SolveStatus                 status{SolveStatus::Unknown};
    std::vector<Interpretation> models;
    std::vector<std::string>    raw_cost_lines;
    std::string                 reason;

    [[nodiscard]] bool has_model() const noexcept { return !models.empty(); }
};

/// Parsed stdout of one solver run.
struct SolverOutput {
    std::optional<SolveStatus>  status;
    std::vector<Interpretation> models;
    std::vector<std::string>    cost_lines;
};

/// Line parser for the solver's text protocol. Throws SolverProtocolError on
/// an unparseable model line.
[[nodiscard]] SolverOutput parse_solver_output(std::string_view text);

struct ProcessResult {
    int         exit_code{-1};
    bool        timed_out{false};
    std::string out;
    std::string err;
};

/// Runs `argv` with `input` on stdin. The child gets its own process group,
/// which is killed when `timeout_s` elapses.
[[nodiscard]] ProcessResult run_process(const std::vector<std::string>& argv, std::string_view input, double timeout_s);

/// Solver client that counts calls. Not thread-safe; use one per thread.
class Oracle {
public:
    explicit Oracle(SolverConfig cfg = SolverConfig::from_env()) : cfg_(std::move(cfg)) {}

    /// One optimal answer set, Unsat, or Unknown on timeout.
    SolveOutcome solve_optimal(const Program& p);
    /// All optimal answer sets, deduplicated.
    SolveOutcome enumerate_optimal(const Program& p);

    /// Calls made after `deadline` return Unknown; calls in flight are cut short.
    void set_deadline(std::chrono::steady_clock::time_point deadline) { deadline_ = deadline; }

    [[nodiscard]] const SolverConfig& config() const noexcept { return cfg_; }
    [[nodiscard]] long                calls() const noexcept { return calls_; }
    [[nodiscard]] double              solver_seconds() const noexcept { return seconds_; }

private:
    SolveOutcome run(const Program& p, const std::vector<std::string>& mode_args);

    SolverConfig                                         cfg_;
    std::optional<std::chrono::steady_clock::time_point> deadline_;
    long                                                 calls_{0};
    double       seconds_{0};
};

[[nodiscard]] SolveOutcome solve_optimal(const Program& p, const SolverConfig& cfg);
[[nodiscard]] SolveOutcome enumerate_optimal(const Program& p, const SolverConfig& cfg);

/// Solver version line after checking the protocol on a trivial program.
[[nodiscard]] std::string probe(const SolverConfig& cfg);

} // namespace caspr
