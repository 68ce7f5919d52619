#include <caspr/oracle.hpp>

#include <caspr/cost.hpp>
#include <caspr/emit.hpp>
#include <caspr/parser.hpp>

#include <algorithm>
#include <array>
#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <set>
#include <sstream>

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

extern char** environ;

namespace caspr {

SolverConfig SolverConfig::from_env() {
    SolverConfig cfg;
    if (const char* env = std::getenv("CASPR_SOLVER"); env != nullptr && *env != '\0') {
        cfg.command = env;
    }
    return cfg;
}

std::vector<std::string> SolverConfig::argv() const {
    std::vector<std::string> out;
    std::istringstream       in(command);
    for (std::string word; in >> word;) {
        out.push_back(word);
    }
    return out;
}

std::string_view to_string(SolveStatus s) noexcept {
    switch (s) {
        case SolveStatus::Unsat       : return "UNSATISFIABLE";
        case SolveStatus::OptimumFound: return "OPTIMUM FOUND";
        case SolveStatus::Sat         : return "SATISFIABLE";
        case SolveStatus::Unknown     : return "UNKNOWN";
    }
    return "?";
}

SolverOutput parse_solver_output(std::string_view text) {
    SolverOutput out;
    bool         expect_model = false;
    std::size_t  line_no      = 0;
    while (!text.empty()) {
        auto             nl   = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text                  = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
            line.remove_suffix(1);
        }
        if (expect_model) {
            expect_model = false;
            try {
                out.models.push_back(parse_atoms(line));
            }
            catch (const ParseError& e) {
                throw SolverProtocolError("unparseable model on output line " + std::to_string(line_no) + ": " +
                                          e.message());
            }
            continue;
        }
        if (line.starts_with("Answer:")) {
            expect_model = true;
        }
        else if (line == "SATISFIABLE") {
            out.status = SolveStatus::Sat;
        }
        else if (line == "UNSATISFIABLE") {
            out.status = SolveStatus::Unsat;
        }
        else if (line == "OPTIMUM FOUND") {
            out.status = SolveStatus::OptimumFound;
        }
        else if (line == "UNKNOWN") {
            out.status = SolveStatus::Unknown;
        }
        else if (line.starts_with("Optimization:")) {
            out.cost_lines.emplace_back(line);
        }
    }
    if (expect_model) {
        throw SolverProtocolError("output ended after an Answer header");
    }
    return out;
}

namespace {

void set_nonblocking(int fd) { fcntl(fd, F_SETFL, fcntl(fd, F_GETFL) | O_NONBLOCK); }

struct Pipe {
    std::array<int, 2> fd{-1, -1};
    Pipe() {
        if (pipe2(fd.data(), O_CLOEXEC) != 0) {
            throw SolverSpawnError(std::string("pipe: ") + std::strerror(errno));
        }
    }
    ~Pipe() {
        close_read();
        close_write();
    }
    Pipe(const Pipe&)            = delete;
    Pipe& operator=(const Pipe&) = delete;
    void  close_read() {
        if (fd[0] >= 0) {
            ::close(fd[0]);
            fd[0] = -1;
        }
    }
    void close_write() {
        if (fd[1] >= 0) {
            ::close(fd[1]);
            fd[1] = -1;
        }
    }
};

} // namespace

ProcessResult run_process(const std::vector<std::string>& argv, std::string_view input, double timeout_s) {
    if (argv.empty()) {
        throw SolverSpawnError("empty solver command");
    }
    Pipe in, out, err;

    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_adddup2(&actions, in.fd[0], 0);
    posix_spawn_file_actions_adddup2(&actions, out.fd[1], 1);
    posix_spawn_file_actions_adddup2(&actions, err.fd[1], 2);
    posix_spawnattr_t attr;
    posix_spawnattr_init(&attr);
    posix_spawnattr_setflags(&attr, POSIX_SPAWN_SETPGROUP);
    posix_spawnattr_setpgroup(&attr, 0);

    std::vector<char*> args;
    for (const auto& a : argv) {
        args.push_back(const_cast<char*>(a.c_str()));
    }
    args.push_back(nullptr);
    pid_t pid = 0;
    int   rc  = posix_spawnp(&pid, args[0], &actions, &attr, args.data(), environ);
    posix_spawn_file_actions_destroy(&actions);
    posix_spawnattr_destroy(&attr);
    if (rc != 0) {
        throw SolverSpawnError("cannot start solver '" + argv[0] + "': " + std::strerror(rc));
    }
    in.close_read();
    out.close_write();
    err.close_write();
    set_nonblocking(in.fd[1]);
    set_nonblocking(out.fd[0]);
    set_nonblocking(err.fd[0]);

    ProcessResult res;
    std::size_t   written  = 0;
    const auto    deadline = std::chrono::steady_clock::now() + std::chrono::duration<double>(timeout_s);
    if (input.empty()) {
        in.close_write();
    }
    std::array<char, 65536> buf{};
    while (out.fd[0] >= 0 || err.fd[0] >= 0) {
        std::vector<pollfd> fds;
        if (in.fd[1] >= 0) {
            fds.push_back({in.fd[1], POLLOUT, 0});
        }
        if (out.fd[0] >= 0) {
            fds.push_back({out.fd[0], POLLIN, 0});
        }
        if (err.fd[0] >= 0) {
            fds.push_back({err.fd[0], POLLIN, 0});
        }
        auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
        if (left.count() <= 0) {
            res.timed_out = true;
            break;
        }
        int n = ::poll(fds.data(), fds.size(), static_cast<int>(std::min<long long>(left.count(), 1000)));
        if (n < 0 && errno != EINTR) {
            break;
        }
        for (const auto& p : fds) {
            if (p.revents == 0) {
                continue;
            }
            if (p.fd == in.fd[1]) {
                ssize_t w = ::write(p.fd, input.data() + written, input.size() - written);
                if (w > 0) {
                    written += static_cast<std::size_t>(w);
                }
                if (written == input.size() || (w < 0 && errno != EAGAIN && errno != EINTR)) {
                    in.close_write();
                }
                continue;
            }
            ssize_t r = ::read(p.fd, buf.data(), buf.size());
            if (r > 0) {
                (p.fd == out.fd[0] ? res.out : res.err).append(buf.data(), static_cast<std::size_t>(r));
            }
            else if (r == 0 || (errno != EAGAIN && errno != EINTR)) {
                p.fd == out.fd[0] ? out.close_read() : err.close_read();
            }
        }
    }
    if (res.timed_out) {
        ::killpg(pid, SIGKILL);
    }
    int status = 0;
    while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
    }
    if (WIFEXITED(status)) {
        res.exit_code = WEXITSTATUS(status);
    }
    else if (WIFSIGNALED(status)) {
        res.exit_code = 128 + WTERMSIG(status);
    }
    return res;
}

namespace {

// Solver exit codes: 10 sat, 20 unsat, 30 sat and search exhausted, 0 unknown.
bool accepted_exit(int code) { return code == 0 || code == 10 || code == 20 || code == 30; }

} // namespace

SolveOutcome Oracle::run(const Program& p, const std::vector<std::string>& mode_args) {
    auto argv = cfg_.argv();
    argv.insert(argv.end(), mode_args.begin(), mode_args.end());
    auto   start  = std::chrono::steady_clock::now();
    double budget = cfg_.timeout_s;
    if (deadline_) {
        budget = std::min(budget, std::chrono::duration<double>(*deadline_ - start).count());
        if (budget <= 0) {
            return SolveOutcome{SolveStatus::Unknown, {}, {}, "time budget exhausted"};
        }
    }
    ++calls_;
    auto proc = run_process(argv, emit_text(p), budget);
    seconds_ += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    SolveOutcome outcome;
    if (proc.timed_out) {
        outcome.status = SolveStatus::Unknown;
        outcome.reason = "solver timed out";
        return outcome;
    }
    auto first_err_line = proc.err.substr(0, proc.err.find('\n'));
    if (!accepted_exit(proc.exit_code)) {
        throw SolverProtocolError("solver exited with code " + std::to_string(proc.exit_code) +
                                  (first_err_line.empty() ? "" : ": " + first_err_line));
    }
    auto parsed = parse_solver_output(proc.out);
    if (!parsed.status) {
        throw SolverProtocolError("solver output has no status line" +
                                  (first_err_line.empty() ? "" : " (" + first_err_line + ")"));
    }
    outcome.status         = *parsed.status;
    outcome.models         = std::move(parsed.models);
    outcome.raw_cost_lines = std::move(parsed.cost_lines);
    if (outcome.status == SolveStatus::Unsat) {
        outcome.models.clear();
    }
    if (outcome.status == SolveStatus::Unknown) {
        outcome.models.clear();
        outcome.reason = "solver reported UNKNOWN";
    }
    return outcome;
}

SolveOutcome Oracle::solve_optimal(const Program& p) {
    bool weighted = !p.weaks.empty();
    auto out      = run(p, {"--opt-mode=opt", "--quiet=1,2,2", weighted ? "0" : "1"});
    if (out.has_model()) {
        // With quiet=1 only the last (optimal) model is printed.
        out.models.erase(out.models.begin(), out.models.end() - 1);
        if (!weighted && out.status == SolveStatus::Sat) {
            out.status = SolveStatus::OptimumFound;
        }
    }
    else if (out.status == SolveStatus::Sat || out.status == SolveStatus::OptimumFound) {
        throw SolverProtocolError("solver reported a model but printed none");
    }
    return out;
}

SolveOutcome Oracle::enumerate_optimal(const Program& p) {
    bool weighted = !p.weaks.empty();
    auto out      = run(p, {"--opt-mode=optN", "--quiet=0,2,2", "0"});
    if (!out.has_model()) {
        return out;
    }
    // Pre-optimal models may be printed as well; keep the cost-minimal ones.
    std::set<Interpretation> unique(out.models.begin(), out.models.end());
    std::vector<Interpretation> kept;
    if (weighted) {
        std::vector<std::pair<CostVector, const Interpretation*>> costed;
        for (const auto& m : unique) {
            costed.emplace_back(evaluate_cost(p.weaks, m), &m);
        }
        CostVector best = costed.front().first;
        for (const auto& [c, _] : costed) {
            if (dominates(c, best)) {
                best = c;
            }
        }
        for (const auto& [c, m] : costed) {
            if (c == best) {
                kept.push_back(*m);
            }
        }
    }
    else {
        kept.assign(unique.begin(), unique.end());
    }
    if (cfg_.model_limit > 0 && kept.size() > static_cast<std::size_t>(cfg_.model_limit)) {
        kept.resize(static_cast<std::size_t>(cfg_.model_limit));
    }
    out.models = std::move(kept);
    if (out.status == SolveStatus::Sat) {
        out.status = SolveStatus::OptimumFound;
    }
    return out;
}

SolveOutcome solve_optimal(const Program& p, const SolverConfig& cfg) { return Oracle(cfg).solve_optimal(p); }

SolveOutcome enumerate_optimal(const Program& p, const SolverConfig& cfg) { return Oracle(cfg).enumerate_optimal(p); }

std::string probe(const SolverConfig& cfg) {
    auto argv = cfg.argv();
    argv.emplace_back("--version");
    auto version = run_process(argv, "", cfg.timeout_s);
    if (version.timed_out) {
        throw SolverProtocolError("solver did not answer --version in time");
    }
    Oracle  oracle(cfg);
    Program p;
    p.add(Rule::fact(Atom("caspr_probe")));
    auto out = oracle.solve_optimal(p);
    if (out.status != SolveStatus::OptimumFound || out.models.size() != 1 ||
        !out.models.front().contains(Atom("caspr_probe"))) {
        throw SolverProtocolError("solver did not report the expected model for a one-fact program");
    }
    auto line = version.out.substr(0, version.out.find('\n'));
    return line.empty() ? cfg.command : line;
}

} // namespace caspr
