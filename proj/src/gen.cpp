#include <caspr/gen.hpp>

#include <caspr/parser.hpp>

#include <cctype>
#include <random>
#include <set>
#include <sstream>

namespace caspr {

namespace {

bool is_constant_name(const std::string& s) {
    if (s.empty() || s[0] < 'a' || s[0] > 'z' || s.starts_with(kReservedPrefix)) {
        return false;
    }
    for (char c : s) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') {
            return false;
        }
    }
    return true;
}

// Uniform double in [0, 1) from the top 53 bits; same on every platform,
// unlike std::uniform_real_distribution.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

} // namespace

void Qbf2::check() const {
    std::set<std::string> xs, ys;
    for (const auto& v : x_vars) {
        if (!is_constant_name(v) || !xs.insert(v).second) {
            throw IllFormedQbf("bad or duplicate universal variable '" + v + "'");
        }
    }
    for (const auto& v : y_vars) {
        if (!is_constant_name(v) || !ys.insert(v).second) {
            throw IllFormedQbf("bad or duplicate existential variable '" + v + "'");
        }
        if (xs.contains(v)) {
            throw IllFormedQbf("variable '" + v + "' is both universal and existential");
        }
    }
    if (clauses.empty()) {
        throw IllFormedQbf("formula has no clauses");
    }
    for (std::size_t i = 0; i < clauses.size(); ++i) {
        if (clauses[i].empty() || clauses[i].size() > 3) {
            throw IllFormedQbf("clause " + std::to_string(i + 1) + " must have 1 to 3 literals");
        }
        for (const auto& lit : clauses[i]) {
            if (!xs.contains(lit.var) && !ys.contains(lit.var)) {
                throw IllFormedQbf("clause " + std::to_string(i + 1) + " uses undeclared variable '" + lit.var + "'");
            }
        }
    }
}

Qbf2 random_qbf(int nx, int ny, int nclauses, std::uint64_t seed) {
    if (nx < 0 || ny < 0 || nx + ny == 0 || nclauses < 1) {
        throw IllFormedQbf("need at least one variable and one clause");
    }
    std::mt19937_64 rng(seed);
    Qbf2            phi;
    for (int i = 1; i <= nx; ++i) {
        phi.x_vars.push_back("x" + std::to_string(i));
    }
    for (int i = 1; i <= ny; ++i) {
        phi.y_vars.push_back("y" + std::to_string(i));
    }
    const int nvars = nx + ny;
    for (int c = 0; c < nclauses; ++c) {
        int                     width = 1 + static_cast<int>(rng() % 3);
        std::vector<QbfLiteral> clause;
        for (int k = 0; k < width; ++k) {
            auto v = static_cast<int>(rng() % static_cast<std::uint64_t>(nvars));
            clause.push_back({v < nx ? phi.x_vars[v] : phi.y_vars[v - nx], (rng() & 1) == 0});
        }
        phi.clauses.push_back(std::move(clause));
    }
    return phi;
}

std::string qbf_instance_text(const Qbf2& phi) {
    phi.check();
    std::ostringstream out;
    out << "% forall-forall 2-QBF encoding: " << phi.x_vars.size() << " universal, " << phi.y_vars.size()
        << " existential, " << phi.clauses.size() << " clauses\n";
    out << "%@forall\n";
    for (const auto& x : phi.x_vars) {
        out << "taup(" << x << ",t) :- not taup(" << x << ",f).\n";
        out << "taup(" << x << ",f) :- not taup(" << x << ",t).\n";
    }
    out << "%@forall\n";
    for (const auto& x : phi.x_vars) {
        out << "tau(" << x << ",t) :- taup(" << x << ",t).\n";
        out << "tau(" << x << ",f) :- taup(" << x << ",f).\n";
    }
    for (const auto& y : phi.y_vars) {
        out << "tau(" << y << ",t) :- not tau(" << y << ",f).\n";
        out << "tau(" << y << ",f) :- not tau(" << y << ",t).\n";
    }
    for (std::size_t i = 0; i < phi.clauses.size(); ++i) {
        for (const auto& lit : phi.clauses[i]) {
            out << "sat(c" << i + 1 << ") :- tau(" << lit.var << "," << (lit.positive ? 't' : 'f') << ").\n";
        }
    }
    for (std::size_t i = 0; i < phi.clauses.size(); ++i) {
        out << "unsat :- not sat(c" << i + 1 << ").\n";
    }
    out << ":~ unsat. [1@1]\n";
    out << "%@constraint\n";
    out << ":- unsat.\n";
    return out.str();
}

QuantifiedProgram gen_qbf(const Qbf2& phi) { return parse_quantified(qbf_instance_text(phi), "<gen-qbf>"); }

std::vector<std::pair<int, int>> er_edges(int n, double density, std::uint64_t seed) {
    std::mt19937_64                  rng(seed);
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            if (unit(rng) < density) {
                edges.emplace_back(i, j);
            }
        }
    }
    return edges;
}

std::string cc_instance_text(int n, double density, std::uint64_t seed) {
    if (n < 2) {
        throw std::invalid_argument("clique-coloring needs at least 2 vertices");
    }
    if (density < 0 || density > 1) {
        throw std::invalid_argument("density must lie in [0, 1]");
    }
    std::ostringstream out;
    out << "% clique-coloring n=" << n << " density=" << density << " seed=" << seed << " prng=mt19937_64\n";
    out << "%@exists\n";
    for (int v = 1; v <= n; ++v) {
        out << "vertex(" << v << ").\n";
    }
    for (auto [i, j] : er_edges(n, density, seed)) {
        out << "edge(" << i << "," << j << ").\n";
    }
    out << "adj(X,Y) :- edge(X,Y).\n"
           "adj(Y,X) :- edge(X,Y).\n"
           "red(X) :- vertex(X), not green(X).\n"
           "green(X) :- vertex(X), not red(X).\n"
           "% swapping colors preserves solutions\n"
           ":- green(1).\n"
           "%@forall\n"
           "in_clique(X) :- vertex(X), not out_clique(X).\n"
           "out_clique(X) :- vertex(X), not in_clique(X).\n"
           ":- in_clique(X), in_clique(Y), X < Y, not adj(X,Y).\n"
           "blocked(X) :- out_clique(X), in_clique(Y), not adj(X,Y).\n"
           ":- out_clique(X), not blocked(X).\n"
           "%@constraint\n"
           "mixed :- in_clique(X), in_clique(Y), red(X), green(Y).\n"
           "big :- in_clique(X), in_clique(Y), X < Y.\n"
           ":- big, not mixed.\n";
    return out.str();
}

QuantifiedProgram gen_cc(int n, double density, std::uint64_t seed) {
    return parse_quantified(cc_instance_text(n, density, seed), "<gen-cc>");
}

} // namespace caspr
