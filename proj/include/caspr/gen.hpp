#pragma once

#include <caspr/ast.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace caspr {

class IllFormedQbf : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct QbfLiteral {
    std::string var;
    bool        positive{true};
};

/// forall X exists Y phi, phi in CNF.
struct Qbf2 {
    std::vector<std::string>             x_vars;
    std::vector<std::string>             y_vars;
    std::vector<std::vector<QbfLiteral>> clauses;

    /// Throws IllFormedQbf.
    void check() const;
};

/// Random formula with variables x1..xNX, y1..yNY and clauses of 1 to 3 literals.
[[nodiscard]] Qbf2 random_qbf(int nx, int ny, int nclauses, std::uint64_t seed);

/// Text of the forall-forall encoding, which is coherent iff the formula is true.
[[nodiscard]] std::string qbf_instance_text(const Qbf2& phi);
[[nodiscard]] QuantifiedProgram gen_qbf(const Qbf2& phi);

/// Clique-coloring instance over G(n, density) with edges drawn from
/// mt19937_64(seed). Coherent iff the vertices can be 2-colored with no
/// monochromatic maximal clique of two or more vertices.
[[nodiscard]] std::string cc_instance_text(int n, double density, std::uint64_t seed);
[[nodiscard]] QuantifiedProgram gen_cc(int n, double density, std::uint64_t seed);

/// Edges (i, j), i < j, 1-based, as drawn for cc_instance_text.
[[nodiscard]] std::vector<std::pair<int, int>> er_edges(int n, double density, std::uint64_t seed);

} // namespace caspr
