#pragma once

#include <caspr/ast.hpp>

#include <string>

namespace caspr {

[[nodiscard]] std::string to_text(const Term& t);
[[nodiscard]] std::string to_text(const Atom& a);
[[nodiscard]] std::string to_text(CmpOp op);
[[nodiscard]] std::string to_text(const Literal& l);
[[nodiscard]] std::string to_text(const Rule& r);
[[nodiscard]] std::string to_text(const WeakConstraint& w);
[[nodiscard]] std::string to_text(const Interpretation& m);

/// One statement per line, rules first then weak constraints, in program order.
[[nodiscard]] std::string emit_text(const Program& p);

/// Instance-file form with `%@exists` / `%@forall` / `%@constraint` / `%@global` sections.
[[nodiscard]] std::string emit_text(const QuantifiedProgram& qp);

} // namespace caspr
