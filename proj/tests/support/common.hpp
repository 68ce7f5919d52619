#pragma once

#include <caspr/oracle.hpp>
#include <caspr/parser.hpp>

#include <string>

namespace testing_support {

inline caspr::SolverConfig solver() {
    auto cfg      = caspr::SolverConfig::from_env();
    cfg.timeout_s = 120;
    return cfg;
}

inline caspr::Program prog(const std::string& text) {
    return caspr::parse_program(text, caspr::ParseOptions{"<test>", true});
}

inline caspr::Interpretation atoms(const std::string& text) { return caspr::parse_atoms(text); }

inline std::string data(const std::string& name) { return std::string(CASPR_TEST_DATA) + "/" + name; }

inline const char* kRunningExample = R"(%@exists
a :- not na.
na :- not a.
b :- not nb.
nb :- not b.
%@forall
c :- not nc.
nc :- not c.
:~ a, not c. [1@1]
:~ b, not nc. [1@1]
%@constraint
:- nb, nc.
)";

// Running example with the three-constraint check program used for the worked transformations.
inline const char* kWorkedInstance = R"(%@exists
a :- not na.
na :- not a.
b :- not nb.
nb :- not b.
%@forall
c :- not nc.
nc :- not c.
:~ a, not c. [1@1]
:~ b, not nc. [1@1]
%@constraint
:- b, c.
:- nb, nc.
:- b, a, nc.
)";

} // namespace testing_support
