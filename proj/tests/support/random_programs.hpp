#pragma once

#include <caspr/ast.hpp>

#include <random>
#include <string>

namespace gen {

struct AltOptions {
    bool existential_only{false};
    bool global_weaks{false};
    int  max_pairs{3};
    int  max_p2_weaks{2};
    int  max_c_constraints{3};
};

/// Ground stratified program over at most `max_atoms` atoms, with constraints.
std::string stratified_text(std::mt19937_64& rng, int max_atoms = 8);

/// Ground alternating quantified program in the instance format.
std::string alternating_text(std::mt19937_64& rng, const AltOptions& opts = {});

caspr::Program           stratified(std::mt19937_64& rng, int max_atoms = 8);
caspr::QuantifiedProgram alternating(std::mt19937_64& rng, const AltOptions& opts = {});

} // namespace gen
