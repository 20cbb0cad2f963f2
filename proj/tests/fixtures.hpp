#pragma once

#include <random>
#include <string>
#include <vector>

#include "rtcheck/model.hpp"
#include "rtcheck/semantics.hpp"

namespace fixtures {

using namespace rtcheck;

// Shared proposition order of the running example.
inline std::vector<std::string> example_props() { return {"request", "response", "repair"}; }
constexpr int kRequest = 0;
constexpr int kResponse = 1;
constexpr int kRepair = 2;

inline Letter letter(bool request, bool response, bool repair) {
    return (request ? 1u : 0u) | (response ? 2u : 0u) | (repair ? 4u : 0u);
}

// Hand-encoded automata of the running example (as drawn, reachable-complete;
// pass through complete() for the box check). Disjunctive self-loop timing is
// split into clock-disjoint transitions.
TimedAutomaton fig2_r1();
TimedAutomaton fig2_r2();

SupRequirement sup_r1();  // request ->[3,4] response
SupRequirement sup_r2();  // repair ->[5,5] !response [3,3]
SupRequirement sup_r3();  // repair -> !request [5,5]

// Builds a set with per-requirement clock renaming, mirroring the loader.
RequirementSet make_set(const std::vector<std::string>& props,
                        std::vector<std::pair<std::string, TimedAutomaton>> automata);
RequirementSet make_sup_set(const std::vector<std::string>& props,
                            std::vector<std::pair<std::string, SupRequirement>> sups);

// Running-example sets built from the SUP encodings.
RequirementSet example_set_12();
RequirementSet example_set_123();
// Hand-encoded (Fig.-style) variant, completed on load.
RequirementSet example_set_12_fig();

// Random SUP over num_props propositions with constants <= max_const;
// timed=false forces all windows to [0, 0].
SupRequirement random_sup(std::mt19937& rng, int num_props, int max_const, bool timed);
RequirementSet random_sup_set(std::mt19937& rng, int count, int num_props, int max_const);

// Random complete deterministic automaton: one proposition, one clock,
// transitions defined per (letter literal, clock region) cell.
TimedAutomaton random_cdta(std::mt19937& rng, const std::vector<std::string>& props,
                           int num_states, int split_const);

}  // namespace fixtures
