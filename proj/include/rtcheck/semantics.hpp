#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "rtcheck/model.hpp"
#include "rtcheck/nodeset.hpp"

namespace rtcheck {

// One step of the discrete semantics is: read a letter, take the unique
// enabled transition, reset, then advance every clock by one time unit with
// per-clock capping (cap = largest compared constant + 1; the cap value
// stands for every larger value).

using ClockValue = std::uint16_t;

struct Configuration {
    StateId state = 0;
    std::vector<ClockValue> clocks;

    bool operator==(const Configuration&) const = default;
};

struct ConfigurationHash {
    std::size_t operator()(const Configuration& c) const {
        std::size_t h = static_cast<std::size_t>(c.state) * 0x9e3779b97f4a7c15ull;
        for (ClockValue v : c.clocks) h = (h ^ v) * 0x100000001b3ull;
        return h;
    }
};

using Trace = std::vector<Letter>;

constexpr std::int64_t kDefaultMaxGraphNodes = 5'000'000;

struct ProductLimits {
    std::int64_t max_states = 1'000'000;
    std::int64_t max_transitions = 10'000'000;
};

std::vector<Configuration> initial_configs(const TimedAutomaton& ta);

// The unique successor configuration. Throws StructuralError when zero or
// more than one transition is enabled (completeness/determinism violation).
Configuration successor(const TimedAutomaton& ta, const Configuration& cfg, Letter letter);

// Configuration sequence of length |trace|+1 from the single initial
// configuration; throws on multi-initial automata.
std::vector<Configuration> run_trace(const TimedAutomaton& ta, const Trace& trace);

// Synchronous product: pairwise states, conjoined guards, unioned resets,
// accepting iff both accept; per-factor accepting flags are concatenated so
// factor error/success sets stay computable on the product.
TimedAutomaton product(const TimedAutomaton& a, const TimedAutomaton& b,
                       const ProductLimits& limits = {});

// Finite semantic graph: every reachable capped configuration, one edge per
// enabled (transition, configuration) pair. Letters inducing the same
// transition share the edge; concrete letters are materialized only for
// witness output.
struct SemanticGraph {
    struct Edge {
        int transition;
        int target;
    };

    TimedAutomaton ta;  // owned copy
    std::vector<int> caps;
    std::vector<Configuration> nodes;
    std::vector<int> initial;
    std::vector<int> out_start;  // CSR over nodes, size nodes+1
    std::vector<Edge> out_edges;
    std::vector<int> in_start;  // CSR of predecessor node ids (one per edge)
    std::vector<int> in_preds;
    std::vector<std::uint32_t> factor_acc;  // per node
    std::vector<int> depth;                 // BFS distance from the initial set
    std::vector<int> parent_node;           // BFS tree, -1 at initial nodes
    std::vector<int> parent_edge;           // index into out_edges of the parent
    std::unordered_map<Configuration, int, ConfigurationHash> index;

    int num_nodes() const { return static_cast<int>(nodes.size()); }
    int num_factors() const { return ta.num_factors; }
    int node_of(const Configuration& c) const;

    // Unique outgoing edge enabled for the letter.
    const Edge& edge_for(int node, Letter letter) const;
    int step(int node, Letter letter) const { return edge_for(node, letter).target; }

    // Shortest letter path from the initial set to the node, along BFS parents.
    Trace prefix_to(int node) const;
};

SemanticGraph build_graph(const TimedAutomaton& ta,
                          std::int64_t max_nodes = kDefaultMaxGraphNodes);

// Builds the semantic graph of a factor product directly, without
// materializing the syntactic product automaton: only reachable state tuples
// and transition combinations that some letter actually selects are interned.
// Equivalent to build_graph(product(...)) up to state numbering, but immune
// to the syntactic blowup of folded products.
SemanticGraph build_product_graph(const std::vector<const TimedAutomaton*>& factors,
                                  std::int64_t max_nodes = kDefaultMaxGraphNodes);

// Nodes at BFS distance <= k.
NodeSet reach_k(const SemanticGraph& g, int k);

}  // namespace rtcheck
