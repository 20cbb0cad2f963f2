#pragma once

#include <optional>
#include <span>
#include <string>

#include "rtcheck/nodeset.hpp"
#include "rtcheck/semantics.hpp"

namespace rtcheck {

// Set operators over a SemanticGraph for the CTL fragment used by the
// consistency checks. All operators are pure functions of (graph, sets); the
// graph is shared read-only.

// Nodes whose factor-state is accepting.
NodeSet accepting_nodes(const SemanticGraph& g, int factor);

// Nodes from which no node with an accepting factor-state is reachable
// (reachability includes the node itself). For a safety factor this is
// exactly the non-accepting nodes.
NodeSet error_set(const SemanticGraph& g, int factor);

// Nodes from which no node with a non-accepting factor-state is reachable.
NodeSet success_set(const SemanticGraph& g, int factor);

// Union / intersection over the given factors; the empty union is the empty
// set, the empty intersection every node.
NodeSet error_product(const SemanticGraph& g, std::span<const int> factors);
NodeSet success_product(const SemanticGraph& g, std::span<const int> factors);

// All successors in target / some successor in target.
NodeSet ax(const SemanticGraph& g, const NodeSet& target);
NodeSet ex(const SemanticGraph& g, const NodeSet& target);

// Least fixpoint X = target ∪ ax(X): nodes with no infinite target-avoiding
// path.
NodeSet af(const SemanticGraph& g, const NodeSet& target);

// Bounded inevitability excluding the current node: a node is in the result
// iff every path of length l hits target at one of steps 1..l. l = 0 yields
// the empty set.
NodeSet af_bounded(const SemanticGraph& g, const NodeSet& target, int l);

// The whole iterate chain X_0 = ∅, X_{j+1} = ax(target ∪ X_j), j = 0..l.
std::vector<NodeSet> af_bounded_iterates(const SemanticGraph& g, const NodeSet& target, int l);

struct WitnessTrace {
    Trace trace;
    std::vector<Configuration> configs;  // matching run, length |trace|+1
    std::string target_kind;
};

// Shortest trace from an initial node to a node of `target`, passing through
// `safe` nodes only (the endpoint needs only `target`), within depth_bound
// steps when given. BFS over node indices with edges in construction order
// and the lexicographically smallest letter of each edge's class, so the
// result is canonical.
std::optional<WitnessTrace> eu_witness(const SemanticGraph& g, const NodeSet& safe,
                                       const NodeSet& target,
                                       std::optional<int> depth_bound = std::nullopt,
                                       std::string target_kind = "target");

// Letter chosen for an edge in witness output.
Letter edge_letter(const SemanticGraph& g, const SemanticGraph::Edge& e);

}  // namespace rtcheck
