#include "rtcheck/modelcheck.hpp"

#include <algorithm>
#include <deque>

namespace rtcheck {

NodeSet accepting_nodes(const SemanticGraph& g, int factor) {
    NodeSet r(g.num_nodes());
    const std::uint32_t bit = std::uint32_t{1} << factor;
    for (int n = 0; n < g.num_nodes(); ++n)
        if (g.factor_acc[n] & bit) r.set(n);
    return r;
}

namespace {

// Backward closure: nodes from which some target node is reachable
// (including the targets themselves).
NodeSet can_reach(const SemanticGraph& g, const NodeSet& targets) {
    NodeSet seen(g.num_nodes());
    std::deque<int> queue;
    targets.for_each([&](std::size_t n) {
        seen.set(n);
        queue.push_back(static_cast<int>(n));
    });
    while (!queue.empty()) {
        int n = queue.front();
        queue.pop_front();
        for (int i = g.in_start[n]; i < g.in_start[n + 1]; ++i) {
            int p = g.in_preds[i];
            if (!seen.test(p)) {
                seen.set(p);
                queue.push_back(p);
            }
        }
    }
    return seen;
}

}  // namespace

NodeSet error_set(const SemanticGraph& g, int factor) {
    return can_reach(g, accepting_nodes(g, factor)).complement();
}

NodeSet success_set(const SemanticGraph& g, int factor) {
    return can_reach(g, accepting_nodes(g, factor).complement()).complement();
}

NodeSet error_product(const SemanticGraph& g, std::span<const int> factors) {
    NodeSet r(g.num_nodes());
    for (int f : factors) r |= error_set(g, f);
    return r;
}

NodeSet success_product(const SemanticGraph& g, std::span<const int> factors) {
    NodeSet r(g.num_nodes(), true);
    for (int f : factors) r &= success_set(g, f);
    return r;
}

NodeSet ax(const SemanticGraph& g, const NodeSet& target) {
    NodeSet r(g.num_nodes());
    for (int n = 0; n < g.num_nodes(); ++n) {
        bool all = true;
        for (int e = g.out_start[n]; e < g.out_start[n + 1] && all; ++e)
            all = target.test(g.out_edges[e].target);
        if (all) r.set(n);
    }
    return r;
}

NodeSet ex(const SemanticGraph& g, const NodeSet& target) {
    NodeSet r(g.num_nodes());
    for (int n = 0; n < g.num_nodes(); ++n)
        for (int e = g.out_start[n]; e < g.out_start[n + 1]; ++e)
            if (target.test(g.out_edges[e].target)) {
                r.set(n);
                break;
            }
    return r;
}

NodeSet af(const SemanticGraph& g, const NodeSet& target) {
    // Counting propagation: a node joins once all its out-edges lead into the
    // set (or it is a target node).
    NodeSet in(g.num_nodes());
    std::vector<int> remaining(g.num_nodes());
    for (int n = 0; n < g.num_nodes(); ++n) remaining[n] = g.out_start[n + 1] - g.out_start[n];

    std::deque<int> queue;
    target.for_each([&](std::size_t n) {
        in.set(n);
        queue.push_back(static_cast<int>(n));
    });
    while (!queue.empty()) {
        int n = queue.front();
        queue.pop_front();
        for (int i = g.in_start[n]; i < g.in_start[n + 1]; ++i) {
            int p = g.in_preds[i];
            if (--remaining[p] == 0 && !in.test(p)) {
                in.set(p);
                queue.push_back(p);
            }
        }
    }
    return in;
}

NodeSet af_bounded(const SemanticGraph& g, const NodeSet& target, int l) {
    NodeSet x(g.num_nodes());
    for (int j = 0; j < l; ++j) {
        NodeSet next = ax(g, target | x);
        if (next == x) break;  // chain is stationary from here on
        x = std::move(next);
    }
    return x;
}

std::vector<NodeSet> af_bounded_iterates(const SemanticGraph& g, const NodeSet& target, int l) {
    std::vector<NodeSet> iterates;
    iterates.reserve(l + 1);
    iterates.emplace_back(g.num_nodes());
    for (int j = 1; j <= l; ++j) {
        NodeSet next = ax(g, target | iterates.back());
        if (next == iterates.back()) {
            while (static_cast<int>(iterates.size()) <= l) iterates.push_back(iterates.back());
            break;
        }
        iterates.push_back(std::move(next));
    }
    return iterates;
}

Letter edge_letter(const SemanticGraph& g, const SemanticGraph::Edge& e) {
    auto letter = smallest_satisfying(g.ta.transitions[e.transition].when, g.ta.num_props());
    if (!letter) throw StructuralError("edge with unsatisfiable boolean guard");
    return *letter;
}

std::optional<WitnessTrace> eu_witness(const SemanticGraph& g, const NodeSet& safe,
                                       const NodeSet& target, std::optional<int> depth_bound,
                                       std::string target_kind) {
    std::vector<int> prev_node(g.num_nodes(), -2);  // -2 unvisited, -1 root
    std::vector<int> prev_edge(g.num_nodes(), -1);
    std::deque<int> queue;
    int found = -1;

    for (int n : g.initial) {
        if (prev_node[n] != -2) continue;
        prev_node[n] = -1;
        if (target.test(n)) {
            found = n;
            break;
        }
        if (safe.test(n)) queue.push_back(n);
    }

    std::vector<int> bfs_depth(g.num_nodes(), 0);
    while (found < 0 && !queue.empty()) {
        int n = queue.front();
        queue.pop_front();
        if (depth_bound && bfs_depth[n] >= *depth_bound) continue;
        for (int e = g.out_start[n]; e < g.out_start[n + 1]; ++e) {
            int m = g.out_edges[e].target;
            if (prev_node[m] != -2) continue;
            prev_node[m] = n;
            prev_edge[m] = e;
            bfs_depth[m] = bfs_depth[n] + 1;
            if (target.test(m)) {
                found = m;
                break;
            }
            if (safe.test(m)) queue.push_back(m);
        }
    }
    if (found < 0) return std::nullopt;

    WitnessTrace w;
    w.target_kind = std::move(target_kind);
    std::vector<int> path;
    for (int n = found; n >= 0; n = prev_node[n]) path.push_back(n);
    std::reverse(path.begin(), path.end());
    for (int n : path) {
        w.configs.push_back(g.nodes[n]);
        if (prev_edge[n] >= 0) w.trace.push_back(edge_letter(g, g.out_edges[prev_edge[n]]));
    }
    return w;
}

}  // namespace rtcheck
