#include "rtcheck/semantics.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace rtcheck {

namespace {

bool atom_holds(int value, CmpOp op, int bound) {
    switch (op) {
        case CmpOp::Lt: return value < bound;
        case CmpOp::Le: return value <= bound;
        case CmpOp::Eq: return value == bound;
        case CmpOp::Ge: return value >= bound;
        case CmpOp::Gt: return value > bound;
    }
    return false;
}

Configuration apply_step(const TimedAutomaton& ta, const Configuration& cfg,
                         const Transition& t, const std::vector<int>& caps) {
    Configuration next;
    next.state = t.tgt;
    next.clocks = cfg.clocks;
    for (ClockId c : t.resets) next.clocks[c] = 0;
    for (std::size_t c = 0; c < next.clocks.size(); ++c)
        next.clocks[c] = static_cast<ClockValue>(
            std::min<int>(next.clocks[c] + 1, caps[c]));
    return next;
}

}  // namespace

std::vector<Configuration> initial_configs(const TimedAutomaton& ta) {
    std::vector<Configuration> out;
    for (StateId s : ta.initial)
        out.push_back({s, std::vector<ClockValue>(ta.num_clocks(), 0)});
    return out;
}

Configuration successor(const TimedAutomaton& ta, const Configuration& cfg, Letter letter) {
    std::vector<int> caps = ta.clock_caps();
    const Transition* enabled = nullptr;
    for (const auto& t : ta.transitions) {
        if (t.src != cfg.state) continue;
        if (!t.when.eval(letter) || !eval_clock_guard(t.guard, cfg.clocks)) continue;
        if (enabled)
            throw StructuralError("determinism violation: two transitions enabled at state " +
                                  ta.state_names[cfg.state]);
        enabled = &t;
    }
    if (!enabled)
        throw StructuralError("completeness violation: no transition enabled at state " +
                              ta.state_names[cfg.state]);
    return apply_step(ta, cfg, *enabled, caps);
}

std::vector<Configuration> run_trace(const TimedAutomaton& ta, const Trace& trace) {
    auto init = initial_configs(ta);
    if (init.size() != 1)
        throw StructuralError("run_trace requires a single initial configuration, got " +
                              std::to_string(init.size()));
    std::vector<int> caps = ta.clock_caps();
    auto by_src = ta.transitions_by_src();

    std::vector<Configuration> run;
    run.reserve(trace.size() + 1);
    run.push_back(init[0]);
    for (Letter letter : trace) {
        const Configuration& cur = run.back();
        const Transition* enabled = nullptr;
        for (int ti : by_src[cur.state]) {
            const Transition& t = ta.transitions[ti];
            if (!t.when.eval(letter) || !eval_clock_guard(t.guard, cur.clocks)) continue;
            if (enabled)
                throw StructuralError("determinism violation at state " +
                                      ta.state_names[cur.state]);
            enabled = &t;
        }
        if (!enabled)
            throw StructuralError("completeness violation at state " + ta.state_names[cur.state]);
        run.push_back(apply_step(ta, cur, *enabled, caps));
    }
    return run;
}

TimedAutomaton product(const TimedAutomaton& a, const TimedAutomaton& b,
                       const ProductLimits& limits) {
    if (a.prop_names != b.prop_names)
        throw StructuralError("product factors must share the same proposition list");
    for (const auto& ca : a.clock_names)
        for (const auto& cb : b.clock_names)
            if (ca == cb) throw StructuralError("product factors share clock name '" + ca + "'");

    const std::int64_t ns = static_cast<std::int64_t>(a.num_states()) * b.num_states();
    if (ns > limits.max_states)
        throw ResourceLimitError("product would have " + std::to_string(ns) + " states", ns);

    TimedAutomaton out;
    out.prop_names = a.prop_names;
    out.num_factors = a.num_factors + b.num_factors;
    out.clock_names = a.clock_names;
    out.clock_names.insert(out.clock_names.end(), b.clock_names.begin(), b.clock_names.end());
    const int offset = a.num_clocks();
    const std::uint32_t full = out.num_factors >= 32
                                   ? ~std::uint32_t{0}
                                   : (std::uint32_t{1} << out.num_factors) - 1;

    auto id = [&](int sa, int sb) { return sa * b.num_states() + sb; };
    out.state_names.reserve(ns);
    for (int sa = 0; sa < a.num_states(); ++sa) {
        for (int sb = 0; sb < b.num_states(); ++sb) {
            out.state_names.push_back(a.state_names[sa] + "," + b.state_names[sb]);
            std::uint32_t mask =
                a.factor_accepting[sa] | (b.factor_accepting[sb] << a.num_factors);
            out.factor_accepting.push_back(mask);
            out.accepting.push_back(mask == full);
        }
    }
    for (StateId ia : a.initial)
        for (StateId ib : b.initial) out.initial.push_back(id(ia, ib));

    std::int64_t emitted = 0;
    auto a_by_src = a.transitions_by_src();
    auto b_by_src = b.transitions_by_src();
    for (int sa = 0; sa < a.num_states(); ++sa) {
        for (int sb = 0; sb < b.num_states(); ++sb) {
            for (int tia : a_by_src[sa]) {
                const Transition& t1 = a.transitions[tia];
                for (int tib : b_by_src[sb]) {
                    const Transition& t2 = b.transitions[tib];
                    BoolExpr when = BoolExpr::conjunction(t1.when, t2.when);
                    if (!bool_satisfiable(when)) continue;
                    ClockConstraint guard = t1.guard;
                    for (const auto& atom : t2.guard.atoms)
                        guard.atoms.push_back({atom.clock + offset, atom.op, atom.bound});
                    if (!clock_guard_satisfiable(guard)) continue;
                    std::vector<ClockId> resets = t1.resets;
                    for (ClockId c : t2.resets) resets.push_back(c + offset);
                    out.transitions.push_back({id(sa, sb), std::move(when), std::move(guard),
                                               std::move(resets), id(t1.tgt, t2.tgt)});
                    if (++emitted > limits.max_transitions)
                        throw ResourceLimitError(
                            "product transition count exceeds " +
                                std::to_string(limits.max_transitions),
                            emitted);
                }
            }
        }
    }
    out.finalize();
    return out;
}

int SemanticGraph::node_of(const Configuration& c) const {
    auto it = index.find(c);
    return it == index.end() ? -1 : it->second;
}

const SemanticGraph::Edge& SemanticGraph::edge_for(int node, Letter letter) const {
    const Edge* found = nullptr;
    for (int e = out_start[node]; e < out_start[node + 1]; ++e) {
        if (ta.transitions[out_edges[e].transition].when.eval(letter)) {
            if (found)
                throw StructuralError("determinism violation in semantic graph at node " +
                                      std::to_string(node));
            found = &out_edges[e];
        }
    }
    if (!found)
        throw StructuralError("completeness violation in semantic graph at node " +
                              std::to_string(node));
    return *found;
}

Trace SemanticGraph::prefix_to(int node) const {
    Trace rev;
    int cur = node;
    while (parent_node[cur] >= 0) {
        const Edge& e = out_edges[parent_edge[cur]];
        auto letter = smallest_satisfying(ta.transitions[e.transition].when, ta.num_props());
        rev.push_back(*letter);
        cur = parent_node[cur];
    }
    std::reverse(rev.begin(), rev.end());
    return rev;
}

SemanticGraph build_graph(const TimedAutomaton& ta, std::int64_t max_nodes) {
    SemanticGraph g;
    g.ta = ta;
    g.caps = ta.clock_caps();
    auto by_src = g.ta.transitions_by_src();

    // Transitions with unsatisfiable boolean guards carry no letters and must
    // not become edges.
    std::vector<char> live(g.ta.transitions.size());
    for (std::size_t i = 0; i < g.ta.transitions.size(); ++i)
        live[i] = bool_satisfiable(g.ta.transitions[i].when) ? 1 : 0;

    std::vector<std::vector<SemanticGraph::Edge>> out;
    std::deque<int> queue;
    auto intern = [&](const Configuration& c, int parent, int parent_edge, int d) {
        auto [it, inserted] = g.index.try_emplace(c, static_cast<int>(g.nodes.size()));
        if (inserted) {
            if (static_cast<std::int64_t>(g.nodes.size()) >= max_nodes)
                throw ResourceLimitError("semantic graph exceeds " + std::to_string(max_nodes) +
                                             " nodes",
                                         max_nodes);
            g.nodes.push_back(c);
            g.factor_acc.push_back(g.ta.factor_accepting[c.state]);
            g.depth.push_back(d);
            g.parent_node.push_back(parent);
            g.parent_edge.push_back(parent_edge);
            out.emplace_back();
            queue.push_back(it->second);
        }
        return it->second;
    };

    for (const auto& c : initial_configs(g.ta)) g.initial.push_back(intern(c, -1, -1, 0));

    int edge_count = 0;
    while (!queue.empty()) {
        int n = queue.front();
        queue.pop_front();
        const Configuration cfg = g.nodes[n];
        for (int ti : by_src[cfg.state]) {
            if (!live[ti]) continue;
            const Transition& t = g.ta.transitions[ti];
            if (!eval_clock_guard(t.guard, cfg.clocks)) continue;
            Configuration next = apply_step(g.ta, cfg, t, g.caps);
            int m = intern(next, n, edge_count + static_cast<int>(out[n].size()),
                           g.depth[n] + 1);
            out[n].push_back({ti, m});
        }
        edge_count += static_cast<int>(out[n].size());
    }

    // Flatten to CSR; parent_edge recorded flat offsets already because nodes
    // are expanded in index order.
    g.out_start.assign(g.num_nodes() + 1, 0);
    for (int n = 0; n < g.num_nodes(); ++n) g.out_start[n + 1] = g.out_start[n] + out[n].size();
    g.out_edges.reserve(edge_count);
    for (auto& edges : out)
        for (auto& e : edges) g.out_edges.push_back(e);

    g.in_start.assign(g.num_nodes() + 1, 0);
    for (const auto& e : g.out_edges) ++g.in_start[e.target + 1];
    for (int n = 0; n < g.num_nodes(); ++n) g.in_start[n + 1] += g.in_start[n];
    g.in_preds.resize(g.out_edges.size());
    std::vector<int> fill = g.in_start;
    for (int n = 0; n < g.num_nodes(); ++n)
        for (int e = g.out_start[n]; e < g.out_start[n + 1]; ++e)
            g.in_preds[fill[g.out_edges[e].target]++] = n;

    return g;
}

NodeSet reach_k(const SemanticGraph& g, int k) {
    NodeSet r(g.num_nodes());
    for (int n = 0; n < g.num_nodes(); ++n)
        if (g.depth[n] <= k) r.set(n);
    return r;
}

namespace {

// Interns reachable state tuples and the transition combinations the
// exploration actually uses, assembling a compact product automaton on the
// side. Letters are enumerated per class: assignments of the union support of
// the candidate guards, everything else false.
struct ProductExplorer {
    const std::vector<const TimedAutomaton*>& factors;
    TimedAutomaton& ta;

    std::map<std::vector<StateId>, StateId> state_ids;
    std::map<std::vector<int>, int> combo_ids;  // factor transition ids -> transition
    std::vector<int> clock_offset;              // per factor

    explicit ProductExplorer(const std::vector<const TimedAutomaton*>& factors,
                             TimedAutomaton& ta)
        : factors(factors), ta(ta) {
        ta.prop_names = factors[0]->prop_names;
        ta.num_factors = 0;
        for (const TimedAutomaton* f : factors) {
            if (f->prop_names != ta.prop_names)
                throw StructuralError("product factors must share the same proposition list");
            clock_offset.push_back(ta.num_clocks());
            ta.clock_names.insert(ta.clock_names.end(), f->clock_names.begin(),
                                  f->clock_names.end());
            ta.num_factors += f->num_factors;
        }
        std::set<std::string> names(ta.clock_names.begin(), ta.clock_names.end());
        if (names.size() != ta.clock_names.size())
            throw StructuralError("product factors share a clock name");
    }

    StateId state_of(const std::vector<StateId>& tuple) {
        auto [it, inserted] = state_ids.try_emplace(tuple, ta.num_states());
        if (!inserted) return it->second;
        std::string name;
        std::uint32_t mask = 0;
        int shift = 0;
        bool all = true;
        for (std::size_t f = 0; f < factors.size(); ++f) {
            if (f) name += ",";
            name += factors[f]->state_names[tuple[f]];
            mask |= factors[f]->factor_accepting[tuple[f]] << shift;
            shift += factors[f]->num_factors;
            all = all && factors[f]->accepting[tuple[f]];
        }
        ta.state_names.push_back(std::move(name));
        ta.factor_accepting.push_back(mask);
        ta.accepting.push_back(all);
        return it->second;
    }

    int transition_of(const std::vector<int>& combo, StateId src,
                      const std::vector<StateId>& src_tuple) {
        auto [it, inserted] = combo_ids.try_emplace(combo, -1);
        if (!inserted) return it->second;
        Transition t;
        t.src = src;
        t.when = BoolExpr::constant(true);
        std::vector<StateId> tgt_tuple(factors.size());
        for (std::size_t f = 0; f < factors.size(); ++f) {
            const Transition& part = factors[f]->transitions[combo[f]];
            t.when = std::move(t.when) && part.when;
            for (const auto& atom : part.guard.atoms)
                t.guard.atoms.push_back({atom.clock + clock_offset[f], atom.op, atom.bound});
            for (ClockId c : part.resets) t.resets.push_back(c + clock_offset[f]);
            tgt_tuple[f] = part.tgt;
        }
        (void)src_tuple;
        t.tgt = state_of(tgt_tuple);
        ta.transitions.push_back(std::move(t));
        it->second = static_cast<int>(ta.transitions.size()) - 1;
        return it->second;
    }
};

}  // namespace

SemanticGraph build_product_graph(const std::vector<const TimedAutomaton*>& factors,
                                  std::int64_t max_nodes) {
    if (factors.empty()) throw StructuralError("product of zero factors");
    const std::size_t k = factors.size();

    SemanticGraph g;
    ProductExplorer explorer(factors, g.ta);

    std::vector<std::vector<std::vector<int>>> by_src(k);
    for (std::size_t f = 0; f < k; ++f) by_src[f] = factors[f]->transitions_by_src();
    std::vector<std::vector<int>> caps(k);
    for (std::size_t f = 0; f < k; ++f) caps[f] = factors[f]->clock_caps();

    // Initial tuple: every factor must have a single initial state here; the
    // general multi-initial case goes through the explicit product.
    std::vector<StateId> init_tuple(k);
    for (std::size_t f = 0; f < k; ++f) {
        if (factors[f]->initial.size() != 1)
            throw StructuralError("build_product_graph requires single-initial factors");
        init_tuple[f] = factors[f]->initial[0];
    }

    std::vector<std::vector<SemanticGraph::Edge>> out;
    std::vector<std::vector<StateId>> node_tuple;  // factor states per node
    std::deque<int> queue;

    auto intern = [&](const Configuration& c, const std::vector<StateId>& tuple, int parent,
                      int parent_edge, int d) {
        auto [it, inserted] = g.index.try_emplace(c, static_cast<int>(g.nodes.size()));
        if (inserted) {
            if (static_cast<std::int64_t>(g.nodes.size()) >= max_nodes)
                throw ResourceLimitError("semantic graph exceeds " + std::to_string(max_nodes) +
                                             " nodes",
                                         max_nodes);
            g.nodes.push_back(c);
            g.factor_acc.push_back(g.ta.factor_accepting[c.state]);
            g.depth.push_back(d);
            g.parent_node.push_back(parent);
            g.parent_edge.push_back(parent_edge);
            out.emplace_back();
            node_tuple.push_back(tuple);
            queue.push_back(it->second);
        }
        return it->second;
    };

    {
        Configuration init;
        init.state = explorer.state_of(init_tuple);
        init.clocks.assign(g.ta.clock_names.size(), 0);
        g.initial.push_back(intern(init, init_tuple, -1, -1, 0));
    }

    std::vector<std::vector<int>> candidates(k);  // clock-enabled per factor
    int edge_count = 0;
    while (!queue.empty()) {
        int n = queue.front();
        queue.pop_front();
        const Configuration cfg = g.nodes[n];
        const std::vector<StateId> tuple = node_tuple[n];

        std::uint32_t support = 0;
        for (std::size_t f = 0; f < k; ++f) {
            candidates[f].clear();
            for (int ti : by_src[f][tuple[f]]) {
                const Transition& t = factors[f]->transitions[ti];
                bool enabled = true;
                for (const auto& atom : t.guard.atoms)
                    if (!atom_holds(cfg.clocks[atom.clock + explorer.clock_offset[f]], atom.op,
                                    atom.bound)) {
                        enabled = false;
                        break;
                    }
                if (!enabled) continue;
                candidates[f].push_back(ti);
                support |= t.when.support();
            }
        }

        std::vector<int> props;
        for (int p = 0; p < 32; ++p)
            if ((support >> p) & 1) props.push_back(p);
        const int sup_size = static_cast<int>(props.size());

        std::set<std::vector<int>> seen_combos;
        for (std::uint32_t m = 0; m < (std::uint32_t{1} << sup_size); ++m) {
            Letter letter = 0;
            for (int j = 0; j < sup_size; ++j)
                if ((m >> j) & 1) letter |= Letter{1} << props[j];

            std::vector<int> combo(k);
            for (std::size_t f = 0; f < k; ++f) {
                int chosen = -1;
                for (int ti : candidates[f]) {
                    if (!factors[f]->transitions[ti].when.eval(letter)) continue;
                    if (chosen >= 0)
                        throw StructuralError("determinism violation in factor " +
                                              std::to_string(f));
                    chosen = ti;
                }
                if (chosen < 0)
                    throw StructuralError("completeness violation in factor " +
                                          std::to_string(f));
                combo[f] = chosen;
            }
            if (!seen_combos.insert(combo).second) continue;

            int tr = explorer.transition_of(combo, cfg.state, tuple);
            const Transition& t = g.ta.transitions[tr];
            Configuration next;
            next.state = t.tgt;
            next.clocks = cfg.clocks;
            for (ClockId c : t.resets) next.clocks[c] = 0;
            std::vector<StateId> next_tuple(k);
            for (std::size_t f = 0; f < k; ++f) {
                next_tuple[f] = factors[f]->transitions[combo[f]].tgt;
                for (std::size_t c = 0; c < factors[f]->clock_names.size(); ++c) {
                    std::size_t idx = explorer.clock_offset[f] + c;
                    next.clocks[idx] = static_cast<ClockValue>(
                        std::min<int>(next.clocks[idx] + 1, caps[f][c]));
                }
            }
            int target =
                intern(next, next_tuple, n, edge_count + static_cast<int>(out[n].size()),
                       g.depth[n] + 1);
            out[n].push_back({tr, target});
        }
        edge_count += static_cast<int>(out[n].size());
    }

    g.caps = g.ta.clock_caps();
    g.out_start.assign(g.num_nodes() + 1, 0);
    for (int n = 0; n < g.num_nodes(); ++n) g.out_start[n + 1] = g.out_start[n] + out[n].size();
    g.out_edges.reserve(edge_count);
    for (auto& edges : out)
        for (auto& e : edges) g.out_edges.push_back(e);

    g.in_start.assign(g.num_nodes() + 1, 0);
    for (const auto& e : g.out_edges) ++g.in_start[e.target + 1];
    for (int n = 0; n < g.num_nodes(); ++n) g.in_start[n + 1] += g.in_start[n];
    g.in_preds.resize(g.out_edges.size());
    std::vector<int> fill = g.in_start;
    for (int n = 0; n < g.num_nodes(); ++n)
        for (int e = g.out_start[n]; e < g.out_start[n + 1]; ++e)
            g.in_preds[fill[g.out_edges[e].target]++] = n;

    g.ta.finalize();
    return g;
}

}  // namespace rtcheck
