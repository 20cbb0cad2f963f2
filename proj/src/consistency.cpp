#include "rtcheck/consistency.hpp"

#include <algorithm>
#include <set>

namespace rtcheck {

namespace {

std::vector<int> sorted_unique(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

WitnessTrace witness_from_prefix(const SemanticGraph& g, int node, std::string kind) {
    std::vector<int> path;
    for (int n = node; n >= 0; n = g.parent_node[n]) path.push_back(n);
    std::reverse(path.begin(), path.end());
    WitnessTrace w;
    w.target_kind = std::move(kind);
    for (int n : path) {
        w.configs.push_back(g.nodes[n]);
        if (g.parent_edge[n] >= 0)
            w.trace.push_back(edge_letter(g, g.out_edges[g.parent_edge[n]]));
    }
    return w;
}

}  // namespace

NodeSet SubsetGraph::error_of(std::span<const int> subset) const {
    NodeSet r(graph.num_nodes());
    for (int req : subset) r |= member_error[position_of(req)];
    return r;
}

NodeSet SubsetGraph::error_all() const {
    NodeSet r(graph.num_nodes());
    for (const auto& e : member_error) r |= e;
    return r;
}

int SubsetGraph::position_of(int requirement) const {
    auto it = std::lower_bound(members.begin(), members.end(), requirement);
    if (it == members.end() || *it != requirement)
        throw StructuralError("requirement is not a member of this subset graph");
    return static_cast<int>(it - members.begin());
}

Checker::Checker(const RequirementSet& rs, CheckOptions options)
    : rs_(rs), options_(options), started_(std::chrono::steady_clock::now()) {}

bool Checker::deadline_passed() const {
    if (!options_.timeout) return false;
    return std::chrono::steady_clock::now() - started_ >= *options_.timeout;
}

std::shared_ptr<const SubsetGraph> Checker::subset_graph(std::vector<int> members) {
    members = sorted_unique(std::move(members));
    if (auto it = solo_cache_.find(members); it != solo_cache_.end()) return it->second;
    if (auto it = multi_cache_.find(members); it != multi_cache_.end()) return it->second;

    for (int m : members)
        if (m < 0 || m >= rs_.size()) throw StructuralError("requirement index out of range");
    if (members.empty()) throw StructuralError("subset graph needs at least one requirement");

    auto sg = std::make_shared<SubsetGraph>();
    sg->members = members;
    std::vector<const TimedAutomaton*> factors;
    for (int m : members) factors.push_back(&rs_.requirements[m].automaton);
    try {
        sg->graph = build_product_graph(factors, options_.max_graph_nodes);
    } catch (ResourceLimitError& e) {
        std::string names;
        for (int m : members) names += (names.empty() ? "" : ", ") + rs_.requirements[m].name;
        throw ResourceLimitError(std::string(e.what()) + " (subset " + names + ")", e.count);
    }
    for (std::size_t p = 0; p < members.size(); ++p)
        sg->member_error.push_back(error_set(sg->graph, static_cast<int>(p)));

    ++stats_.graphs_built;
    stats_.total_graph_nodes += sg->graph.num_nodes();
    if (members.size() == 1) {
        solo_cache_.emplace(std::move(members), sg);
        return sg;
    }
    constexpr std::size_t kMultiCacheCapacity = 4;
    if (multi_order_.size() >= kMultiCacheCapacity) {
        multi_cache_.erase(multi_order_.front());
        multi_order_.erase(multi_order_.begin());
    }
    multi_order_.push_back(members);
    multi_cache_.emplace(std::move(members), sg);
    return sg;
}

int Checker::run_end_node(const SubsetGraph& sg, const Trace& trace) const {
    const SemanticGraph& g = sg.graph;
    if (g.initial.size() != 1)
        throw StructuralError("trace relations require a single initial configuration");
    int node = g.initial[0];
    for (Letter letter : trace) node = g.step(node, letter);
    return node;
}

bool Checker::run_visits(const SubsetGraph& sg, const Trace& trace, const NodeSet& set) const {
    const SemanticGraph& g = sg.graph;
    if (g.initial.size() != 1)
        throw StructuralError("trace relations require a single initial configuration");
    int node = g.initial[0];
    if (set.test(node)) return true;
    for (Letter letter : trace) {
        node = g.step(node, letter);
        if (set.test(node)) return true;
    }
    return false;
}

bool Checker::fails(const Trace& trace, std::span<const int> subset) {
    // The product error set is the union of factor error sets, and a factor's
    // run is independent of its co-factors, so per-factor solo runs decide
    // the product relation without materializing the product.
    for (int r : subset) {
        auto solo_ptr = subset_graph({r});
        const SubsetGraph& solo = *solo_ptr;
        if (run_visits(solo, trace, solo.member_error[0])) return true;
    }
    return false;
}

bool Checker::ifails(const Trace& trace, std::span<const int> subset) {
    if (subset.empty()) return false;  // the empty union of errors
    auto sg_ptr = subset_graph({subset.begin(), subset.end()});
    const SubsetGraph& sg = *sg_ptr;
    NodeSet target = af(sg.graph, sg.error_all());
    return target.test(run_end_node(sg, trace));
}

bool Checker::succ(const Trace& trace, std::span<const int> subset) {
    if (subset.empty()) return true;  // the empty intersection is every node
    auto sg_ptr = subset_graph({subset.begin(), subset.end()});
    const SubsetGraph& sg = *sg_ptr;
    std::vector<int> positions(sg.members.size());
    for (std::size_t p = 0; p < positions.size(); ++p) positions[p] = static_cast<int>(p);
    NodeSet success = success_product(sg.graph, positions);
    return run_visits(sg, trace, success);
}

bool Checker::isucc(const Trace& trace, std::span<const int> subset) {
    if (subset.empty()) return true;
    auto sg_ptr = subset_graph({subset.begin(), subset.end()});
    const SubsetGraph& sg = *sg_ptr;
    std::vector<int> positions(sg.members.size());
    for (std::size_t p = 0; p < positions.size(); ++p) positions[p] = static_cast<int>(p);
    NodeSet target = af(sg.graph, success_product(sg.graph, positions));
    return target.test(run_end_node(sg, trace));
}

bool Checker::confirm_witness(const Trace& trace) {
    for (int r = 0; r < rs_.size(); ++r)
        if (fails(trace, std::vector<int>{r})) return false;
    return true;
}

Verdict Checker::finish(Verdict v) {
    v.stats = stats_;
    v.stats.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - started_)
                             .count();
    return v;
}

Verdict Checker::witness_verdict(Method method, WitnessTrace witness,
                                 const std::vector<int>& subset) {
    Verdict v;
    v.kind = VerdictKind::InconsistencyWitness;
    v.method = method;
    v.confirmed_against_full_set = confirm_witness(witness.trace);
    if (!v.confirmed_against_full_set)
        throw StructuralError("internal error: witness fails the full requirement set");
    v.witness = std::move(witness);
    for (int m : subset) v.involved.push_back(rs_.requirements[m].name);
    return v;
}

Verdict Checker::check_rt(int n, std::optional<int> depth) {
    started_ = std::chrono::steady_clock::now();
    stats_ = {};
    Verdict v;
    v.method = Method::Rt;
    v.n = n;
    v.depth = depth;
    if (n < 2) throw StructuralError("check_rt requires n >= 2");

    const int count = rs_.size();
    std::set<std::vector<int>> seen;
    for (int i = 0; i < count && !stats_.timed_out; ++i) {
        for (int j = i + 1; j < count && !stats_.timed_out; ++j) {
            std::vector<int> cur = {i, j};
            while (true) {
                if (static_cast<int>(cur.size()) > n) break;
                if (!seen.insert(cur).second) break;
                if (deadline_passed()) {
                    stats_.timed_out = true;
                    break;
                }
                auto sg_ptr = subset_graph(cur);
                const SubsetGraph& sg = *sg_ptr;
                NodeSet err = sg.error_all();
                NodeSet safe = err.complement();
                NodeSet target = safe & ax(sg.graph, err);
                ++stats_.model_checks;
                auto w = eu_witness(sg.graph, safe, target, depth, "rt-conflict");
                if (!w) break;

                int fresh = -1;
                for (int q = 0; q < count && fresh < 0; ++q) {
                    if (std::binary_search(cur.begin(), cur.end(), q)) continue;
                    if (fails(w->trace, std::vector<int>{q})) fresh = q;
                }
                if (fresh < 0) {
                    Verdict out = witness_verdict(Method::Rt, std::move(*w), cur);
                    out.n = n;
                    out.depth = depth;
                    return finish(std::move(out));
                }
                cur.push_back(fresh);
                std::sort(cur.begin(), cur.end());
            }
        }
    }
    v.kind = (!stats_.timed_out && n >= count) ? VerdictKind::Consistent
                                               : VerdictKind::NoneFoundWithinBounds;
    return finish(std::move(v));
}

Eq2Outcome Checker::check_eq2(int i, int j, std::vector<int> rprime, int alpha, int beta) {
    if (alpha <= 0 || beta <= 0) throw StructuralError("check_eq2 requires alpha, beta > 0");
    std::vector<int> members = rprime;
    members.push_back(i);
    members.push_back(j);
    auto sg_ptr = subset_graph(std::move(members));
    const SubsetGraph& sg = *sg_ptr;
    const SemanticGraph& g = sg.graph;

    NodeSet err_i = sg.member_error[sg.position_of(i)];
    NodeSet err_j = sg.member_error[sg.position_of(j)];
    NodeSet err_ctx = sg.error_of(rprime);

    // Action configurations: both errors one step away, nothing under
    // consideration failed yet. Error sets are traps and satisfy EX of
    // themselves, so without the liveness restriction a configuration that
    // already failed one requirement could carry a premise.
    NodeSet action = ex(g, err_i) & ex(g, err_j);
    action.subtract(err_ctx | err_i | err_j);
    ++stats_.model_checks;

    auto avoid_i = af_bounded_iterates(g, err_ctx | err_i, alpha);
    auto avoid_j = af_bounded_iterates(g, err_ctx | err_j, alpha);
    auto avoid_all = af_bounded_iterates(g, err_ctx | err_i | err_j, alpha + beta);

    NodeSet reach(g.num_nodes());
    std::vector<std::vector<int>> by_depth;
    for (int node = 0; node < g.num_nodes(); ++node) {
        if (g.depth[node] >= static_cast<int>(by_depth.size()))
            by_depth.resize(g.depth[node] + 1);
        by_depth[g.depth[node]].push_back(node);
    }

    for (int k = 0; k <= alpha; ++k) {
        if (k < static_cast<int>(by_depth.size()))
            for (int node : by_depth[k]) reach.set(node);

        NodeSet premise1 = action & reach;
        premise1.subtract(avoid_i[alpha - k]);
        if (premise1.none()) continue;
        NodeSet premise2 = action & reach;
        premise2.subtract(avoid_j[alpha - k]);
        if (premise2.none()) continue;
        NodeSet conclusion = action & reach;
        conclusion.subtract(avoid_all[alpha + beta - k]);
        if (conclusion.any()) continue;

        Eq2Outcome out;
        out.holds = false;
        out.k = k;
        out.w1 = witness_from_prefix(g, static_cast<int>(premise1.first()), "eq2-premise-1");
        out.w2 = witness_from_prefix(g, static_cast<int>(premise2.first()), "eq2-premise-2");
        return out;
    }
    return {};
}

Verdict Checker::check_partial(int alpha, int beta) {
    started_ = std::chrono::steady_clock::now();
    stats_ = {};
    Verdict v;
    v.method = Method::Partial;
    v.alpha = alpha;
    v.beta = beta;
    if (alpha <= 0 || beta <= 0) throw StructuralError("check_partial requires alpha, beta > 0");

    const int count = rs_.size();
    std::vector<int> all(count);
    for (int q = 0; q < count; ++q) all[q] = q;

    for (int i = 0; i < count && !stats_.timed_out; ++i) {
        for (int j = i + 1; j < count && !stats_.timed_out; ++j) {
            std::vector<int> rprime;
            while (true) {
                if (deadline_passed()) {
                    stats_.timed_out = true;
                    break;
                }
                Eq2Outcome out = check_eq2(i, j, rprime, alpha, beta);
                if (out.holds) break;

                for (auto* w : {&out.w1, &out.w2}) {
                    if (!fails((*w)->trace, all)) {
                        Verdict res = witness_verdict(Method::Partial, std::move(**w),
                                                      sorted_unique([&] {
                                                          auto s = rprime;
                                                          s.push_back(i);
                                                          s.push_back(j);
                                                          return s;
                                                      }()));
                        res.alpha = alpha;
                        res.beta = beta;
                        return finish(std::move(res));
                    }
                }

                std::vector<int> subset = sorted_unique([&] {
                    auto s = rprime;
                    s.push_back(i);
                    s.push_back(j);
                    return s;
                }());
                if (static_cast<int>(subset.size()) == count) break;

                // Both premise traces fail the full set here; grow the context
                // by the lowest-index requirement failed by the first trace,
                // falling back to the second.
                int fresh = -1;
                for (auto* w : {&out.w1, &out.w2}) {
                    for (int q = 0; q < count && fresh < 0; ++q) {
                        if (std::find(rprime.begin(), rprime.end(), q) != rprime.end()) continue;
                        if (q == i && w == &out.w1) continue;
                        if (q == j && w == &out.w2) continue;
                        if (fails((*w)->trace, std::vector<int>{q})) fresh = q;
                    }
                    if (fresh >= 0) break;
                }
                if (fresh < 0) break;
                rprime.push_back(fresh);
                std::sort(rprime.begin(), rprime.end());
            }
        }
    }
    v.kind = VerdictKind::NoneFoundWithinBounds;
    return finish(std::move(v));
}

Verdict Checker::check_partial_rt(int alpha, int n) {
    started_ = std::chrono::steady_clock::now();
    stats_ = {};
    Verdict v;
    v.method = Method::PartialRt;
    v.alpha = alpha;
    v.n = n;
    if (alpha <= 0) throw StructuralError("check_partial_rt requires alpha > 0");
    if (n < 1) throw StructuralError("check_partial_rt requires n >= 1");

    const int count = rs_.size();
    std::vector<int> all(count);
    for (int q = 0; q < count; ++q) all[q] = q;

    // Subsets by ascending size, then lexicographic on indices.
    for (int size = 1; size <= std::min(n, count) && !stats_.timed_out; ++size) {
        std::vector<int> s(size);
        for (int q = 0; q < size; ++q) s[q] = q;
        while (true) {
            std::vector<int> rprime;
            while (true) {
                if (deadline_passed()) {
                    stats_.timed_out = true;
                    break;
                }
                std::vector<int> subset = sorted_unique([&] {
                    auto m = s;
                    m.insert(m.end(), rprime.begin(), rprime.end());
                    return m;
                }());
                auto sg_ptr = subset_graph(subset);
                const SubsetGraph& sg = *sg_ptr;
                NodeSet err_sub = sg.error_all();
                NodeSet err_s = sg.error_of(s);
                NodeSet safe = err_sub.complement();
                NodeSet target = safe & ax(sg.graph, err_s);
                ++stats_.model_checks;
                auto w = eu_witness(sg.graph, safe, target, alpha, "partial-rt-conflict");
                if (!w) break;

                if (!fails(w->trace, all)) {
                    Verdict res = witness_verdict(Method::PartialRt, std::move(*w), subset);
                    res.alpha = alpha;
                    res.n = n;
                    return finish(std::move(res));
                }
                if (static_cast<int>(subset.size()) == count) break;

                int fresh = -1;
                for (int q = 0; q < count && fresh < 0; ++q) {
                    if (std::binary_search(subset.begin(), subset.end(), q)) continue;
                    if (fails(w->trace, std::vector<int>{q})) fresh = q;
                }
                if (fresh < 0) break;
                rprime.push_back(fresh);
            }
            if (stats_.timed_out) break;

            // Next combination of `size` indices out of `count`.
            int pos = size - 1;
            while (pos >= 0 && s[pos] == count - size + pos) --pos;
            if (pos < 0) break;
            ++s[pos];
            for (int q = pos + 1; q < size; ++q) s[q] = s[q - 1] + 1;
        }
    }
    v.kind = VerdictKind::NoneFoundWithinBounds;
    return finish(std::move(v));
}

bool fails(const Trace& trace, const RequirementSet& rs, std::span<const int> subset) {
    Checker c(rs);
    return c.fails(trace, subset);
}
bool ifails(const Trace& trace, const RequirementSet& rs, std::span<const int> subset) {
    Checker c(rs);
    return c.ifails(trace, subset);
}
bool succ(const Trace& trace, const RequirementSet& rs, std::span<const int> subset) {
    Checker c(rs);
    return c.succ(trace, subset);
}
bool isucc(const Trace& trace, const RequirementSet& rs, std::span<const int> subset) {
    Checker c(rs);
    return c.isucc(trace, subset);
}

}  // namespace rtcheck
