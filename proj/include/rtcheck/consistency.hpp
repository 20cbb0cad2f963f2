#pragma once

#include <chrono>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "rtcheck/modelcheck.hpp"
#include "rtcheck/semantics.hpp"

namespace rtcheck {

enum class VerdictKind { Consistent, InconsistencyWitness, NoneFoundWithinBounds };
enum class Method { Rt, Partial, PartialRt };

struct CheckStats {
    int graphs_built = 0;
    std::int64_t total_graph_nodes = 0;
    int model_checks = 0;
    std::int64_t elapsed_ms = 0;
    bool timed_out = false;
};

struct Verdict {
    VerdictKind kind = VerdictKind::NoneFoundWithinBounds;
    Method method = Method::Rt;
    std::optional<WitnessTrace> witness;
    std::vector<std::string> involved;  // requirement names of the subset at discovery
    std::optional<int> n, alpha, beta, depth;
    bool confirmed_against_full_set = false;
    CheckStats stats;
};

// Outcome of the bounded pairwise check: either the bounded-consistency
// equation holds, or a counterexample depth k with one premise trace per
// requirement (shortest path to the chosen premise configuration).
struct Eq2Outcome {
    bool holds = true;
    int k = -1;
    std::optional<WitnessTrace> w1, w2;
};

struct CheckOptions {
    std::int64_t max_graph_nodes = kDefaultMaxGraphNodes;
    ProductLimits product_limits;
    std::optional<std::chrono::milliseconds> timeout;
};

// Product graph of a requirement subset plus its per-member error sets;
// immutable once built, shared via the checker's cache.
struct SubsetGraph {
    std::vector<int> members;  // requirement indices, ascending
    SemanticGraph graph;
    std::vector<NodeSet> member_error;  // aligned with members

    NodeSet error_of(std::span<const int> subset) const;  // union over subset ⊆ members
    NodeSet error_all() const;
    int position_of(int requirement) const;
};

class Checker {
public:
    explicit Checker(const RequirementSet& rs, CheckOptions options = {});

    // Algorithm 1: grows candidate subsets from pairs up to size n; the full
    // unbounded until-check unless depth is given.
    Verdict check_rt(int n, std::optional<int> depth = std::nullopt);

    // Algorithm 2 over the (alpha, beta)-bounded pairwise equation.
    Verdict check_partial(int alpha, int beta);

    // Algorithm 3: subsets up to size n, bounded until with depth alpha.
    Verdict check_partial_rt(int alpha, int n);

    // Bounded pairwise consistency between requirements i and j in the context
    // of rprime (Holds, or a counterexample with premise traces).
    Eq2Outcome check_eq2(int i, int j, std::vector<int> rprime, int alpha, int beta);

    // Trace relations. `subset` holds requirement indices.
    bool fails(const Trace& trace, std::span<const int> subset);
    bool ifails(const Trace& trace, std::span<const int> subset);
    bool succ(const Trace& trace, std::span<const int> subset);
    bool isucc(const Trace& trace, std::span<const int> subset);

    // True iff the trace fails no requirement of the full set. A verdict may
    // only report InconsistencyWitness when this holds.
    bool confirm_witness(const Trace& trace);

    // Shared, immutable. Single-requirement graphs are cached for the whole
    // checker lifetime; larger products are kept in a small bounded cache
    // since the incremental loops rarely revisit a subset.
    std::shared_ptr<const SubsetGraph> subset_graph(std::vector<int> members);
    const RequirementSet& requirement_set() const { return rs_; }
    const CheckStats& stats() const { return stats_; }

private:
    Verdict finish(Verdict v);
    Verdict witness_verdict(Method method, WitnessTrace witness, const std::vector<int>& subset);
    bool deadline_passed() const;
    bool run_visits(const SubsetGraph& sg, const Trace& trace, const NodeSet& set) const;
    int run_end_node(const SubsetGraph& sg, const Trace& trace) const;

    const RequirementSet& rs_;
    CheckOptions options_;
    std::map<std::vector<int>, std::shared_ptr<const SubsetGraph>> solo_cache_;
    std::map<std::vector<int>, std::shared_ptr<const SubsetGraph>> multi_cache_;
    std::vector<std::vector<int>> multi_order_;  // FIFO eviction
    CheckStats stats_;
    std::chrono::steady_clock::time_point started_;
};

// One-shot wrappers for the trace relations.
bool fails(const Trace& trace, const RequirementSet& rs, std::span<const int> subset);
bool ifails(const Trace& trace, const RequirementSet& rs, std::span<const int> subset);
bool succ(const Trace& trace, const RequirementSet& rs, std::span<const int> subset);
bool isucc(const Trace& trace, const RequirementSet& rs, std::span<const int> subset);

}  // namespace rtcheck
