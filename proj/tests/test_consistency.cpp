#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "naive.hpp"
#include "rtcheck/consistency.hpp"

using namespace rtcheck;

namespace {

Letter L(bool req = false, bool resp = false, bool rep = false) {
    return fixtures::letter(req, resp, rep);
}

const Trace& example_trace() {
    static Trace t{L(false, false, true), L(), L(), L(true)};  // repair . {} . {} . request
    return t;
}

std::vector<int> indices(const RequirementSet& rs) {
    std::vector<int> all(rs.size());
    for (int i = 0; i < rs.size(); ++i) all[i] = i;
    return all;
}

}  // namespace

TEST_CASE("fails on the running example") {
    RequirementSet rs12 = fixtures::example_set_12();
    Checker checker(rs12);
    CHECK_FALSE(checker.fails(example_trace(), indices(rs12)));
    CHECK_FALSE(checker.fails({}, indices(rs12)));

    RequirementSet rs123 = fixtures::example_set_123();
    Checker full(rs123);
    CHECK(full.fails(example_trace(), std::vector<int>{2}));  // request during lockout
    CHECK(full.fails(example_trace(), indices(rs123)));
}

TEST_CASE("per-factor fails agrees with the product-based definition") {
    RequirementSet rs = fixtures::example_set_123();
    Checker checker(rs);
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> len_d(0, 9);
    std::uniform_int_distribution<Letter> letter_d(0, 7);
    std::vector<std::vector<int>> subsets{{0}, {1}, {2}, {0, 1}, {1, 2}, {0, 1, 2}};
    for (int round = 0; round < 150; ++round) {
        Trace trace(len_d(rng));
        for (auto& l : trace) l = letter_d(rng);
        for (const auto& subset : subsets) {
            // Product route: run on the subset product, test the error union.
            auto sg_ptr = checker.subset_graph(subset);
            const SubsetGraph& sg = *sg_ptr;
            NodeSet err = sg.error_all();
            bool product_fails = false;
            int node = sg.graph.initial[0];
            product_fails = err.test(node);
            for (Letter l : trace) {
                node = sg.graph.step(node, l);
                product_fails = product_fails || err.test(node);
            }
            CHECK(checker.fails(trace, subset) == product_fails);
        }
    }
}

TEST_CASE("ifails on the running example") {
    RequirementSet rs = fixtures::example_set_12();
    Checker checker(rs);
    CHECK(checker.ifails(example_trace(), indices(rs)));
    CHECK_FALSE(checker.fails(example_trace(), indices(rs)));

    // fails implies ifails.
    Trace failing{L(false, false, true), L(true)};  // request during R3's lockout
    RequirementSet rs3 = fixtures::example_set_123();
    Checker full(rs3);
    CHECK(full.fails(failing, std::vector<int>{2}));
    CHECK(full.ifails(failing, std::vector<int>{2}));

    // request alone can still be answered in time.
    CHECK_FALSE(checker.ifails({L(true)}, std::vector<int>{0}));
}

TEST_CASE("succ and isucc") {
    RequirementSet rs = fixtures::example_set_12();
    Checker checker(rs);
    CHECK(checker.succ({}, std::vector<int>{}));  // empty conjunction

    // succ implies isucc on a co-safety automaton built by hand.
    TimedAutomaton cosafe;
    cosafe.state_names = {"u0", "u1"};
    cosafe.initial = {0};
    cosafe.prop_names = {"p"};
    cosafe.accepting = {false, true};
    cosafe.transitions = {{0, BoolExpr::var(0), {}, {}, 1},
                          {0, !BoolExpr::var(0), {}, {}, 0},
                          {1, BoolExpr::constant(true), {}, {}, 1}};
    cosafe.finalize();
    RequirementSet one = fixtures::make_set({"p"}, {{"C", cosafe}});
    Checker co(one);
    // In a co-safety automaton success is exactly the accepting region, so the
    // relation holds iff the run reaches an accepting state.
    CHECK(co.succ({1}, std::vector<int>{0}));
    CHECK(co.isucc({1}, std::vector<int>{0}));
    CHECK_FALSE(co.succ({0}, std::vector<int>{0}));
    std::mt19937 rng(9);
    for (int round = 0; round < 50; ++round) {
        Trace trace(round % 6);
        for (auto& l : trace) l = rng() & 1;
        bool reached_accepting = false;
        for (const auto& cfg : run_trace(cosafe, trace))
            reached_accepting = reached_accepting || cosafe.accepting[cfg.state];
        CHECK(co.succ(trace, std::vector<int>{0}) == reached_accepting);
        if (co.succ(trace, std::vector<int>{0})) CHECK(co.isucc(trace, std::vector<int>{0}));
    }
}

TEST_CASE("algorithm 1 finds the example inconsistency") {
    RequirementSet rs = fixtures::example_set_12();
    Checker checker(rs);
    Verdict v = checker.check_rt(2);
    REQUIRE(v.kind == VerdictKind::InconsistencyWitness);
    CHECK(v.confirmed_against_full_set);
    REQUIRE(v.witness.has_value());
    CHECK(v.involved == std::vector<std::string>{"R1", "R2"});

    // Returned witnesses satisfy the soundness pair on the full set.
    CHECK_FALSE(checker.fails(v.witness->trace, indices(rs)));
    CHECK(checker.ifails(v.witness->trace, indices(rs)));

    // Same verdict from the hand-encoded automata.
    RequirementSet fig = fixtures::example_set_12_fig();
    Checker fig_checker(fig);
    Verdict fv = fig_checker.check_rt(2);
    CHECK(fv.kind == VerdictKind::InconsistencyWitness);
    CHECK_FALSE(fig_checker.fails(fv.witness->trace, indices(fig)));
    CHECK(fig_checker.ifails(fv.witness->trace, indices(fig)));
}

TEST_CASE("algorithm 1 proves the repaired example consistent") {
    RequirementSet rs = fixtures::example_set_123();
    Checker checker(rs);
    Verdict v = checker.check_rt(3);
    CHECK(v.kind == VerdictKind::Consistent);

    // With n = 2 the triple is never model-checked, so the check is only
    // inconclusive.
    Verdict bounded = checker.check_rt(2);
    CHECK(bounded.kind == VerdictKind::NoneFoundWithinBounds);
}

TEST_CASE("individual requirements are rt-consistent") {
    for (const SupRequirement& sup :
         {fixtures::sup_r1(), fixtures::sup_r2(), fixtures::sup_r3()}) {
        RequirementSet rs = fixtures::make_sup_set(fixtures::example_props(), {{"R", sup}});
        Checker checker(rs);
        Verdict v = checker.check_rt(2);
        CHECK(v.kind == VerdictKind::Consistent);
    }
}

TEST_CASE("bounded pairwise check on the running example") {
    RequirementSet rs = fixtures::example_set_123();
    Checker checker(rs);

    Eq2Outcome no_context = checker.check_eq2(0, 1, {}, 10, 5);
    REQUIRE_FALSE(no_context.holds);
    CHECK(no_context.k >= 0);
    REQUIRE(no_context.w1.has_value());
    REQUIRE(no_context.w2.has_value());
    // Premise traces reach the conflict without failing the pair.
    CHECK_FALSE(checker.fails(no_context.w1->trace, std::vector<int>{0, 1}));

    Eq2Outcome with_r3 = checker.check_eq2(0, 1, {2}, 10, 5);
    CHECK(with_r3.holds);
}

TEST_CASE("vacuously consistent pair") {
    // Requirements that can never fail have empty error sets, so no action
    // configuration exists and the premise is false for every depth.
    SupRequirement a;
    a.tse = a.tc = a.tee = BoolExpr::var(0);
    a.ase = a.ac = a.aee = BoolExpr::constant(true);
    SupRequirement b;
    b.tse = b.tc = b.tee = BoolExpr::var(1);
    b.ase = b.ac = b.aee = BoolExpr::constant(true);
    RequirementSet rs = fixtures::make_sup_set({"p0", "p1"}, {{"A", a}, {"B", b}});
    Checker checker(rs);
    Eq2Outcome out = checker.check_eq2(0, 1, {}, 8, 4);
    CHECK(out.holds);
}

TEST_CASE("algorithm 2 on the running example") {
    RequirementSet rs = fixtures::example_set_12();
    Checker checker(rs);
    Verdict v = checker.check_partial(10, 5);
    REQUIRE(v.kind == VerdictKind::InconsistencyWitness);
    CHECK(v.confirmed_against_full_set);
    CHECK_FALSE(checker.fails(v.witness->trace, indices(rs)));
    CHECK(checker.ifails(v.witness->trace, indices(rs)));

    // The repaired set: the pair grows its context to R3, the equation then
    // holds, and the remaining pairs find nothing.
    RequirementSet rs3 = fixtures::example_set_123();
    Checker full(rs3);
    Verdict repaired = full.check_partial(10, 5);
    CHECK(repaired.kind == VerdictKind::NoneFoundWithinBounds);

    // A single requirement has no pairs at all.
    RequirementSet one = fixtures::make_sup_set(fixtures::example_props(),
                                                {{"R1", fixtures::sup_r1()}});
    Checker solo(one);
    CHECK(solo.check_partial(10, 5).kind == VerdictKind::NoneFoundWithinBounds);
}

TEST_CASE("algorithm 3 on the running example") {
    RequirementSet rs = fixtures::example_set_12();
    Checker checker(rs);
    Verdict v = checker.check_partial_rt(40, 2);
    REQUIRE(v.kind == VerdictKind::InconsistencyWitness);
    CHECK(v.confirmed_against_full_set);
    CHECK_FALSE(checker.fails(v.witness->trace, indices(rs)));
    CHECK(checker.ifails(v.witness->trace, indices(rs)));

    RequirementSet rs3 = fixtures::example_set_123();
    Checker full(rs3);
    CHECK(full.check_partial_rt(40, 2).kind == VerdictKind::NoneFoundWithinBounds);

    // A depth bound of one step finds nothing on the example.
    CHECK(checker.check_partial_rt(1, 2).kind == VerdictKind::NoneFoundWithinBounds);
}

TEST_CASE("witness confirmation") {
    RequirementSet rs12 = fixtures::example_set_12();
    Checker c12(rs12);
    CHECK(c12.confirm_witness(example_trace()));

    RequirementSet rs123 = fixtures::example_set_123();
    Checker c123(rs123);
    CHECK_FALSE(c123.confirm_witness(example_trace()));  // the added lockout rejects it

    CHECK(c12.confirm_witness({}));
}

TEST_CASE("soundness of returned witnesses on random sets") {
    std::mt19937 rng(41);
    int witnesses = 0;
    for (int round = 0; round < 60; ++round) {
        RequirementSet rs = fixtures::random_sup_set(rng, 2 + round % 2, 3, 4);
        Checker checker(rs);
        CAPTURE(round);
        for (int algo = 0; algo < 3; ++algo) {
            Verdict v;
            switch (algo) {
                case 0: v = checker.check_rt(rs.size()); break;
                case 1: v = checker.check_partial(8, 4); break;
                default: v = checker.check_partial_rt(12, 2); break;
            }
            if (v.kind != VerdictKind::InconsistencyWitness) continue;
            ++witnesses;
            REQUIRE(v.witness.has_value());
            REQUIRE(v.confirmed_against_full_set);
            REQUIRE_FALSE(checker.fails(v.witness->trace, indices(rs)));
            REQUIRE(checker.ifails(v.witness->trace, indices(rs)));
        }
    }
    CHECK(witnesses > 0);  // the corpus is expected to contain inconsistencies
}

TEST_CASE("unbounded pairwise counterexamples imply rt-inconsistency") {
    // When the pairwise equation fails with the full remaining context and
    // unbounded avoidance (af instead of bounded af), the subset is
    // rt-inconsistent.
    std::mt19937 rng(43);
    int checked = 0;
    std::vector<RequirementSet> sets{fixtures::example_set_12()};
    for (int round = 0; round < 60; ++round)
        sets.push_back(fixtures::random_sup_set(rng, 2, 2, 3));
    for (std::size_t round = 0; round < sets.size(); ++round) {
        const RequirementSet& rs = sets[round];
        Checker checker(rs);
        auto sg_ptr = checker.subset_graph({0, 1});
        const SubsetGraph& sg = *sg_ptr;
        const SemanticGraph& g = sg.graph;
        NodeSet err1 = sg.member_error[0];
        NodeSet err2 = sg.member_error[1];
        NodeSet action = ex(g, err1) & ex(g, err2);
        action.subtract(err1 | err2);
        NodeSet avoid1 = af(g, err1).complement();
        NodeSet avoid2 = af(g, err2).complement();
        NodeSet avoid_both = af(g, err1 | err2).complement();

        bool violated = false;
        for (int k = 0; k < g.num_nodes() && !violated; ++k) {
            NodeSet rk = reach_k(g, k);
            bool p1 = ((action & rk) & avoid1).any();
            bool p2 = ((action & rk) & avoid2).any();
            bool concl = ((action & rk) & avoid_both).any();
            violated = p1 && p2 && !concl;
        }
        if (!violated) continue;
        ++checked;
        CAPTURE(round);
        Verdict v = checker.check_rt(2);
        REQUIRE(v.kind == VerdictKind::InconsistencyWitness);
    }
    CHECK(checked > 0);  // the running example pair is partially inconsistent
}

TEST_CASE("timeout reports an inconclusive verdict") {
    CheckOptions opts;
    opts.timeout = std::chrono::milliseconds(0);
    RequirementSet rs = fixtures::example_set_12();
    Checker checker(rs, opts);
    Verdict v = checker.check_rt(2);
    CHECK(v.kind == VerdictKind::NoneFoundWithinBounds);
    CHECK(v.stats.timed_out);
}
