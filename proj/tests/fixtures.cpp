#include "fixtures.hpp"

#include "rtcheck/sup.hpp"

namespace fixtures {

namespace {

BoolExpr v(int p) { return BoolExpr::var(p); }

}  // namespace

TimedAutomaton fig2_r1() {
    TimedAutomaton ta;
    ta.state_names = {"I1", "D1", "E1"};
    ta.initial = {0};
    ta.prop_names = example_props();
    ta.clock_names = {"c"};
    ta.accepting = {true, true, false};
    const int I1 = 0, D1 = 1, E1 = 2;
    ta.transitions = {
        {I1, !v(kRequest), {}, {}, I1},
        {I1, v(kRequest), {}, {0}, D1},
        {D1, BoolExpr::constant(true), {{{0, CmpOp::Lt, 3}}}, {}, D1},
        {D1, !v(kResponse), {{{0, CmpOp::Ge, 3}, {0, CmpOp::Lt, 4}}}, {}, D1},
        {D1, v(kResponse), {{{0, CmpOp::Ge, 3}, {0, CmpOp::Le, 4}}}, {0}, I1},
        {D1, !v(kResponse), {{{0, CmpOp::Ge, 4}}}, {}, E1},
        {E1, BoolExpr::constant(true), {}, {}, E1},
    };
    ta.finalize();
    return ta;
}

TimedAutomaton fig2_r2() {
    TimedAutomaton ta;
    ta.state_names = {"I2", "D2", "A2", "E2"};
    ta.initial = {0};
    ta.prop_names = example_props();
    ta.clock_names = {"c"};
    ta.accepting = {true, true, true, false};
    const int I2 = 0, D2 = 1, A2 = 2, E2 = 3;
    ta.transitions = {
        {I2, !v(kRepair), {}, {}, I2},
        {I2, v(kRepair), {}, {0}, D2},
        {D2, BoolExpr::constant(true), {{{0, CmpOp::Lt, 5}}}, {}, D2},
        {D2, !v(kResponse), {{{0, CmpOp::Eq, 5}}}, {0}, A2},
        {D2, v(kResponse), {{{0, CmpOp::Eq, 5}}}, {}, E2},
        {A2, !v(kResponse), {{{0, CmpOp::Lt, 3}}}, {}, A2},
        {A2, v(kResponse), {}, {}, E2},
        {A2, !v(kResponse) && !v(kRepair), {{{0, CmpOp::Eq, 3}}}, {0}, I2},
        {A2, !v(kResponse) && v(kRepair), {{{0, CmpOp::Eq, 3}}}, {0}, D2},
        {E2, BoolExpr::constant(true), {}, {}, E2},
    };
    ta.finalize();
    return ta;
}

SupRequirement sup_r1() {
    SupRequirement r;
    r.tse = r.tc = r.tee = v(kRequest);
    r.ase = r.ac = r.aee = v(kResponse);
    r.lmin = 3;
    r.lmax = 4;
    return r;
}

SupRequirement sup_r2() {
    SupRequirement r;
    r.tse = r.tc = r.tee = v(kRepair);
    r.ase = r.ac = r.aee = !v(kResponse);
    r.lmin = r.lmax = 5;
    r.amin = r.amax = 3;
    return r;
}

SupRequirement sup_r3() {
    SupRequirement r;
    r.tse = r.tc = r.tee = v(kRepair);
    r.ase = r.ac = r.aee = !v(kRequest);
    r.amin = r.amax = 5;
    return r;
}

RequirementSet make_set(const std::vector<std::string>& props,
                        std::vector<std::pair<std::string, TimedAutomaton>> automata) {
    RequirementSet rs;
    rs.props = props;
    for (auto& [name, ta] : automata) {
        Requirement req;
        req.name = name;
        req.automaton = std::move(ta);
        for (auto& c : req.automaton.clock_names) c = name + "." + c;
        rs.requirements.push_back(std::move(req));
    }
    return rs;
}

RequirementSet make_sup_set(const std::vector<std::string>& props,
                            std::vector<std::pair<std::string, SupRequirement>> sups) {
    RequirementSet rs;
    rs.props = props;
    for (auto& [name, sup] : sups) {
        Requirement req;
        req.name = name;
        req.sup = sup;
        req.automaton = compile_sup(sup, props);
        for (auto& c : req.automaton.clock_names) c = name + "." + c;
        rs.requirements.push_back(std::move(req));
    }
    return rs;
}

RequirementSet example_set_12() {
    return make_sup_set(example_props(), {{"R1", sup_r1()}, {"R2", sup_r2()}});
}

RequirementSet example_set_123() {
    return make_sup_set(example_props(),
                        {{"R1", sup_r1()}, {"R2", sup_r2()}, {"R3", sup_r3()}});
}

RequirementSet example_set_12_fig() {
    return make_set(example_props(),
                    {{"R1", complete(fig2_r1(), CompletionPolicy::ToTrap)},
                     {"R2", complete(fig2_r2(), CompletionPolicy::ToTrap)}});
}

namespace {

BoolExpr random_expr(std::mt19937& rng, int num_props, int depth) {
    std::uniform_int_distribution<int> pick(0, depth > 0 ? 99 : 59);
    std::uniform_int_distribution<int> prop(0, num_props - 1);
    int roll = pick(rng);
    if (roll < 40) return BoolExpr::var(prop(rng));
    if (roll < 55) return !BoolExpr::var(prop(rng));
    if (roll < 58) return BoolExpr::constant(true);
    if (roll < 60) return BoolExpr::constant(false);
    BoolExpr a = random_expr(rng, num_props, depth - 1);
    BoolExpr b = random_expr(rng, num_props, depth - 1);
    return roll < 80 ? std::move(a) && std::move(b) : std::move(a) || std::move(b);
}

std::pair<int, int> random_window(std::mt19937& rng, int max_const) {
    std::uniform_int_distribution<int> d(0, max_const);
    int a = d(rng), b = d(rng);
    return {std::min(a, b), std::max(a, b)};
}

}  // namespace

SupRequirement random_sup(std::mt19937& rng, int num_props, int max_const, bool timed) {
    SupRequirement r;
    r.tse = random_expr(rng, num_props, 2);
    r.tc = random_expr(rng, num_props, 2);
    r.tee = random_expr(rng, num_props, 2);
    r.ase = random_expr(rng, num_props, 2);
    r.ac = random_expr(rng, num_props, 2);
    r.aee = random_expr(rng, num_props, 2);
    if (timed) {
        std::tie(r.tmin, r.tmax) = random_window(rng, max_const);
        std::tie(r.lmin, r.lmax) = random_window(rng, max_const);
        std::tie(r.amin, r.amax) = random_window(rng, max_const);
    }
    return r;
}

RequirementSet random_sup_set(std::mt19937& rng, int count, int num_props, int max_const) {
    std::vector<std::string> props;
    for (int p = 0; p < num_props; ++p) props.push_back("p" + std::to_string(p));
    std::vector<std::pair<std::string, SupRequirement>> sups;
    for (int i = 0; i < count; ++i)
        sups.emplace_back("R" + std::to_string(i + 1), random_sup(rng, num_props, max_const, true));
    return make_sup_set(props, std::move(sups));
}

TimedAutomaton random_cdta(std::mt19937& rng, const std::vector<std::string>& props,
                           int num_states, int split_const) {
    TimedAutomaton ta;
    for (int s = 0; s < num_states; ++s) ta.state_names.push_back("s" + std::to_string(s));
    ta.initial = {0};
    ta.prop_names = props;
    ta.clock_names = {"c"};
    std::uniform_int_distribution<int> target(0, num_states - 1);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int s = 0; s < num_states; ++s) ta.accepting.push_back(coin(rng) == 1);
    // One transition per (literal of proposition 0, region) cell keeps the
    // automaton deterministic and complete by construction.
    for (int s = 0; s < num_states; ++s) {
        for (int lit = 0; lit < 2; ++lit) {
            BoolExpr when = lit ? BoolExpr::var(0) : !BoolExpr::var(0);
            for (int region = 0; region < 2; ++region) {
                ClockConstraint g;
                g.atoms.push_back({0, region ? CmpOp::Ge : CmpOp::Lt, split_const});
                std::vector<ClockId> resets;
                if (coin(rng)) resets.push_back(0);
                ta.transitions.push_back({s, when, g, resets, target(rng)});
            }
        }
    }
    ta.finalize();
    return ta;
}

}  // namespace fixtures
