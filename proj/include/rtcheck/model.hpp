#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rtcheck/errors.hpp"

namespace rtcheck {

using PropId = int;
using ClockId = int;
using StateId = int;

// A letter is one total truth assignment to the atomic propositions,
// packed as a bitmask (proposition i <-> bit i).
using Letter = std::uint32_t;

// Exhaustive letter enumeration is over expression support, so the hard cap
// on |AP| only bounds the mask width.
constexpr int kMaxProps = 20;

// ---------------------------------------------------------------------------
// Boolean constraints over atomic propositions.
// ---------------------------------------------------------------------------

class BoolExpr {
public:
    enum class Kind { True, False, Var, Not, And, Or };

    BoolExpr() : kind_(Kind::True) {}

    static BoolExpr constant(bool value) {
        BoolExpr e;
        e.kind_ = value ? Kind::True : Kind::False;
        return e;
    }
    static BoolExpr var(PropId p) {
        BoolExpr e;
        e.kind_ = Kind::Var;
        e.var_ = p;
        return e;
    }
    static BoolExpr negation(BoolExpr a);
    static BoolExpr conjunction(BoolExpr a, BoolExpr b);
    static BoolExpr disjunction(BoolExpr a, BoolExpr b);

    Kind kind() const { return kind_; }
    PropId var_id() const { return var_; }
    const std::vector<BoolExpr>& children() const { return kids_; }

    bool eval(Letter letter) const;

    // Bitmask of referenced propositions.
    std::uint32_t support() const;

    std::string to_string(const std::vector<std::string>& prop_names) const;

private:
    Kind kind_;
    PropId var_ = -1;
    std::vector<BoolExpr> kids_;
};

inline BoolExpr operator!(BoolExpr a) { return BoolExpr::negation(std::move(a)); }
inline BoolExpr operator&&(BoolExpr a, BoolExpr b) {
    return BoolExpr::conjunction(std::move(a), std::move(b));
}
inline BoolExpr operator||(BoolExpr a, BoolExpr b) {
    return BoolExpr::disjunction(std::move(a), std::move(b));
}

// Standard propositional evaluation; rejects propositions outside [0, num_props).
bool eval_bool(const BoolExpr& expr, Letter letter, int num_props);

bool bool_satisfiable(const BoolExpr& expr);
bool bool_satisfiable(const BoolExpr& a, const BoolExpr& b);

// Semantic equivalence (same truth table over the union support).
bool bool_equivalent(const BoolExpr& a, const BoolExpr& b);

// Number of satisfying letters over an alphabet of num_props propositions.
std::uint64_t count_satisfying(const BoolExpr& expr, int num_props);

// Lexicographically smallest satisfying letter under the declared proposition
// order (proposition 0 weighs most, false < true), or nullopt if unsatisfiable.
std::optional<Letter> smallest_satisfying(const BoolExpr& expr, int num_props);

// ---------------------------------------------------------------------------
// Clock constraints: conjunctions of atoms `clock op bound`.
// ---------------------------------------------------------------------------

enum class CmpOp { Lt, Le, Eq, Ge, Gt };

struct ClockAtom {
    ClockId clock;
    CmpOp op;
    int bound;  // nonnegative
};

struct ClockConstraint {
    std::vector<ClockAtom> atoms;  // empty conjunction = true

    std::string to_string(const std::vector<std::string>& clock_names) const;
};

// Capped-valuation semantics: a value standing for "beyond every constant of
// this clock" is stored as M_c + 1, so plain integer comparison gives the
// right answer for every atom bound (all bounds are <= M_c by definition).
bool eval_clock_guard(const ClockConstraint& g, const std::vector<std::uint16_t>& valuation);

// Joint satisfiability over unbounded nonnegative integer valuations
// (per-clock interval intersection).
bool clock_guard_satisfiable(const ClockConstraint& g1, const ClockConstraint& g2);
inline bool clock_guard_satisfiable(const ClockConstraint& g) {
    return clock_guard_satisfiable(g, ClockConstraint{});
}

// ---------------------------------------------------------------------------
// Timed automata.
// ---------------------------------------------------------------------------

struct Transition {
    StateId src;
    BoolExpr when;
    ClockConstraint guard;
    std::vector<ClockId> resets;
    StateId tgt;
};

struct TimedAutomaton {
    std::vector<std::string> state_names;
    std::vector<StateId> initial;
    std::vector<std::string> prop_names;   // the owning set's full AP, shared by all factors
    std::vector<std::string> clock_names;
    std::vector<Transition> transitions;
    std::vector<bool> accepting;

    // Product bookkeeping. A single automaton is a 1-factor product of itself;
    // bit f of factor_accepting[s] says whether factor f's component state is
    // accepting. accepting[s] is the conjunction of all factor bits.
    int num_factors = 1;
    std::vector<std::uint32_t> factor_accepting;

    int num_states() const { return static_cast<int>(state_names.size()); }
    int num_props() const { return static_cast<int>(prop_names.size()); }
    int num_clocks() const { return static_cast<int>(clock_names.size()); }

    // Per-clock cap: largest constant compared against the clock, plus one.
    // Valuations saturate at the cap; the cap value itself means "beyond".
    std::vector<int> clock_caps() const;

    std::vector<std::vector<int>> transitions_by_src() const;

    // Checks ids/resets, fills factor_accepting for plain automata.
    void finalize();
};

struct Violation {
    std::string message;
};

// Empty iff every same-source transition pair with jointly satisfiable guards
// agrees on target and reset set.
std::vector<Violation> validate_deterministic(const TimedAutomaton& ta);

// Empty iff for every state, every letter and every valuation of the capped
// box (0..cap per clock) some transition is enabled. Stronger than
// reachable-configuration completeness, and decidable by plain enumeration.
// caps, when given, overrides the per-clock bounds derived from the guards.
std::vector<Violation> validate_complete(const TimedAutomaton& ta,
                                         const std::vector<int>* caps = nullptr);

enum class CompletionPolicy { ToTrap, ToSelf };

// Covers every uncovered (state, letter, capped valuation) combination, either
// with transitions to a fresh non-accepting trap (with a true self-loop) or
// with identity self-loops. Requires a deterministic input; the result is
// deterministic and complete, and behaves identically on previously enabled
// steps.
TimedAutomaton complete(const TimedAutomaton& ta, CompletionPolicy policy);

// ---------------------------------------------------------------------------
// SUP pattern and requirement sets.
// ---------------------------------------------------------------------------

struct SupRequirement {
    BoolExpr tse, tc, tee;  // trigger start / condition / end
    BoolExpr ase, ac, aee;  // action start / condition / end
    int tmin = 0, tmax = 0;
    int lmin = 0, lmax = 0;  // delay between trigger end and action start
    int amin = 0, amax = 0;

    void validate() const;  // window sanity: 0 <= min <= max
};

struct Requirement {
    std::string name;
    std::optional<SupRequirement> sup;  // engaged iff SUP-sourced
    TimedAutomaton automaton;           // the compiled/validated CDTA
};

struct RequirementSet {
    std::vector<std::string> props;
    std::vector<Requirement> requirements;

    int size() const { return static_cast<int>(requirements.size()); }
    int find(const std::string& name) const;
};

}  // namespace rtcheck
