#include "rtcheck/model.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace rtcheck {

// ---------------------------------------------------------------------------
// BoolExpr
// ---------------------------------------------------------------------------

BoolExpr BoolExpr::negation(BoolExpr a) {
    BoolExpr e;
    e.kind_ = Kind::Not;
    e.kids_.push_back(std::move(a));
    return e;
}

BoolExpr BoolExpr::conjunction(BoolExpr a, BoolExpr b) {
    // Flatten constants so compiled guards stay readable.
    if (a.kind_ == Kind::True) return b;
    if (b.kind_ == Kind::True) return a;
    if (a.kind_ == Kind::False || b.kind_ == Kind::False) return constant(false);
    BoolExpr e;
    e.kind_ = Kind::And;
    e.kids_.push_back(std::move(a));
    e.kids_.push_back(std::move(b));
    return e;
}

BoolExpr BoolExpr::disjunction(BoolExpr a, BoolExpr b) {
    if (a.kind_ == Kind::False) return b;
    if (b.kind_ == Kind::False) return a;
    if (a.kind_ == Kind::True || b.kind_ == Kind::True) return constant(true);
    BoolExpr e;
    e.kind_ = Kind::Or;
    e.kids_.push_back(std::move(a));
    e.kids_.push_back(std::move(b));
    return e;
}

bool BoolExpr::eval(Letter letter) const {
    switch (kind_) {
        case Kind::True: return true;
        case Kind::False: return false;
        case Kind::Var: return (letter >> var_) & 1;
        case Kind::Not: return !kids_[0].eval(letter);
        case Kind::And: return kids_[0].eval(letter) && kids_[1].eval(letter);
        case Kind::Or: return kids_[0].eval(letter) || kids_[1].eval(letter);
    }
    return false;
}

std::uint32_t BoolExpr::support() const {
    switch (kind_) {
        case Kind::True:
        case Kind::False: return 0;
        case Kind::Var: return std::uint32_t{1} << var_;
        default: {
            std::uint32_t m = 0;
            for (const auto& k : kids_) m |= k.support();
            return m;
        }
    }
}

std::string BoolExpr::to_string(const std::vector<std::string>& prop_names) const {
    switch (kind_) {
        case Kind::True: return "true";
        case Kind::False: return "false";
        case Kind::Var:
            return var_ >= 0 && var_ < static_cast<int>(prop_names.size())
                       ? prop_names[var_]
                       : "p" + std::to_string(var_);
        case Kind::Not: {
            const BoolExpr& k = kids_[0];
            bool atom = k.kind_ == Kind::Var || k.kind_ == Kind::True || k.kind_ == Kind::False ||
                        k.kind_ == Kind::Not;
            return atom ? "!" + k.to_string(prop_names) : "!(" + k.to_string(prop_names) + ")";
        }
        case Kind::And:
        case Kind::Or: {
            auto wrap = [&](const BoolExpr& k) {
                bool paren = (kind_ == Kind::And && k.kind_ == Kind::Or) ||
                             (kind_ == Kind::Or && k.kind_ == Kind::And);
                std::string s = k.to_string(prop_names);
                return paren ? "(" + s + ")" : s;
            };
            const char* op = kind_ == Kind::And ? " & " : " | ";
            return wrap(kids_[0]) + op + wrap(kids_[1]);
        }
    }
    return "?";
}

bool eval_bool(const BoolExpr& expr, Letter letter, int num_props) {
    std::uint32_t sup = expr.support();
    if (num_props < 32 && (sup >> num_props) != 0)
        throw StructuralError("boolean constraint references an undeclared proposition");
    return expr.eval(letter);
}

namespace {

std::vector<int> support_props(const BoolExpr& e) {
    std::vector<int> props;
    std::uint32_t m = e.support();
    for (int i = 0; i < 32; ++i)
        if ((m >> i) & 1) props.push_back(i);
    return props;
}

// Enumerates assignments of the support (all other propositions false) and
// returns the first satisfying letter, in the given support-bit order where
// index 0 of `props` is the most significant position.
std::optional<Letter> first_satisfying_over(const BoolExpr& e, const std::vector<int>& props) {
    const int k = static_cast<int>(props.size());
    for (std::uint32_t m = 0; m < (std::uint32_t{1} << k); ++m) {
        Letter letter = 0;
        for (int j = 0; j < k; ++j)
            if ((m >> (k - 1 - j)) & 1) letter |= Letter{1} << props[j];
        if (e.eval(letter)) return letter;
    }
    return std::nullopt;
}

}  // namespace

bool bool_satisfiable(const BoolExpr& expr) {
    return first_satisfying_over(expr, support_props(expr)).has_value();
}

bool bool_satisfiable(const BoolExpr& a, const BoolExpr& b) {
    BoolExpr c = BoolExpr::conjunction(a, b);
    return bool_satisfiable(c);
}

bool bool_equivalent(const BoolExpr& a, const BoolExpr& b) {
    std::uint32_t m = a.support() | b.support();
    std::vector<int> props;
    for (int i = 0; i < 32; ++i)
        if ((m >> i) & 1) props.push_back(i);
    const int k = static_cast<int>(props.size());
    for (std::uint32_t bits = 0; bits < (std::uint32_t{1} << k); ++bits) {
        Letter letter = 0;
        for (int j = 0; j < k; ++j)
            if ((bits >> j) & 1) letter |= Letter{1} << props[j];
        if (a.eval(letter) != b.eval(letter)) return false;
    }
    return true;
}

std::uint64_t count_satisfying(const BoolExpr& expr, int num_props) {
    std::vector<int> props = support_props(expr);
    const int k = static_cast<int>(props.size());
    std::uint64_t sat = 0;
    for (std::uint32_t m = 0; m < (std::uint32_t{1} << k); ++m) {
        Letter letter = 0;
        for (int j = 0; j < k; ++j)
            if ((m >> j) & 1) letter |= Letter{1} << props[j];
        if (expr.eval(letter)) ++sat;
    }
    return sat << (num_props - k);
}

std::optional<Letter> smallest_satisfying(const BoolExpr& expr, int num_props) {
    std::uint32_t sup = expr.support();
    if (num_props < 32 && (sup >> num_props) != 0)
        throw StructuralError("boolean constraint references an undeclared proposition");
    return first_satisfying_over(expr, support_props(expr));
}

// ---------------------------------------------------------------------------
// Clock constraints
// ---------------------------------------------------------------------------

namespace {

const char* op_text(CmpOp op) {
    switch (op) {
        case CmpOp::Lt: return "<";
        case CmpOp::Le: return "<=";
        case CmpOp::Eq: return "==";
        case CmpOp::Ge: return ">=";
        case CmpOp::Gt: return ">";
    }
    return "?";
}

bool cmp(int value, CmpOp op, int bound) {
    switch (op) {
        case CmpOp::Lt: return value < bound;
        case CmpOp::Le: return value <= bound;
        case CmpOp::Eq: return value == bound;
        case CmpOp::Ge: return value >= bound;
        case CmpOp::Gt: return value > bound;
    }
    return false;
}

}  // namespace

std::string ClockConstraint::to_string(const std::vector<std::string>& clock_names) const {
    if (atoms.empty()) return "true";
    std::string s;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (i) s += " & ";
        const auto& a = atoms[i];
        std::string name = a.clock >= 0 && a.clock < static_cast<int>(clock_names.size())
                               ? clock_names[a.clock]
                               : "c" + std::to_string(a.clock);
        s += name + " " + op_text(a.op) + " " + std::to_string(a.bound);
    }
    return s;
}

bool eval_clock_guard(const ClockConstraint& g, const std::vector<std::uint16_t>& valuation) {
    for (const auto& a : g.atoms) {
        if (a.clock < 0 || a.clock >= static_cast<int>(valuation.size()))
            throw StructuralError("clock guard references an unknown clock");
        if (!cmp(valuation[a.clock], a.op, a.bound)) return false;
    }
    return true;
}

bool clock_guard_satisfiable(const ClockConstraint& g1, const ClockConstraint& g2) {
    // Per-clock interval [lo, hi] over nonnegative integers.
    constexpr int kInf = std::numeric_limits<int>::max();
    std::vector<std::pair<int, int>> bounds;  // indexed by clock id, grown on demand
    auto apply = [&](const ClockAtom& a) {
        if (a.clock < 0) throw StructuralError("clock guard references an unknown clock");
        if (a.clock >= static_cast<int>(bounds.size()))
            bounds.resize(a.clock + 1, {0, kInf});
        auto& [lo, hi] = bounds[a.clock];
        switch (a.op) {
            case CmpOp::Lt: hi = std::min(hi, a.bound - 1); break;
            case CmpOp::Le: hi = std::min(hi, a.bound); break;
            case CmpOp::Eq:
                lo = std::max(lo, a.bound);
                hi = std::min(hi, a.bound);
                break;
            case CmpOp::Ge: lo = std::max(lo, a.bound); break;
            case CmpOp::Gt: lo = std::max(lo, a.bound + 1); break;
        }
    };
    for (const auto& a : g1.atoms) apply(a);
    for (const auto& a : g2.atoms) apply(a);
    for (const auto& [lo, hi] : bounds)
        if (lo > hi) return false;
    return true;
}

// ---------------------------------------------------------------------------
// TimedAutomaton
// ---------------------------------------------------------------------------

std::vector<int> TimedAutomaton::clock_caps() const {
    std::vector<int> caps(clock_names.size(), 1);  // unconstrained clocks cap at 1
    for (const auto& t : transitions)
        for (const auto& a : t.guard.atoms)
            if (a.clock >= 0 && a.clock < static_cast<int>(caps.size()))
                caps[a.clock] = std::max(caps[a.clock], a.bound + 1);
    return caps;
}

std::vector<std::vector<int>> TimedAutomaton::transitions_by_src() const {
    std::vector<std::vector<int>> by_src(state_names.size());
    for (int i = 0; i < static_cast<int>(transitions.size()); ++i)
        by_src[transitions[i].src].push_back(i);
    return by_src;
}

void TimedAutomaton::finalize() {
    const int n = num_states();
    if (static_cast<int>(accepting.size()) != n)
        throw StructuralError("accepting flags do not match the state count");
    for (StateId s : initial)
        if (s < 0 || s >= n) throw StructuralError("initial state id out of range");
    for (const auto& t : transitions) {
        if (t.src < 0 || t.src >= n || t.tgt < 0 || t.tgt >= n)
            throw StructuralError("transition endpoint out of range");
        if (num_props() < 32 && (t.when.support() >> num_props()) != 0)
            throw StructuralError("transition guard references an undeclared proposition");
        for (ClockId c : t.resets)
            if (c < 0 || c >= num_clocks())
                throw StructuralError("transition resets an unknown clock");
        for (const auto& a : t.guard.atoms) {
            if (a.clock < 0 || a.clock >= num_clocks())
                throw StructuralError("transition guard references an unknown clock");
            if (a.bound < 0) throw StructuralError("clock bounds must be nonnegative");
        }
    }
    if (factor_accepting.empty()) {
        factor_accepting.resize(n);
        for (int s = 0; s < n; ++s) factor_accepting[s] = accepting[s] ? 1u : 0u;
    }
}

std::vector<Violation> validate_deterministic(const TimedAutomaton& ta) {
    std::vector<Violation> out;
    auto by_src = ta.transitions_by_src();
    for (int s = 0; s < ta.num_states(); ++s) {
        const auto& ts = by_src[s];
        for (std::size_t i = 0; i < ts.size(); ++i) {
            for (std::size_t j = i + 1; j < ts.size(); ++j) {
                const Transition& a = ta.transitions[ts[i]];
                const Transition& b = ta.transitions[ts[j]];
                if (!bool_satisfiable(a.when, b.when)) continue;
                if (!clock_guard_satisfiable(a.guard, b.guard)) continue;
                auto ra = a.resets, rb = b.resets;
                std::sort(ra.begin(), ra.end());
                std::sort(rb.begin(), rb.end());
                if (a.tgt == b.tgt && ra == rb) continue;
                out.push_back({"state " + ta.state_names[s] + ": transitions #" +
                               std::to_string(ts[i]) + " and #" + std::to_string(ts[j]) +
                               " overlap but disagree on target or resets"});
            }
        }
    }
    return out;
}

namespace {

// Runs fn over every valuation of the capped box (inclusive caps).
template <typename Fn>
void for_each_boxed_valuation(const std::vector<int>& caps, Fn&& fn) {
    std::vector<std::uint16_t> v(caps.size(), 0);
    while (true) {
        fn(v);
        std::size_t i = 0;
        for (; i < v.size(); ++i) {
            if (v[i] < caps[i]) {
                ++v[i];
                break;
            }
            v[i] = 0;
        }
        if (i == v.size()) break;
    }
}

std::vector<int> state_support(const TimedAutomaton& ta, const std::vector<int>& trans) {
    std::uint32_t m = 0;
    for (int ti : trans) m |= ta.transitions[ti].when.support();
    std::vector<int> props;
    for (int i = 0; i < 32; ++i)
        if ((m >> i) & 1) props.push_back(i);
    return props;
}

std::string letter_text(const TimedAutomaton& ta, Letter letter) {
    std::string s = "{";
    bool first = true;
    for (int p = 0; p < ta.num_props(); ++p) {
        if ((letter >> p) & 1) {
            if (!first) s += ", ";
            s += ta.prop_names[p];
            first = false;
        }
    }
    return s + "}";
}

std::string valuation_text(const TimedAutomaton& ta, const std::vector<std::uint16_t>& v) {
    std::string s;
    for (std::size_t c = 0; c < v.size(); ++c) {
        if (c) s += ", ";
        s += ta.clock_names[c] + "=" + std::to_string(v[c]);
    }
    return s;
}

}  // namespace

std::vector<Violation> validate_complete(const TimedAutomaton& ta, const std::vector<int>* caps) {
    std::vector<Violation> out;
    std::vector<int> box = caps ? *caps : ta.clock_caps();
    auto by_src = ta.transitions_by_src();
    for (int s = 0; s < ta.num_states(); ++s) {
        const auto& ts = by_src[s];
        std::vector<int> props = state_support(ta, ts);
        const int k = static_cast<int>(props.size());
        for (std::uint32_t m = 0; m < (std::uint32_t{1} << k); ++m) {
            Letter letter = 0;
            for (int j = 0; j < k; ++j)
                if ((m >> j) & 1) letter |= Letter{1} << props[j];
            for_each_boxed_valuation(box, [&](const std::vector<std::uint16_t>& v) {
                for (int ti : ts) {
                    const Transition& t = ta.transitions[ti];
                    if (t.when.eval(letter) && eval_clock_guard(t.guard, v)) return;
                }
                out.push_back({"state " + ta.state_names[s] + ": no transition for letter " +
                               letter_text(ta, letter) + " at " + valuation_text(ta, v)});
            });
        }
    }
    return out;
}

TimedAutomaton complete(const TimedAutomaton& ta, CompletionPolicy policy) {
    TimedAutomaton out = ta;
    std::vector<int> box = out.clock_caps();
    auto by_src = out.transitions_by_src();

    int trap = -1;
    auto ensure_trap = [&]() {
        if (trap >= 0) return trap;
        trap = out.num_states();
        out.state_names.push_back("trap");
        out.accepting.push_back(false);
        out.factor_accepting.push_back(0);  // non-accepting for every factor
        out.transitions.push_back({trap, BoolExpr::constant(true), {}, {}, trap});
        return trap;
    };

    auto cube_over = [&](const std::vector<int>& props, Letter letter) {
        BoolExpr e = BoolExpr::constant(true);
        for (int p : props) {
            BoolExpr lit = (letter >> p) & 1 ? BoolExpr::var(p) : !BoolExpr::var(p);
            e = std::move(e) && std::move(lit);
        }
        return e;
    };

    const int orig_states = ta.num_states();
    for (int s = 0; s < orig_states; ++s) {
        const auto& ts = by_src[s];
        std::vector<int> props = state_support(ta, ts);
        const int k = static_cast<int>(props.size());
        std::uint64_t box_size = 1;
        for (int c : box) box_size *= static_cast<std::uint64_t>(c) + 1;
        for (std::uint32_t m = 0; m < (std::uint32_t{1} << k); ++m) {
            Letter letter = 0;
            for (int j = 0; j < k; ++j)
                if ((m >> j) & 1) letter |= Letter{1} << props[j];
            std::vector<std::vector<std::uint16_t>> uncovered;
            for_each_boxed_valuation(box, [&](const std::vector<std::uint16_t>& v) {
                for (int ti : ts) {
                    const Transition& t = ta.transitions[ti];
                    if (t.when.eval(letter) && eval_clock_guard(t.guard, v)) return;
                }
                uncovered.push_back(v);
            });
            if (uncovered.empty()) continue;
            StateId tgt = policy == CompletionPolicy::ToTrap ? ensure_trap() : s;
            BoolExpr when = cube_over(props, letter);
            if (uncovered.size() == box_size) {
                out.transitions.push_back({s, when, {}, {}, tgt});
                continue;
            }
            for (const auto& v : uncovered) {
                // One exact point of the box; the cap value stands for all
                // larger values, expressed as a strict lower bound.
                ClockConstraint g;
                for (std::size_t c = 0; c < v.size(); ++c) {
                    if (v[c] == box[c] && box[c] > 0)
                        g.atoms.push_back({static_cast<ClockId>(c), CmpOp::Gt, box[c] - 1});
                    else
                        g.atoms.push_back({static_cast<ClockId>(c), CmpOp::Eq, v[c]});
                }
                out.transitions.push_back({s, when, std::move(g), {}, tgt});
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// SUP / requirement sets
// ---------------------------------------------------------------------------

void SupRequirement::validate() const {
    auto check = [](int lo, int hi, const char* what) {
        if (lo < 0 || hi < 0 || lo > hi)
            throw StructuralError(std::string("invalid ") + what + " window [" +
                                  std::to_string(lo) + ", " + std::to_string(hi) + "]");
    };
    check(tmin, tmax, "trigger");
    check(lmin, lmax, "delay");
    check(amin, amax, "action");
}

int RequirementSet::find(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
        if (requirements[i].name == name) return i;
    return -1;
}

}  // namespace rtcheck
