#include "rtcheck/sup.hpp"

namespace rtcheck {

namespace {

// State / clock layout of the compiled skeleton.
enum Phase : StateId { kIdle = 0, kTrig = 1, kDelay = 2, kAct = 3, kErr = 4 };
enum SupClock : ClockId { kCt = 0, kCd = 1, kCa = 2 };

ClockConstraint window(ClockId c, int lo, int hi) {
    ClockConstraint g;
    if (lo > 0) g.atoms.push_back({c, CmpOp::Ge, lo});
    g.atoms.push_back({c, CmpOp::Le, hi});
    return g;
}

ClockConstraint below(ClockId c, int bound) {  // c < bound
    return {{{c, CmpOp::Lt, bound}}};
}

ClockConstraint half_open(ClockId c, int lo, int hi) {  // lo <= c < hi
    ClockConstraint g;
    if (lo > 0) g.atoms.push_back({c, CmpOp::Ge, lo});
    g.atoms.push_back({c, CmpOp::Lt, hi});
    return g;
}

ClockConstraint at(ClockId c, int value) {
    return {{{c, CmpOp::Eq, value}}};
}

ClockConstraint above(ClockId c, int bound) {  // c > bound
    return {{{c, CmpOp::Gt, bound}}};
}

}  // namespace

TimedAutomaton compile_sup(const SupRequirement& r, const std::vector<std::string>& props) {
    r.validate();

    TimedAutomaton ta;
    ta.state_names = {"Idle", "Trig", "Delay", "Act", "Err"};
    ta.initial = {kIdle};
    ta.prop_names = props;
    ta.clock_names = {"ct", "cd", "ca"};
    ta.accepting = {true, true, true, true, false};

    auto add = [&](StateId src, BoolExpr when, ClockConstraint guard, std::vector<ClockId> resets,
                   StateId tgt) {
        if (!bool_satisfiable(when)) return;  // dead template case for this instance
        ta.transitions.push_back({src, std::move(when), std::move(guard), std::move(resets), tgt});
    };

    // The trigger has been realized on the current letter (prefix `when`/`guard`):
    // hand over to the delay stage, or directly to the action when Lmin = 0.
    // Branches that could never be satisfied later go straight to Err, so the
    // violation registers on the letter that decides it.
    auto emit_realized = [&](StateId src, const BoolExpr& when, const ClockConstraint& guard) {
        if (r.lmin == 0) {
            if (r.amin == 0) {
                add(src, when && r.ase && r.aee, guard, {}, kIdle);
                if (r.amax >= 1)
                    add(src, when && r.ase && !r.aee, guard, {kCa}, kAct);
                else
                    add(src, when && r.ase && !r.aee, guard, {}, kErr);
            } else {
                add(src, when && r.ase, guard, {kCa}, kAct);
            }
            if (r.lmax >= 1)
                add(src, when && !r.ase, guard, {kCd}, kDelay);
            else
                add(src, when && !r.ase, guard, {}, kErr);
        } else {
            add(src, when, guard, {kCd}, kDelay);
        }
    };

    // Action phase starts on the current letter (ASE already part of `when`).
    auto emit_action_start = [&](StateId src, const BoolExpr& when, const ClockConstraint& guard) {
        if (r.amin == 0) {
            add(src, when && r.aee, guard, {}, kIdle);
            if (r.amax >= 1)
                add(src, when && !r.aee, guard, {kCa}, kAct);
            else
                add(src, when && !r.aee, guard, {}, kErr);
        } else {
            add(src, when, guard, {kCa}, kAct);
        }
    };

    // Idle: wait for TSE. TC is only evaluated from the step after the
    // trigger start; an instantly-unrealizable trigger aborts in place.
    add(kIdle, !r.tse, {}, {}, kIdle);
    if (r.tmin == 0) {
        emit_realized(kIdle, r.tse && r.tee, {});
        if (r.tmax >= 1)
            add(kIdle, r.tse && !r.tee, {}, {kCt}, kTrig);
        else
            add(kIdle, r.tse && !r.tee, {}, {}, kIdle);
    } else {
        add(kIdle, r.tse, {}, {kCt}, kTrig);
    }

    // Trig: regions of ct partition every valuation.
    if (r.tmin >= 1) {
        add(kTrig, r.tc, below(kCt, r.tmin), {}, kTrig);
        add(kTrig, !r.tc, below(kCt, r.tmin), {}, kIdle);
    }
    emit_realized(kTrig, r.tee, window(kCt, r.tmin, r.tmax));
    if (r.tmax > r.tmin) {
        add(kTrig, !r.tee && r.tc, half_open(kCt, r.tmin, r.tmax), {}, kTrig);
        add(kTrig, !r.tee && !r.tc, half_open(kCt, r.tmin, r.tmax), {}, kIdle);
    }
    add(kTrig, !r.tee, at(kCt, r.tmax), {}, kIdle);
    add(kTrig, BoolExpr::constant(true), above(kCt, r.tmax), {}, kIdle);

    // Delay: ASE occurrences before Lmin are ignored; missing the window is an
    // error (the SUP is committed once the trigger realized).
    emit_action_start(kDelay, r.ase, window(kCd, r.lmin, r.lmax));
    if (r.lmin >= 1) add(kDelay, BoolExpr::constant(true), below(kCd, r.lmin), {}, kDelay);
    if (r.lmax > r.lmin) add(kDelay, !r.ase, half_open(kCd, r.lmin, r.lmax), {}, kDelay);
    add(kDelay, !r.ase, at(kCd, r.lmax), {}, kErr);
    add(kDelay, BoolExpr::constant(true), above(kCd, r.lmax), {}, kErr);

    // Lockout shape: instantaneous trigger and delay, a point action window
    // whose three expressions coincide ("q holds for a steps"). Obligations of
    // overlapping instances nest here, so a fresh trigger during the action
    // phase restarts the window instead of being dropped; the automaton then
    // monitors every instance exactly, not just the first.
    const bool lockout = r.tmin == 0 && r.tmax == 0 && r.lmin == 0 && r.lmax == 0 &&
                         r.amin == r.amax && r.amax >= 1 && bool_equivalent(r.ase, r.ac) &&
                         bool_equivalent(r.ase, r.aee);

    if (lockout) {
        add(kAct, r.tse && r.tee && r.ase, {}, {kCa}, kAct);
        add(kAct, !(r.tse && r.tee) && r.ase, below(kCa, r.amax), {}, kAct);
        add(kAct, !(r.tse && r.tee) && r.ase, {{{kCa, CmpOp::Ge, r.amax}}}, {}, kIdle);
        add(kAct, !r.ase, {}, {}, kErr);
    } else {
        // Act: AC must hold until AEE lands in the window.
        add(kAct, r.aee, window(kCa, r.amin, r.amax), {}, kIdle);
        if (r.amin >= 1) {
            add(kAct, r.ac, below(kCa, r.amin), {}, kAct);
            add(kAct, !r.ac, below(kCa, r.amin), {}, kErr);
        }
        if (r.amax > r.amin) {
            add(kAct, !r.aee && r.ac, half_open(kCa, r.amin, r.amax), {}, kAct);
            add(kAct, !r.aee && !r.ac, half_open(kCa, r.amin, r.amax), {}, kErr);
        }
        add(kAct, !r.aee, at(kCa, r.amax), {}, kErr);
        add(kAct, BoolExpr::constant(true), above(kCa, r.amax), {}, kErr);
    }

    add(kErr, BoolExpr::constant(true), {}, {}, kErr);

    ta.finalize();
    return ta;
}

AutomatonClass classify(const TimedAutomaton& ta) {
    bool safety = true, co_safety = true;
    for (const auto& t : ta.transitions) {
        if (!ta.accepting[t.src] && ta.accepting[t.tgt]) safety = false;
        if (ta.accepting[t.src] && !ta.accepting[t.tgt]) co_safety = false;
    }
    if (safety) return AutomatonClass::Safety;
    if (co_safety) return AutomatonClass::CoSafety;
    return AutomatonClass::Neither;
}

}  // namespace rtcheck
