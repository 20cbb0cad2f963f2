#pragma once

#include "rtcheck/model.hpp"

namespace rtcheck {

enum class AutomatonClass { Safety, CoSafety, Neither };

// Compiles a SUP instance into a complete deterministic safety automaton over
// the given proposition list. States: Idle, Trig, Delay, Act, Err; clocks:
// ct, cd, ca. Single-active-instance semantics: while a trigger, delay or
// action phase is running, fresh trigger-start occurrences are ignored; an
// aborted trigger returns to Idle without error.
TimedAutomaton compile_sup(const SupRequirement& r, const std::vector<std::string>& props);

// Safety: no transitions from non-accepting to accepting states; co-safety:
// none from accepting to non-accepting. An automaton satisfying both is
// reported safety.
AutomatonClass classify(const TimedAutomaton& ta);

}  // namespace rtcheck
