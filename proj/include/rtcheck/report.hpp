#pragma once

#include <string>
#include <vector>

#include "rtcheck/consistency.hpp"

namespace rtcheck {

// Per-step view of a witness: the letter plus each requirement's own state
// (from running the trace in that requirement's automaton alone).
struct WitnessStep {
    int index;
    Letter letter;
    std::vector<std::string> states;  // one per requirement, same order as the set
    std::vector<std::string> phases;  // idle/trigger/delay/action/error for SUPs
};

struct ReportDocument {
    Verdict verdict;
    std::vector<std::string> requirement_names;
    std::vector<WitnessStep> steps;                 // empty unless a witness exists
    std::vector<std::string> final_states;          // per requirement, after the last letter
    std::string note;                               // e.g. timeout explanation
};

ReportDocument build_report(const RequirementSet& rs, const Verdict& verdict,
                            const std::string& note = "");

std::string render_text(const RequirementSet& rs, const ReportDocument& doc);
std::string render_json(const RequirementSet& rs, const ReportDocument& doc);

}  // namespace rtcheck
