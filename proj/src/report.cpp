#include "rtcheck/report.hpp"

#include <sstream>

#include <json.hpp>

#include "rtcheck/sup.hpp"

namespace rtcheck {

namespace {

const char* kind_text(VerdictKind k) {
    switch (k) {
        case VerdictKind::Consistent: return "consistent";
        case VerdictKind::InconsistencyWitness: return "inconsistency-witness";
        case VerdictKind::NoneFoundWithinBounds: return "none-found-within-bounds";
    }
    return "?";
}

const char* method_text(Method m) {
    switch (m) {
        case Method::Rt: return "rt";
        case Method::Partial: return "partial";
        case Method::PartialRt: return "partial-rt";
    }
    return "?";
}

// Compiled SUP state names map directly onto the pattern's phases.
std::string phase_of(const Requirement& req, const std::string& state) {
    if (!req.sup) return state;
    if (state == "Idle") return "idle";
    if (state == "Trig") return "trigger";
    if (state == "Delay") return "delay";
    if (state == "Act") return "action";
    if (state == "Err") return "error";
    return state;
}

std::string letter_text(const RequirementSet& rs, Letter letter) {
    std::string s = "{";
    bool first = true;
    for (std::size_t p = 0; p < rs.props.size(); ++p) {
        if ((letter >> p) & 1) {
            if (!first) s += ", ";
            s += rs.props[p];
            first = false;
        }
    }
    return s + "}";
}

}  // namespace

ReportDocument build_report(const RequirementSet& rs, const Verdict& verdict,
                            const std::string& note) {
    ReportDocument doc;
    doc.verdict = verdict;
    doc.note = note;
    for (const auto& r : rs.requirements) doc.requirement_names.push_back(r.name);
    if (!verdict.witness) return doc;

    const Trace& trace = verdict.witness->trace;
    std::vector<std::vector<Configuration>> runs;
    for (const auto& r : rs.requirements) runs.push_back(run_trace(r.automaton, trace));

    for (std::size_t s = 0; s < trace.size(); ++s) {
        WitnessStep step;
        step.index = static_cast<int>(s);
        step.letter = trace[s];
        for (std::size_t r = 0; r < rs.requirements.size(); ++r) {
            const std::string& st =
                rs.requirements[r].automaton.state_names[runs[r][s + 1].state];
            step.states.push_back(st);
            step.phases.push_back(phase_of(rs.requirements[r], st));
        }
        doc.steps.push_back(std::move(step));
    }
    for (std::size_t r = 0; r < rs.requirements.size(); ++r)
        doc.final_states.push_back(
            rs.requirements[r].automaton.state_names[runs[r].back().state]);
    return doc;
}

std::string render_text(const RequirementSet& rs, const ReportDocument& doc) {
    const Verdict& v = doc.verdict;
    std::ostringstream os;
    os << "verdict: " << kind_text(v.kind) << "\n";
    os << "method: " << method_text(v.method) << "\n";
    os << "bounds:";
    if (v.n) os << " n=" << *v.n;
    if (v.alpha) os << " alpha=" << *v.alpha;
    if (v.beta) os << " beta=" << *v.beta;
    if (v.depth) os << " depth=" << *v.depth;
    os << "\n";
    if (!v.involved.empty()) {
        os << "involved:";
        for (const auto& name : v.involved) os << " " << name;
        os << "\n";
    }
    if (!doc.note.empty()) os << "note: " << doc.note << "\n";
    if (v.witness) {
        os << "witness (" << v.witness->trace.size() << " steps, "
           << (v.confirmed_against_full_set ? "confirmed against the full set"
                                            : "NOT confirmed")
           << "):\n";
        for (const auto& step : doc.steps) {
            os << "  " << step.index << ": " << letter_text(rs, step.letter) << "  ->";
            for (std::size_t r = 0; r < step.states.size(); ++r)
                os << "  " << doc.requirement_names[r] << "=" << step.phases[r];
            os << "\n";
        }
        os << "  final: every continuation of this trace violates some requirement\n";
    }
    os << "stats: graphs=" << v.stats.graphs_built << " nodes=" << v.stats.total_graph_nodes
       << " checks=" << v.stats.model_checks << " elapsed_ms=" << v.stats.elapsed_ms << "\n";
    return os.str();
}

std::string render_json(const RequirementSet& rs, const ReportDocument& doc) {
    nlohmann::ordered_json j;
    const Verdict& v = doc.verdict;
    j["verdict"] = kind_text(v.kind);
    j["method"] = method_text(v.method);
    nlohmann::ordered_json bounds = nlohmann::ordered_json::object();
    if (v.n) bounds["n"] = *v.n;
    if (v.alpha) bounds["alpha"] = *v.alpha;
    if (v.beta) bounds["beta"] = *v.beta;
    if (v.depth) bounds["depth"] = *v.depth;
    j["bounds"] = bounds;
    j["involved"] = v.involved;
    j["confirmed_against_full_set"] = v.confirmed_against_full_set;
    if (!doc.note.empty()) j["note"] = doc.note;
    if (v.witness) {
        nlohmann::ordered_json w;
        w["kind"] = v.witness->target_kind;
        w["length"] = v.witness->trace.size();
        nlohmann::ordered_json steps = nlohmann::ordered_json::array();
        for (const auto& step : doc.steps) {
            nlohmann::ordered_json s;
            s["index"] = step.index;
            nlohmann::ordered_json letter = nlohmann::ordered_json::object();
            for (std::size_t p = 0; p < rs.props.size(); ++p)
                letter[rs.props[p]] = static_cast<bool>((step.letter >> p) & 1);
            s["letter"] = letter;
            nlohmann::ordered_json reqs = nlohmann::ordered_json::object();
            for (std::size_t r = 0; r < step.states.size(); ++r)
                reqs[doc.requirement_names[r]] = {{"state", step.states[r]},
                                                  {"phase", step.phases[r]}};
            s["requirements"] = reqs;
            steps.push_back(std::move(s));
        }
        w["steps"] = std::move(steps);
        nlohmann::ordered_json fin = nlohmann::ordered_json::object();
        for (std::size_t r = 0; r < doc.final_states.size(); ++r)
            fin[doc.requirement_names[r]] = doc.final_states[r];
        w["final_states"] = fin;
        j["witness"] = std::move(w);
    }
    j["stats"] = {{"graphs_built", v.stats.graphs_built},
                  {"graph_nodes", v.stats.total_graph_nodes},
                  {"model_checks", v.stats.model_checks},
                  {"elapsed_ms", v.stats.elapsed_ms}};
    return j.dump(2) + "\n";
}

}  // namespace rtcheck
