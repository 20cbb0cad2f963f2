#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "naive.hpp"
#include "rtcheck/cli.hpp"
#include "rtcheck/consistency.hpp"
#include "rtcheck/parser.hpp"
#include "rtcheck/report.hpp"
#include "rtcheck/sup.hpp"

using namespace rtcheck;

namespace {

std::string data_file(const std::string& name) { return std::string(RTCHECK_DATA_DIR) + "/" + name; }

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

// Drops volatile timing fields before comparing reports.
std::string scrub_elapsed(std::string text) {
    auto pos = text.find("\"elapsed_ms\"");
    while (pos != std::string::npos) {
        auto end = text.find_first_of(",}\n", pos);
        text.erase(pos, end - pos);
        pos = text.find("\"elapsed_ms\"");
    }
    return text;
}

}  // namespace

TEST_CASE("parsing the sup example file") {
    RequirementSet rs = parse_requirements(data_file("example1.rt"));
    REQUIRE(rs.size() == 2);
    CHECK(rs.props == std::vector<std::string>{"request", "response", "repair"});
    CHECK(rs.requirements[0].name == "R1");
    CHECK(rs.requirements[0].sup.has_value());
    for (const auto& req : rs.requirements) {
        CHECK(classify(req.automaton) == AutomatonClass::Safety);
        CHECK(validate_deterministic(req.automaton).empty());
        CHECK(validate_complete(req.automaton).empty());
    }
    // Arrow form desugars to the block encoding.
    RequirementSet block = parse_requirements_text(
        "props request response repair\n"
        "requirement R1 sup { tse = request tc = request tee = request t = [0,0]\n"
        "  l = [3,4] ase = response ac = response aee = response a = [0,0] }\n");
    CHECK(naive::accept_equivalent(block.requirements[0].automaton,
                                   rs.requirements[0].automaton, 8));
}

TEST_CASE("parsing the hand-encoded file renames clocks") {
    RequirementSet rs = parse_requirements(data_file("example1_fig2.rt"));
    REQUIRE(rs.size() == 2);
    CHECK(rs.requirements[0].automaton.clock_names ==
          std::vector<std::string>{"R1.c"});
    CHECK(rs.requirements[1].automaton.clock_names ==
          std::vector<std::string>{"R2.c"});
    for (const auto& req : rs.requirements) {
        CHECK(validate_deterministic(req.automaton).empty());
        CHECK(validate_complete(req.automaton).empty());
    }
}

TEST_CASE("parse errors carry positions and name the offender") {
    CHECK_THROWS_WITH_AS(
        parse_requirements_text("props a b\nrequirement R sup a -> oops\n"),
        doctest::Contains("undeclared proposition 'oops'"), ParseError);

    CHECK_THROWS_AS(parse_requirements_text("props a\nrequirement R sup a -> a\n"
                                            "requirement R sup a -> a\n"),
                    ParseError);

    try {
        parse_requirements_text("props a b\nrequirement R sup a -> oops\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(e.column > 0);
    }
}

TEST_CASE("nondeterministic automata are rejected with the offending pair") {
    const char* text =
        "props p\n"
        "requirement R automaton {\n"
        "  states s t u\n"
        "  initial s\n"
        "  accepting s t u\n"
        "  trans s -> t\n"
        "  trans s -> u\n"
        "}\n";
    CHECK_THROWS_AS(parse_requirements_text(text), StructuralError);
}

TEST_CASE("multi-initial automata are rejected") {
    const char* text =
        "props p\n"
        "requirement R automaton {\n"
        "  states s t\n"
        "  initial s t\n"
        "  accepting s t\n"
        "  trans s -> s\n"
        "  trans t -> t\n"
        "}\n";
    CHECK_THROWS_AS(parse_requirements_text(text), ParseError);
}

TEST_CASE("cli end to end on the running example") {
    auto found = cli({data_file("example1.rt"), "--algorithm", "rt", "--n", "2"});
    CHECK(found.code == 1);
    CHECK(found.out.find("inconsistency-witness") != std::string::npos);
    CHECK(found.out.find("confirmed") != std::string::npos);

    auto repaired = cli({data_file("example1_r3.rt"), "--algorithm", "rt", "--n", "3"});
    CHECK(repaired.code == 0);
    CHECK(repaired.out.find("verdict: consistent") != std::string::npos);

    auto partial = cli({data_file("example1.rt"), "--algorithm", "partial", "--alpha", "10",
                        "--beta", "5"});
    CHECK(partial.code == 1);

    auto partial_rt = cli({data_file("example1.rt"), "--algorithm", "partial-rt", "--alpha",
                           "40", "--n", "2"});
    CHECK(partial_rt.code == 1);

    auto fig = cli({data_file("example1_fig2.rt"), "--algorithm", "rt", "--n", "2"});
    CHECK(fig.code == 1);
}

TEST_CASE("cli error paths") {
    auto missing = cli({"/nonexistent/req.rt"});
    CHECK(missing.code == 2);

    auto bad_flag = cli({data_file("example1.rt"), "--algorithm", "nonsense"});
    CHECK(bad_flag.code == 2);

    auto limited = cli({data_file("example1.rt"), "--algorithm", "rt", "--max-nodes", "4"});
    CHECK(limited.code == 3);
    CHECK(limited.err.find("resource limit") != std::string::npos);
}

TEST_CASE("json report replays to the recorded final configuration") {
    RequirementSet rs = parse_requirements(data_file("example1.rt"));
    Checker checker(rs);
    Verdict v = checker.check_rt(2);
    REQUIRE(v.witness.has_value());
    ReportDocument doc = build_report(rs, v);

    // The per-requirement annotations replay step by step.
    REQUIRE(doc.steps.size() == v.witness->trace.size());
    for (std::size_t r = 0; r < rs.requirements.size(); ++r) {
        auto run = run_trace(rs.requirements[r].automaton, v.witness->trace);
        for (std::size_t s = 0; s < doc.steps.size(); ++s) {
            CHECK(doc.steps[s].states[r] ==
                  rs.requirements[r].automaton.state_names[run[s + 1].state]);
        }
        CHECK(doc.final_states[r] ==
              rs.requirements[r].automaton.state_names[run.back().state]);
    }

    std::string json = render_json(rs, doc);
    CHECK(json.find("\"verdict\": \"inconsistency-witness\"") != std::string::npos);
    CHECK(json.find("\"confirmed_against_full_set\": true") != std::string::npos);
}

TEST_CASE("json output is stable across runs") {
    auto a = cli({data_file("example1.rt"), "--algorithm", "rt", "--format", "json"});
    auto b = cli({data_file("example1.rt"), "--algorithm", "rt", "--format", "json"});
    CHECK(scrub_elapsed(a.out) == scrub_elapsed(b.out));

    auto c = cli({data_file("example1_r3.rt"), "--algorithm", "partial", "--format", "json"});
    auto d = cli({data_file("example1_r3.rt"), "--algorithm", "partial", "--format", "json"});
    CHECK(scrub_elapsed(c.out) == scrub_elapsed(d.out));
}

TEST_CASE("completion policy flag") {
    auto self_mode = cli({data_file("example1_fig2.rt"), "--algorithm", "rt", "--completion",
                          "self"});
    CHECK(self_mode.code == 1);  // the verdict does not depend on unreachable padding
}
