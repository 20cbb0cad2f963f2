#include "rtcheck/cli.hpp"

#include <chrono>
#include <ostream>

#include <CLI11.hpp>

#include "rtcheck/consistency.hpp"
#include "rtcheck/parser.hpp"
#include "rtcheck/report.hpp"

namespace rtcheck {

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"rtcheck - real-time requirement consistency checker"};

    std::string path;
    std::string algorithm = "rt";
    std::string format = "text";
    std::string completion = "trap";
    std::string seed_order = "default";
    int n = 2;
    int alpha = 40;
    int beta = 10;
    int depth = -1;
    std::int64_t max_nodes = kDefaultMaxGraphNodes;
    double timeout_s = 0.0;

    app.add_option("file", path, "requirement file")->required();
    app.add_option("--algorithm", algorithm, "consistency check to run")
        ->check(CLI::IsMember({"rt", "partial", "partial-rt"}))
        ->capture_default_str();
    app.add_option("--n", n, "maximum subset size (rt, partial-rt)")->capture_default_str();
    app.add_option("--alpha", alpha, "exploration bound (partial, partial-rt)")
        ->capture_default_str();
    app.add_option("--beta", beta, "avoidance slack (partial)")->capture_default_str();
    app.add_option("--depth", depth, "bounded-until depth for rt (unbounded when omitted)");
    app.add_option("--format", format, "report format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    app.add_option("--max-nodes", max_nodes, "semantic-graph node limit")->capture_default_str();
    app.add_option("--seed-order", seed_order,
                   "requirement ordering for tie-breaking (both keep file order)")
        ->check(CLI::IsMember({"default", "file"}))
        ->capture_default_str();
    app.add_option("--completion", completion, "completion policy for explicit automata")
        ->check(CLI::IsMember({"trap", "self"}))
        ->capture_default_str();
    app.add_option("--timeout", timeout_s, "soft time budget in seconds (0 = none)")
        ->capture_default_str();

    try {
        std::vector<std::string> argv = args;
        std::reverse(argv.begin(), argv.end());  // CLI11 parses right to left
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        LoadOptions load;
        load.completion =
            completion == "trap" ? CompletionPolicy::ToTrap : CompletionPolicy::ToSelf;
        RequirementSet rs = parse_requirements(path, load);

        CheckOptions opts;
        opts.max_graph_nodes = max_nodes;
        if (timeout_s > 0)
            opts.timeout = std::chrono::milliseconds(static_cast<long>(timeout_s * 1000));

        Checker checker(rs, opts);
        Verdict verdict;
        if (algorithm == "rt") {
            verdict = checker.check_rt(n, depth >= 0 ? std::optional<int>(depth) : std::nullopt);
        } else if (algorithm == "partial") {
            verdict = checker.check_partial(alpha, beta);
        } else {
            verdict = checker.check_partial_rt(alpha, n);
        }

        std::string note = verdict.stats.timed_out ? "time budget exhausted before completion"
                                                   : "";
        ReportDocument doc = build_report(rs, verdict, note);
        out << (format == "json" ? render_json(rs, doc) : render_text(rs, doc));
        return verdict.kind == VerdictKind::InconsistencyWitness ? 1 : 0;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const ResourceLimitError& e) {
        err << "resource limit: " << e.what() << "\n";
        return 3;
    } catch (const StructuralError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace rtcheck
