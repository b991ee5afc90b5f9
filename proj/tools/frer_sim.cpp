// frer-sim: run FRER simulation scenarios and emit measurement data.
//
//   frer-sim run <scenario> [--seed N] [--out DIR] [--format csv|summary|both]
//   frer-sim validate <scenario>
//   frer-sim list-builtin
//
// <scenario> is a path to a scenario JSON file or the name of a built-in one.
// Exit codes: 0 success, 1 validation/parse failure, 2 runtime failure.

#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "frer/scenario.hpp"

namespace fs = std::filesystem;
using namespace frer;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_invalid = 1;
constexpr int exit_runtime = 2;

scenario::ScenarioConfig resolve(const std::string& arg) {
    if (fs::exists(arg)) {
        return scenario::load_scenario(arg);
    }
    if (auto text = scenario::find_builtin(arg)) {
        return scenario::parse_scenario(*text, "builtin:" + arg);
    }
    throw std::runtime_error("no scenario file or built-in scenario named '" + arg + "'");
}

void print_summary(const scenario::RunResult& result, const std::vector<fs::path>& written) {
    const auto& s = result.summary;
    std::cout << "scenario " << s.scenario << " (seed " << s.seed << ")\n";
    for (const auto& t : s.traffic) {
        std::cout << "  " << t.name << ": sent=" << t.sent << " received=" << t.received << " lost=" << t.lost;
        if (t.rtt) {
            std::cout << " rtt_ns min=" << scenario::format_ns(t.rtt->min) << " p50=" << scenario::format_ns(t.rtt->p50)
                      << " p99=" << scenario::format_ns(t.rtt->p99) << " max=" << scenario::format_ns(t.rtt->max);
        }
        std::cout << "\n";
    }
    for (const auto& e : s.elimination) {
        std::cout << "  eliminate " << e.node << "/" << e.stream << ": passed=" << e.counters.passed
                  << " duplicate=" << e.counters.discarded_duplicate << " rogue=" << e.counters.discarded_rogue
                  << " tagless=" << e.counters.tagless << " resets=" << e.counters.resets << "\n";
    }
    for (const auto& p : written) {
        std::cout << "  wrote " << p.string() << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"FRER discrete-event simulator"};
    app.require_subcommand(1);

    std::string run_target;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
    std::string format = "both";
    auto* run_cmd = app.add_subcommand("run", "Run a scenario and write CSV / summary output");
    run_cmd->add_option("scenario", run_target, "Scenario file or built-in name")->required();
    run_cmd->add_option("--seed", seed, "Override the scenario seed");
    run_cmd->add_option("--out", out_dir, "Output directory (default: scenario run.output_dir or .)");
    run_cmd->add_option("--format", format, "Output selection")->check(CLI::IsMember({"csv", "summary", "both"}));

    std::string validate_target;
    auto* validate_cmd = app.add_subcommand("validate", "Check a scenario file");
    validate_cmd->add_option("scenario", validate_target, "Scenario file or built-in name")->required();

    auto* list_cmd = app.add_subcommand("list-builtin", "List the built-in scenarios");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_invalid;
    }

    if (list_cmd->parsed()) {
        for (const auto& b : scenario::builtin_scenarios()) {
            std::cout << b.name << "\n";
        }
        return exit_ok;
    }

    const std::string& target = run_cmd->parsed() ? run_target : validate_target;
    scenario::ScenarioConfig config;
    try {
        config = resolve(target);
    } catch (const scenario::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return exit_invalid;
    } catch (const scenario::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return exit_invalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_invalid;
    }

    if (validate_cmd->parsed()) {
        std::cout << config.name << ": ok\n";
        return exit_ok;
    }

    try {
        static const std::map<std::string, scenario::Format> formats = {
            {"csv", scenario::Format::csv}, {"summary", scenario::Format::summary}, {"both", scenario::Format::both}};
        const auto result = scenario::run(config, seed);
        fs::path dir = !out_dir.empty() ? fs::path(out_dir)
                       : !config.run.output_dir.empty() ? fs::path(config.run.output_dir)
                                                        : fs::path(".");
        const auto written = scenario::emit(result, config, formats.at(format), dir);
        print_summary(result, written);
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return exit_runtime;
    }
    return exit_ok;
}
