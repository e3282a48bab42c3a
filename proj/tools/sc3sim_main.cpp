#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "sc3sim/runner.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidScenario = 2;
constexpr int kExitMissionFailure = 3;
constexpr int kExitInternalFault = 4;

std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw sc3sim::IoError("cannot create output directory '" + dir + "': " + ec.message());
    }
}

int cmd_run(const std::string& scenario_path, const std::string& out_dir, bool seed_given,
            std::uint64_t seed) {
    sc3sim::Scenario scenario = sc3sim::load_scenario(scenario_path);
    if (seed_given) {
        scenario.seed = seed;
    }

    const sc3sim::RunResult result = sc3sim::run_scenario(scenario);

    ensure_dir(out_dir);
    sc3sim::write_summary_csv(result.summary, out_dir + "/summary.csv");
    sc3sim::write_loops_csv(result, out_dir + "/loops.csv");
    sc3sim::write_trace_jsonl(result, out_dir + "/trace.jsonl");
    sc3sim::write_kpis_csv(result, out_dir + "/kpis.csv");

    std::cout << "outcome: " << sc3sim::to_string(result.summary.outcome) << '\n'
              << "loops: " << result.summary.loops << '\n'
              << "mean_total_ms: " << result.summary.mean_total_ms << '\n'
              << "loss_rate: " << result.summary.loss_rate << '\n'
              << "deadline_miss_rate: " << result.summary.deadline_miss_rate << '\n'
              << "trace_digest: " << result.summary.trace_digest << std::endl;

    return result.summary.outcome == sc3sim::RunOutcome::Success ? kExitOk : kExitMissionFailure;
}

int cmd_sweep(const std::string& scenario_path, const std::string& parameter,
              const std::string& values_csv, const std::string& out_dir) {
    const sc3sim::Scenario base = sc3sim::load_scenario(scenario_path);
    const auto values = split_csv(values_csv);
    if (values.empty()) {
        throw sc3sim::SchemaError("values", "expected a comma-separated list");
    }

    const auto rows = sc3sim::sweep(base, parameter, values);
    const std::string csv = sc3sim::sweep_csv(parameter, rows);
    std::cout << csv;

    if (!out_dir.empty()) {
        ensure_dir(out_dir);
        std::ofstream out(out_dir + "/sweep.csv", std::ios::binary);
        out << csv;
    }
    return kExitOk;
}

int cmd_compare(const std::string& scenario_path, const std::string& out_dir) {
    const sc3sim::Scenario base = sc3sim::load_scenario(scenario_path);
    const auto rows = sc3sim::compare_strategies(base);
    const std::string csv = sc3sim::compare_csv(rows);
    std::cout << csv;

    if (!out_dir.empty()) {
        ensure_dir(out_dir);
        std::ofstream out(out_dir + "/compare.csv", std::ios::binary);
        out << csv;
    }
    return kExitOk;
}

int cmd_validate(const std::string& scenario_path) {
    sc3sim::load_scenario(scenario_path);
    std::cout << "ok" << std::endl;
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sc3sim - hard-partitioned edge node simulator for closed-loop drone missions"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out_dir = "out";
    std::string sweep_out;
    std::string parameter;
    std::string values_csv;
    std::uint64_t seed = 0;

    auto* run_cmd = app.add_subcommand("run", "Execute one scenario and export trace files");
    run_cmd->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    auto* seed_opt = run_cmd->add_option("--seed", seed, "Override the scenario seed");
    run_cmd->add_option("--out", out_dir, "Output directory (default: out)");

    auto* sweep_cmd = app.add_subcommand("sweep", "Run the scenario once per parameter value");
    sweep_cmd->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    sweep_cmd->add_option("--param", parameter, "tier|strategy|seed|b0_mbps|per_mbps_mib")->required();
    sweep_cmd->add_option("--values", values_csv, "Comma-separated values")->required();
    sweep_cmd->add_option("--out", sweep_out, "Optional directory for sweep.csv");

    auto* compare_cmd = app.add_subcommand("compare", "Compare partitioning strategies on shared defaults");
    compare_cmd->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    compare_cmd->add_option("--out", sweep_out, "Optional directory for compare.csv");

    auto* validate_cmd = app.add_subcommand("validate", "Validate a scenario file");
    validate_cmd->add_option("scenario", scenario_path, "Scenario JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalidScenario;
    }

    try {
        if (run_cmd->parsed()) {
            return cmd_run(scenario_path, out_dir, seed_opt->count() > 0, seed);
        }
        if (sweep_cmd->parsed()) {
            return cmd_sweep(scenario_path, parameter, values_csv, sweep_out);
        }
        if (compare_cmd->parsed()) {
            return cmd_compare(scenario_path, sweep_out);
        }
        if (validate_cmd->parsed()) {
            return cmd_validate(scenario_path);
        }
    } catch (const sc3sim::IoError& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return kExitInvalidScenario;
    } catch (const sc3sim::SchemaError& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return kExitInvalidScenario;
    } catch (const sc3sim::LayoutInvalid& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return kExitInvalidScenario;
    } catch (const sc3sim::UnknownParameter& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return kExitInvalidScenario;
    } catch (const std::exception& e) {
        std::cerr << "internal fault: " << e.what() << std::endl;
        return kExitInternalFault;
    }
    return kExitInternalFault;
}
