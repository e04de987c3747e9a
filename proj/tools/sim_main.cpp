#include "manetsim/experiment.hpp"
#include "manetsim/scenario.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace manetsim;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

std::vector<ProtocolMode> parse_protocols(const std::vector<std::string>& names) {
    std::vector<ProtocolMode> out;
    for (const std::string& name : names) {
        if (name == "aomr-lm") {
            out.push_back(ProtocolMode::AomrLm);
        } else if (name == "aomdv") {
            out.push_back(ProtocolMode::Aomdv);
        } else if (name == "both") {
            out.push_back(ProtocolMode::AomrLm);
            out.push_back(ProtocolMode::Aomdv);
        } else {
            throw ScenarioError("unknown protocol '" + name + "' (use aomr-lm, aomdv or both)");
        }
    }
    return out;
}

int cmd_run(const std::string& scenario_path, const std::vector<std::string>& protocol_names,
            const std::vector<std::uint64_t>& seeds, const std::string& out_dir, int jobs,
            bool trace_messages, bool trace_positions) {
    ExperimentPlan plan;
    plan.scenario = load_scenario(scenario_path);
    plan.protocols = parse_protocols(protocol_names);
    plan.seeds = seeds;
    plan.out_dir = out_dir;
    plan.jobs = jobs;
    plan.options.trace_messages = trace_messages;
    plan.options.trace_positions = trace_positions;

    ExperimentOutcome outcome = run_experiment(plan);
    std::cout << outcome.summary_csv;
    for (const ExperimentRun& run : outcome.runs) {
        if (run.failed) {
            std::cerr << "run " << to_string(run.protocol) << " seed " << run.seed
                      << " failed: " << run.error << "\n";
        }
    }
    if (!out_dir.empty()) {
        std::cerr << "wrote " << out_dir << "/summary.csv and " << outcome.runs.size()
                  << " run directories\n";
    }
    return outcome.failures ? kExitRuntime : kExitOk;
}

int cmd_alpha_table(double t_net, std::vector<int> k_list, const std::string& out_csv) {
    if (!(t_net > 0.0 && t_net < 1.0)) {
        throw ScenarioError("--t-net must lie in (0,1)");
    }
    if (k_list.empty()) {
        k_list = {10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
    }
    for (int k : k_list) {
        if (k < 1) {
            throw ScenarioError("--k values must be positive");
        }
    }
    const auto rows = alpha_table(t_net, k_list);
    std::cout << alpha_table_text(rows);
    if (!out_csv.empty()) {
        std::ofstream out(out_csv, std::ios::binary);
        if (!out) {
            throw ScenarioError("cannot write " + out_csv);
        }
        out << alpha_table_csv(rows);
    }
    return kExitOk;
}

int cmd_curves(const std::string& run_dir, const std::string& out_dir) {
    const auto written = emit_curves(run_dir, out_dir);
    for (const std::string& name : written) {
        std::cout << out_dir << "/" << name << "\n";
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete-event simulator for energy-aware multipath routing in mobile ad hoc "
                 "networks (AOMR-LM with an AOMDV baseline)"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "Run a scenario (all seeds x protocols)");
    std::string scenario_path;
    std::vector<std::string> protocol_names;
    std::vector<std::uint64_t> seeds;
    std::string out_dir;
    int jobs = 1;
    bool trace_messages = false;
    bool trace_positions = false;
    run->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    run->add_option("--protocol", protocol_names, "aomr-lm | aomdv | both (overrides the scenario)");
    run->add_option("--seed,--seeds", seeds, "Seed list (overrides the scenario)");
    run->add_option("--out", out_dir, "Output directory for summary CSV and run traces");
    run->add_option("--jobs", jobs, "Parallel runs")->check(CLI::PositiveNumber);
    run->add_flag("--trace-messages", trace_messages, "Record a per-message trace");
    run->add_flag("--trace-positions", trace_positions, "Record sampled node positions");

    // alpha-table
    auto* alpha = app.add_subcommand("alpha-table", "Print alpha_min = t_net^(1/k) per k");
    double t_net = 0x1.0p-40;
    std::vector<int> k_list;
    std::string alpha_csv;
    alpha->add_option("--t-net", t_net, "Participation factor (default 2^-40)");
    alpha->add_option("--k", k_list, "k values (default 10,20,...,100)");
    alpha->add_option("--out", alpha_csv, "Also write the table as CSV");

    // curves
    auto* curves = app.add_subcommand("curves", "Emit plot-ready x,y,series CSVs from run output");
    std::string curves_in;
    std::string curves_out = "curves";
    curves->add_option("run_dir", curves_in, "Directory produced by 'sim run --out'")->required();
    curves->add_option("--out", curves_out, "Curve output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            return cmd_run(scenario_path, protocol_names, seeds, out_dir, jobs, trace_messages,
                           trace_positions);
        }
        if (alpha->parsed()) {
            return cmd_alpha_table(t_net, k_list, alpha_csv);
        }
        if (curves->parsed()) {
            return cmd_curves(curves_in, curves_out);
        }
    } catch (const ScenarioError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}
