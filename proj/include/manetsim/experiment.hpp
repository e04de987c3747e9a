#pragma once

#include "manetsim/scenario.hpp"
#include "manetsim/simulation.hpp"

#include <optional>
#include <string>
#include <vector>

namespace manetsim {

// ---------------------------------------------------------------------------
// alpha table

struct AlphaTableRow {
    int k = 0;
    double alpha_min = 0.0;
    std::optional<double> reference; // published value, when one exists for this k
    bool divergent = false;          // reference present and off by more than 0.002
};

/// alpha_min = t_net^(1/k) for every k. Rows with a known reference value
/// are checked against it; k = 10 and k = 20 diverge for the default t_net
/// (no single t_net reproduces them together with k >= 30).
std::vector<AlphaTableRow> alpha_table(double t_net, const std::vector<int>& k_list);

std::string alpha_table_text(const std::vector<AlphaTableRow>& rows);
std::string alpha_table_csv(const std::vector<AlphaTableRow>& rows);

// ---------------------------------------------------------------------------
// experiment runner

struct ExperimentPlan {
    Scenario scenario;
    std::vector<ProtocolMode> protocols; // empty = scenario's protocol
    std::vector<std::uint64_t> seeds;    // empty = scenario's seeds
    Simulation::Options options;
    std::string out_dir; // empty = no files, results in memory only
    int jobs = 1;
};

struct ExperimentRun {
    ProtocolMode protocol = ProtocolMode::AomrLm;
    std::uint64_t seed = 0;
    bool failed = false;
    std::string error;
    RunResult result;
};

struct ProtocolAggregate {
    std::string protocol;
    std::size_t runs = 0;
    double lifetime_mean = 0.0, lifetime_stddev = 0.0;
    double energy_mean = 0.0, energy_stddev = 0.0;
    double delay_mean = 0.0, delay_stddev = 0.0; // over runs that delivered
    double ratio_mean = 0.0, ratio_stddev = 0.0;
};

struct ExperimentOutcome {
    std::vector<ExperimentRun> runs; // protocol-major, seed order preserved
    std::vector<ProtocolAggregate> aggregates;
    std::string summary_csv;
    std::size_t failures = 0;
};

/// Execute |seeds| x |protocols| independent runs (in parallel when jobs >
/// 1), compute per-protocol aggregates, and, when out_dir is set, write the
/// summary CSV plus one directory of traces per run.
ExperimentOutcome run_experiment(const ExperimentPlan& plan);

// ---------------------------------------------------------------------------
// plot-ready curves

/// Scan an experiment output directory and emit x,y,series CSVs:
/// exhausted_vs_time.csv, energy_vs_time.csv, delay_vs_nodes.csv and
/// alpha_vs_k.csv. Returns the file names written.
std::vector<std::string> emit_curves(const std::string& run_dir, const std::string& out_dir);

} // namespace manetsim
