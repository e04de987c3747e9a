#include "manetsim/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

namespace manetsim {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// alpha table

namespace {

std::optional<double> reference_alpha(int k) {
    switch (k) {
    case 10: return 0.155;
    case 20: return 0.289;
    case 30: return 0.396;
    case 40: return 0.499;
    case 50: return 0.574;
    case 60: return 0.629;
    case 70: return 0.672;
    case 80: return 0.707;
    case 90: return 0.734;
    case 100: return 0.757;
    default: return std::nullopt;
    }
}

std::string fmt(double v, const char* spec = "%.9g") {
    char buf[48];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

} // namespace

std::vector<AlphaTableRow> alpha_table(double t_net, const std::vector<int>& k_list) {
    std::vector<AlphaTableRow> rows;
    for (int k : k_list) {
        AlphaTableRow row;
        row.k = k;
        row.alpha_min = energy::alpha_lower_bound({0.42, t_net, k});
        row.reference = reference_alpha(k);
        row.divergent = row.reference && std::abs(row.alpha_min - *row.reference) > 0.002;
        rows.push_back(row);
    }
    return rows;
}

std::string alpha_table_text(const std::vector<AlphaTableRow>& rows) {
    std::ostringstream out;
    out << "  k   alpha_min   reference   note\n";
    for (const AlphaTableRow& r : rows) {
        char line[128];
        std::snprintf(line, sizeof(line), "%3d   %9.3f   %9s   %s\n", r.k, r.alpha_min,
                      r.reference ? fmt(*r.reference, "%.3f").c_str() : "-",
                      r.divergent ? "diverges from reference" : "");
        out << line;
    }
    if (std::any_of(rows.begin(), rows.end(), [](const auto& r) { return r.divergent; })) {
        out << "note: no single t_net reproduces the reference values for the divergent rows\n"
               "      together with the rest of the table.\n";
    }
    return out.str();
}

std::string alpha_table_csv(const std::vector<AlphaTableRow>& rows) {
    std::string out = "k,alpha_min,reference,divergent\n";
    for (const AlphaTableRow& r : rows) {
        out += std::to_string(r.k) + "," + fmt(r.alpha_min) + ",";
        if (r.reference) {
            out += fmt(*r.reference);
        }
        out += ",";
        out += r.divergent ? "1" : "0";
        out += "\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// experiment runner

namespace {

double stddev_of(const std::vector<double>& xs, double mean) {
    if (xs.size() < 2) {
        return 0.0;
    }
    double acc = 0.0;
    for (double x : xs) {
        acc += (x - mean) * (x - mean);
    }
    return std::sqrt(acc / static_cast<double>(xs.size() - 1));
}

double mean_of(const std::vector<double>& xs) {
    if (xs.empty()) {
        return 0.0;
    }
    double acc = 0.0;
    for (double x : xs) {
        acc += x;
    }
    return acc / static_cast<double>(xs.size());
}

std::string run_dir_name(const ExperimentRun& run) {
    return std::string(to_string(run.protocol)) + "-seed" + std::to_string(run.seed);
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

void write_run_files(const fs::path& dir, const ExperimentRun& run) {
    fs::create_directories(dir);
    write_file(dir / "summary.csv",
               summary_csv_header() + "\n" + summary_csv_row(run.result.summary) + "\n");
    std::string exhaustions = "t,node\n";
    for (const auto& [node, t] : run.result.exhaustions) {
        exhaustions += fmt(t) + "," + std::to_string(node) + "\n";
    }
    write_file(dir / "exhaustions.csv", exhaustions);
    std::string energy = "t,consumed_J\n";
    for (const auto& [t, joules] : run.result.energy_samples) {
        energy += fmt(t) + "," + fmt(joules) + "\n";
    }
    write_file(dir / "energy.csv", energy);
    if (!run.result.message_trace.empty()) {
        write_file(dir / "messages.trace", run.result.message_trace);
    }
    if (!run.result.position_trace.empty()) {
        write_file(dir / "positions.csv", "t,node,x,y\n" + run.result.position_trace);
    }
}

} // namespace

ExperimentOutcome run_experiment(const ExperimentPlan& plan) {
    validate_scenario(plan.scenario);
    std::vector<ProtocolMode> protocols = plan.protocols;
    if (protocols.empty()) {
        protocols.push_back(plan.scenario.protocol);
    }
    std::vector<std::uint64_t> seeds = plan.seeds;
    if (seeds.empty()) {
        seeds = plan.scenario.seeds;
    }

    ExperimentOutcome outcome;
    outcome.runs.resize(protocols.size() * seeds.size());
    for (std::size_t p = 0; p < protocols.size(); ++p) {
        for (std::size_t s = 0; s < seeds.size(); ++s) {
            ExperimentRun& run = outcome.runs[p * seeds.size() + s];
            run.protocol = protocols[p];
            run.seed = seeds[s];
        }
    }

    const int jobs = std::max(1, plan.jobs);
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= outcome.runs.size()) {
                return;
            }
            ExperimentRun& run = outcome.runs[i];
            try {
                Simulation sim(plan.scenario, run.seed, run.protocol, plan.options);
                run.result = sim.run();
            } catch (const std::exception& e) {
                run.failed = true;
                run.error = e.what();
            }
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) {
            pool.emplace_back(worker);
        }
        for (std::thread& t : pool) {
            t.join();
        }
    }

    // Aggregate per protocol over the successful runs.
    std::string csv = summary_csv_header() + "\n";
    for (const ExperimentRun& run : outcome.runs) {
        if (run.failed) {
            outcome.failures++;
            csv += std::to_string(run.seed) + "," + to_string(run.protocol) + "," +
                   std::to_string(plan.scenario.node_count) + ",,,,,\n";
            continue;
        }
        csv += summary_csv_row(run.result.summary) + "\n";
    }
    for (ProtocolMode mode : protocols) {
        std::vector<double> lifetimes, energies, delays, ratios;
        for (const ExperimentRun& run : outcome.runs) {
            if (run.protocol != mode || run.failed) {
                continue;
            }
            const RunSummary& s = run.result.summary;
            lifetimes.push_back(s.lifetime_or_duration());
            energies.push_back(s.mean_energy);
            ratios.push_back(s.delivery_ratio);
            if (s.mean_delay) {
                delays.push_back(*s.mean_delay);
            }
        }
        ProtocolAggregate agg;
        agg.protocol = to_string(mode);
        agg.runs = lifetimes.size();
        agg.lifetime_mean = mean_of(lifetimes);
        agg.lifetime_stddev = stddev_of(lifetimes, agg.lifetime_mean);
        agg.energy_mean = mean_of(energies);
        agg.energy_stddev = stddev_of(energies, agg.energy_mean);
        agg.delay_mean = mean_of(delays);
        agg.delay_stddev = stddev_of(delays, agg.delay_mean);
        agg.ratio_mean = mean_of(ratios);
        agg.ratio_stddev = stddev_of(ratios, agg.ratio_mean);
        outcome.aggregates.push_back(agg);

        csv += "mean," + agg.protocol + "," + std::to_string(plan.scenario.node_count) + "," +
               fmt(agg.lifetime_mean) + ",," + fmt(agg.energy_mean) + "," +
               (agg.runs && !delays.empty() ? fmt(agg.delay_mean) : std::string()) + "," +
               fmt(agg.ratio_mean) + "\n";
    }
    outcome.summary_csv = csv;

    if (!plan.out_dir.empty()) {
        const fs::path root(plan.out_dir);
        fs::create_directories(root);
        write_file(root / "summary.csv", csv);
        std::string aggregates = "protocol,metric,mean,stddev,runs\n";
        for (const ProtocolAggregate& a : outcome.aggregates) {
            aggregates += a.protocol + ",lifetime_s," + fmt(a.lifetime_mean) + "," +
                          fmt(a.lifetime_stddev) + "," + std::to_string(a.runs) + "\n";
            aggregates += a.protocol + ",mean_energy_J," + fmt(a.energy_mean) + "," +
                          fmt(a.energy_stddev) + "," + std::to_string(a.runs) + "\n";
            aggregates += a.protocol + ",mean_delay_s," + fmt(a.delay_mean) + "," +
                          fmt(a.delay_stddev) + "," + std::to_string(a.runs) + "\n";
            aggregates += a.protocol + ",delivery_ratio," + fmt(a.ratio_mean) + "," +
                          fmt(a.ratio_stddev) + "," + std::to_string(a.runs) + "\n";
        }
        write_file(root / "aggregates.csv", aggregates);
        write_file(root / "scenario.json", serialize_scenario(plan.scenario));
        for (const ExperimentRun& run : outcome.runs) {
            if (!run.failed) {
                write_run_files(root / "runs" / run_dir_name(run), run);
            }
        }
    }
    return outcome;
}

// ---------------------------------------------------------------------------
// curves

namespace {

struct LoadedRun {
    std::string protocol;
    std::uint64_t seed = 0;
    std::uint32_t nodes = 0;
    std::optional<double> mean_delay;
    std::vector<std::pair<double, double>> exhaust_steps; // (t, count so far)
    std::vector<std::pair<double, double>> energy;        // (t, consumed)
};

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::vector<std::vector<std::string>> read_csv(const fs::path& path) {
    std::vector<std::vector<std::string>> rows;
    std::ifstream in(path);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (header) {
            header = false;
            continue;
        }
        if (!line.empty()) {
            rows.push_back(split(line, ','));
        }
    }
    return rows;
}

double step_value(const std::vector<std::pair<double, double>>& steps, double t) {
    double v = 0.0;
    for (const auto& [st, sv] : steps) {
        if (st <= t) {
            v = sv;
        } else {
            break;
        }
    }
    return v;
}

} // namespace

std::vector<std::string> emit_curves(const std::string& run_dir, const std::string& out_dir) {
    const fs::path root(run_dir);
    std::vector<LoadedRun> runs;
    std::vector<fs::path> dirs;
    if (fs::exists(root / "runs")) {
        for (const auto& entry : fs::directory_iterator(root / "runs")) {
            if (entry.is_directory()) {
                dirs.push_back(entry.path());
            }
        }
    }
    std::sort(dirs.begin(), dirs.end());
    for (const fs::path& dir : dirs) {
        auto summary = read_csv(dir / "summary.csv");
        if (summary.empty() || summary[0].size() < 8) {
            continue;
        }
        LoadedRun run;
        run.seed = std::stoull(summary[0][0]);
        run.protocol = summary[0][1];
        run.nodes = static_cast<std::uint32_t>(std::stoul(summary[0][2]));
        if (!summary[0][6].empty()) {
            run.mean_delay = std::stod(summary[0][6]);
        }
        double count = 0.0;
        for (const auto& row : read_csv(dir / "exhaustions.csv")) {
            count += 1.0;
            run.exhaust_steps.emplace_back(std::stod(row[0]), count);
        }
        for (const auto& row : read_csv(dir / "energy.csv")) {
            run.energy.emplace_back(std::stod(row[0]), std::stod(row[1]));
        }
        runs.push_back(run);
    }

    fs::create_directories(out_dir);
    const fs::path out(out_dir);
    std::vector<std::string> written;

    std::vector<std::string> protocols;
    for (const LoadedRun& run : runs) {
        if (std::find(protocols.begin(), protocols.end(), run.protocol) == protocols.end()) {
            protocols.push_back(run.protocol);
        }
    }
    std::sort(protocols.begin(), protocols.end());

    double horizon = 0.0;
    for (const LoadedRun& run : runs) {
        if (!run.energy.empty()) {
            horizon = std::max(horizon, run.energy.back().first);
        }
        if (!run.exhaust_steps.empty()) {
            horizon = std::max(horizon, run.exhaust_steps.back().first);
        }
    }

    // Exhausted-node count and cumulative energy vs time, mean over seeds,
    // one series per protocol on a shared 1 s grid.
    std::string exhausted = "x,y,series\n";
    std::string energy = "x,y,series\n";
    for (const std::string& proto : protocols) {
        std::vector<const LoadedRun*> mine;
        for (const LoadedRun& run : runs) {
            if (run.protocol == proto) {
                mine.push_back(&run);
            }
        }
        for (double t = 0.0; t <= horizon + 0.5; t += 1.0) {
            double ex = 0.0;
            double en = 0.0;
            for (const LoadedRun* run : mine) {
                ex += step_value(run->exhaust_steps, t);
                en += step_value(run->energy, t);
            }
            const double n = static_cast<double>(mine.size());
            exhausted += fmt(t) + "," + fmt(ex / n) + "," + proto + "\n";
            energy += fmt(t) + "," + fmt(en / n) + "," + proto + "\n";
        }
    }
    write_file(out / "exhausted_vs_time.csv", exhausted);
    written.push_back("exhausted_vs_time.csv");
    write_file(out / "energy_vs_time.csv", energy);
    written.push_back("energy_vs_time.csv");

    // Mean delivery delay vs network size, one point per (protocol, size).
    std::string delay = "x,y,series\n";
    for (const std::string& proto : protocols) {
        std::map<std::uint32_t, std::vector<double>> by_size;
        for (const LoadedRun& run : runs) {
            if (run.protocol == proto && run.mean_delay) {
                by_size[run.nodes].push_back(*run.mean_delay);
            }
        }
        for (const auto& [size, delays] : by_size) {
            delay += std::to_string(size) + "," + fmt(mean_of(delays)) + "," + proto + "\n";
        }
    }
    write_file(out / "delay_vs_nodes.csv", delay);
    written.push_back("delay_vs_nodes.csv");

    // alpha_min vs k for the default participation factor.
    std::string alpha = "x,y,series\n";
    for (const AlphaTableRow& row :
         alpha_table(0x1.0p-40, {10, 20, 30, 40, 50, 60, 70, 80, 90, 100})) {
        alpha += std::to_string(row.k) + "," + fmt(row.alpha_min) + ",alpha_min\n";
    }
    write_file(out / "alpha_vs_k.csv", alpha);
    written.push_back("alpha_vs_k.csv");
    return written;
}

} // namespace manetsim
