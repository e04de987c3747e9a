// Acceptance suite: runs every shipping criterion end to end and prints one
// pass/fail line each. Exits nonzero if any criterion fails.

#include "manetsim/experiment.hpp"
#include "manetsim/simulation.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>
#include <vector>

using namespace manetsim;

namespace {

struct CriterionResult {
    int id;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

// ---------------------------------------------------------------------------
// 1. alpha-table reproduction

CriterionResult criterion_alpha_table() {
    Stopwatch watch;
    CriterionResult r{1, "alpha-table reproduction (k in 30..100 within 0.002)"};
    const std::vector<std::pair<int, double>> expected = {
        {30, 0.396}, {40, 0.499}, {50, 0.574}, {60, 0.629},
        {70, 0.672}, {80, 0.707}, {90, 0.734}, {100, 0.757}};
    const auto rows = alpha_table(0x1.0p-40, {10, 20, 30, 40, 50, 60, 70, 80, 90, 100});
    bool ok = true;
    std::ostringstream detail;
    for (const auto& [k, want] : expected) {
        const auto it = std::find_if(rows.begin(), rows.end(),
                                     [&](const AlphaTableRow& row) { return row.k == k; });
        const double got = it->alpha_min;
        if (std::abs(got - want) > 0.002 || it->divergent) {
            ok = false;
            detail << " k=" << k << " off (" << got << " vs " << want << ")";
        }
    }
    // k = 10 and 20 stay divergent under the default t_net and are flagged
    for (int k : {10, 20}) {
        const auto it = std::find_if(rows.begin(), rows.end(),
                                     [&](const AlphaTableRow& row) { return row.k == k; });
        if (!it->divergent) {
            ok = false;
            detail << " k=" << k << " unexpectedly matches";
        }
    }
    r.pass = ok && watch.seconds() < 1.0;
    if (detail.str().empty()) {
        detail << "8 rows within 0.002; k=10,20 flagged divergent";
    }
    r.detail = detail.str();
    r.seconds = watch.seconds();
    return r;
}

// ---------------------------------------------------------------------------
// 2. accumulation vs brute-force oracle, exact

CriterionResult criterion_energy_oracle() {
    Stopwatch watch;
    CriterionResult r{2, "hop-wise energy accumulation equals brute force on 1000 path sets"};
    std::mt19937_64 rng(2024);
    auto draw_energy = [&]() { return static_cast<double>(rng() % 60000) / 1000.0 + 0.001; };
    std::size_t mismatches = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t npaths = 1 + rng() % 6;
        std::vector<std::vector<double>> raw(npaths);
        for (auto& path : raw) {
            const std::size_t nodes = 2 + rng() % 9; // up to 10 nodes
            for (std::size_t k = 0; k < nodes; ++k) {
                path.push_back(draw_energy());
            }
        }
        // Incremental side: the flood's per-hop accumulation. The source
        // seeds the field, every intermediate adds itself, the destination
        // folds its own residual when collecting the copy.
        std::vector<double> incremental_sums;
        double beta_total = 0.0;
        std::uint64_t beta_nodes = 0;
        for (const auto& path : raw) {
            double e_sum = path.front();
            for (std::size_t k = 1; k + 1 < path.size(); ++k) {
                e_sum += path[k];
            }
            e_sum += path.back();
            incremental_sums.push_back(e_sum);
            beta_total += e_sum;
            beta_nodes += path.size();
        }
        const double beta = beta_total / static_cast<double>(beta_nodes);

        // Oracle: flatten and recompute from scratch.
        double oracle_total = 0.0;
        std::uint64_t oracle_nodes = 0;
        for (std::size_t p = 0; p < npaths; ++p) {
            double s = 0.0;
            for (double w : raw[p]) {
                s += w;
            }
            if (s != incremental_sums[p]) {
                ++mismatches;
            }
            oracle_total += s;
            oracle_nodes += raw[p].size();
        }
        const double oracle_beta = oracle_total / static_cast<double>(oracle_nodes);
        if (beta != oracle_beta) {
            ++mismatches;
        }
        // and the library route must agree exactly too
        std::vector<energy::PathEnergySummary> summaries;
        for (const auto& path : raw) {
            summaries.push_back({path});
        }
        if (energy::discovery_energy_average(summaries) != oracle_beta) {
            ++mismatches;
        }
    }
    r.pass = mismatches == 0 && watch.seconds() < 5.0;
    r.detail = "mismatches=" + std::to_string(mismatches);
    r.seconds = watch.seconds();
    return r;
}

// ---------------------------------------------------------------------------
// 3. protocol invariants on random static topologies

struct SweepCounts {
    std::size_t loop_violations = 0;
    std::size_t local_violations = 0;
    std::size_t disjoint_violations = 0;
    std::size_t beta_violations = 0;
    std::size_t marked_violations = 0;
    std::size_t discoveries = 0;
};

void sweep_tables(Simulation& sim, SweepCounts& counts) {
    // Loop freedom: along any chain of stored next hops the remaining
    // hopcount strictly decreases; entries that pinned an advertised
    // hopcount bound all their routes by it.
    for (NodeId i = 0; i < sim.node_count(); ++i) {
        for (const auto& [dest, entry] : sim.node(i).table().entries()) {
            if (entry.advertised_hopcount) {
                for (const RouteListItem& item : entry.route_list) {
                    if (item.hopcount >= *entry.advertised_hopcount) {
                        ++counts.local_violations;
                    }
                }
            }
            for (const RouteListItem& item : entry.route_list) {
                if (item.nexthop == dest) {
                    continue; // terminal hop
                }
                const RouteEntry* next = sim.node(item.nexthop).table().peek(dest);
                if (!next || !next->seq_known || next->sequence_number != entry.sequence_number ||
                    next->route_list.empty()) {
                    continue; // no continuation stored, nothing to loop through
                }
                std::uint32_t min_hops = UINT32_MAX;
                for (const RouteListItem& theirs : next->route_list) {
                    min_hops = std::min(min_hops, theirs.hopcount);
                }
                if (min_hops >= item.hopcount) {
                    ++counts.loop_violations;
                }
            }
        }
    }
}

void sweep_discovery(Simulation& sim, SweepCounts& counts) {
    for (const CbrFlow& flow : sim.flows()) {
        const SourcePathSet* set = sim.node(flow.source).path_set(flow.destination);
        if (!set || set->routes.empty()) {
            continue;
        }
        ++counts.discoveries;
        std::set<std::pair<NodeId, NodeId>> links;
        for (const SourceRoute& route : set->routes) {
            for (std::size_t k = 0; k + 1 < route.trace.size(); ++k) {
                if (!links.insert({route.trace[k], route.trace[k + 1]}).second) {
                    ++counts.disjoint_violations; // directed link reused
                }
            }
            if (route.beta != set->routes.front().beta) {
                ++counts.beta_violations;
            }
        }
    }
    for (NodeId i = 0; i < sim.node_count(); ++i) {
        counts.marked_violations += sim.node(i).counters().marked_forward_violations;
    }
}

CriterionResult criterion_invariants() {
    Stopwatch watch;
    CriterionResult r{3, "loop freedom, link-disjointness, single beta on 500 static topologies"};
    SweepCounts counts;
    for (int trial = 0; trial < 500; ++trial) {
        Scenario s = parse_scenario("{}");
        s.node_count = 20 + static_cast<std::uint32_t>(trial % 41);
        s.max_speed_mps = 0.0;
        s.duration_s = 3.0;
        Simulation sim(s, 1000 + trial, ProtocolMode::AomrLm);
        sim.run_until(3.0);
        sweep_tables(sim, counts);
        sweep_discovery(sim, counts);
    }
    r.pass = counts.loop_violations == 0 && counts.local_violations == 0 &&
             counts.disjoint_violations == 0 && counts.beta_violations == 0 &&
             counts.marked_violations == 0 && watch.seconds() < 60.0;
    std::ostringstream detail;
    detail << counts.discoveries << "/500 discoveries completed; violations: loop="
           << counts.loop_violations << " bound=" << counts.local_violations
           << " disjoint=" << counts.disjoint_violations << " beta=" << counts.beta_violations
           << " marked=" << counts.marked_violations;
    r.detail = detail.str();
    r.seconds = watch.seconds();
    return r;
}

// ---------------------------------------------------------------------------
// 5. determinism

CriterionResult criterion_determinism() {
    Stopwatch watch;
    CriterionResult r{5, "identical seed twice gives byte-identical summary and traces"};
    Scenario s = parse_scenario("{}");
    s.node_count = 20;
    s.duration_s = 60.0;
    s.seeds = {42};
    ExperimentPlan plan;
    plan.scenario = s;
    plan.protocols = {ProtocolMode::AomrLm, ProtocolMode::Aomdv};
    plan.options.trace_messages = true;
    plan.options.trace_positions = true;
    const ExperimentOutcome a = run_experiment(plan);
    const ExperimentOutcome b = run_experiment(plan);
    bool ok = a.summary_csv == b.summary_csv && a.failures == 0 && b.failures == 0;
    for (std::size_t i = 0; ok && i < a.runs.size(); ++i) {
        ok = a.runs[i].result.message_trace == b.runs[i].result.message_trace &&
             a.runs[i].result.position_trace == b.runs[i].result.position_trace;
    }
    r.pass = ok;
    r.detail = ok ? "summary CSV and both trace kinds identical across executions"
                  : "outputs differ between consecutive executions";
    r.seconds = watch.seconds();
    return r;
}

// ---------------------------------------------------------------------------
// 4, 6, 7. the A/B study plus the checks that ride on it

struct AbOutcome {
    CriterionResult conservation{4, "energy conservation within 1e-9 in every run"};
    CriterionResult directional{6, "directional reproduction: lifetime, energy, delay"};
    CriterionResult class_order{7, "every data packet leaves on the top stored class"};
};

AbOutcome criterion_ab_study() {
    Stopwatch watch;
    AbOutcome out;

    Scenario s = parse_scenario("{}");
    s.node_count = 50;
    s.duration_s = 300.0;
    // Batteries sized so sustained relaying exhausts a low-draw battery
    // within the run while idle beaconing alone does not; the standard
    // 10..60 J default never exhausts anyone in 300 s.
    s.energy_init_min = 0.3;
    s.energy_init_max = 1.2;
    s.seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};

    ExperimentPlan plan;
    plan.scenario = s;
    plan.protocols = {ProtocolMode::AomrLm, ProtocolMode::Aomdv};
    plan.jobs = 4;
    const ExperimentOutcome outcome = run_experiment(plan);

    // 4: conservation over every run
    double worst_ledger = 0.0;
    double worst_cross = 0.0;
    for (const ExperimentRun& run : outcome.runs) {
        worst_ledger = std::max(worst_ledger, run.result.ledger_error);
        worst_cross = std::max(worst_cross, run.result.cross_ledger_error);
    }
    out.conservation.pass =
        outcome.failures == 0 && worst_ledger <= 1e-9 && worst_cross <= 1e-9;
    {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "worst per-node error %.2e, worst ledger split %.2e",
                      worst_ledger, worst_cross);
        out.conservation.detail = buf;
    }

    // 6: directional comparison on identical worlds
    std::map<std::uint64_t, const ExperimentRun*> aomr, aomdv;
    for (const ExperimentRun& run : outcome.runs) {
        (run.protocol == ProtocolMode::AomrLm ? aomr : aomdv)[run.seed] = &run;
    }
    int lifetime_wins = 0;
    double energy_a = 0.0, energy_b = 0.0, delay_a = 0.0, delay_b = 0.0;
    int delay_runs_a = 0, delay_runs_b = 0;
    for (std::uint64_t seed : s.seeds) {
        const RunSummary& ra = aomr[seed]->result.summary;
        const RunSummary& rb = aomdv[seed]->result.summary;
        if (ra.lifetime_or_duration() >= rb.lifetime_or_duration()) {
            ++lifetime_wins;
        }
        energy_a += ra.mean_energy;
        energy_b += rb.mean_energy;
        if (ra.mean_delay) {
            delay_a += *ra.mean_delay;
            ++delay_runs_a;
        }
        if (rb.mean_delay) {
            delay_b += *rb.mean_delay;
            ++delay_runs_b;
        }
    }
    energy_a /= 10.0;
    energy_b /= 10.0;
    delay_a = delay_runs_a ? delay_a / delay_runs_a : 0.0;
    delay_b = delay_runs_b ? delay_b / delay_runs_b : 0.0;
    const bool a_ok = lifetime_wins >= 8;
    const bool b_ok = energy_a <= energy_b;
    const bool c_ok = delay_a <= 1.1 * delay_b;
    out.directional.pass = a_ok && b_ok && c_ok && outcome.failures == 0;
    {
        char buf[256];
        std::snprintf(buf, sizeof(buf),
                      "(a) lifetime(3) wins %d/10 (need 8); (b) energy %.4f vs %.4f J; "
                      "(c) delay %.4f vs %.4f s (ratio %.3f, cap 1.1)",
                      lifetime_wins, energy_a, energy_b, delay_a, delay_b,
                      delay_b > 0 ? delay_a / delay_b : 0.0);
        out.directional.detail = buf;
    }

    // 7: class-order property across the same runs
    std::uint64_t violations = 0;
    for (const ExperimentRun& run : outcome.runs) {
        if (run.protocol == ProtocolMode::AomrLm) {
            violations += run.result.totals.class_order_violations;
        }
    }
    out.class_order.pass = violations == 0 && outcome.failures == 0;
    out.class_order.detail = "violations=" + std::to_string(violations);

    const double elapsed = watch.seconds();
    out.conservation.seconds = elapsed;
    out.directional.seconds = elapsed;
    out.class_order.seconds = elapsed;
    out.directional.pass = out.directional.pass && elapsed < 300.0;
    return out;
}

// ---------------------------------------------------------------------------
// 8. maintenance fixture

CriterionResult criterion_maintenance() {
    Stopwatch watch;
    CriterionResult r{8, "drained relay: 3 misses, failover to the alternate, no new flood"};

    Scenario s = parse_scenario(R"({
        "node_count": 4,
        "max_speed_mps": 0,
        "duration_s": 30,
        "flows": [{"source": 0, "destination": 3}]
    })");
    Simulation::Options opts;
    // diamond: 0 -- {1,2} -- 3, endpoints out of each other's range
    opts.fixed_positions = {{0.0, 0.0}, {200.0, 100.0}, {200.0, -100.0}, {400.0, 0.0}};
    opts.fixed_energies = {10.0, 10.0, 10.0, 10.0};
    Simulation sim(s, 1, ProtocolMode::AomrLm, opts);

    std::ostringstream detail;
    bool ok = true;

    // Drain early enough that the idle alternate is still within its route
    // lifetime when the failure lands (entries expire after 10 s of disuse).
    sim.run_until(5.1);
    const SourcePathSet* set = sim.node(0).path_set(3);
    if (!set || !set->active || set->active->nexthop != 1 || set->routes.size() != 2) {
        ok = false;
        detail << "setup: expected two stored paths with node 1 active; ";
    }
    const std::uint64_t delivered_before = sim.metrics().delivered_count;

    sim.world().drain(1, sim.now()); // the relay on the active path dies
    sim.run_until(7.5);
    if (sim.node(0).miss_count(1) != 1) {
        ok = false;
        detail << "miss count at 7.5 was " << sim.node(0).miss_count(1) << " not 1; ";
    }
    sim.run_until(8.5);
    if (sim.node(0).miss_count(1) != 2) {
        ok = false;
        detail << "miss count at 8.5 was " << sim.node(0).miss_count(1) << " not 2; ";
    }
    sim.run_until(9.5); // third miss at t=9 declares the failure
    if (sim.node(0).counters().link_failures != 1) {
        ok = false;
        detail << "no link failure declared by 9.5; ";
    }
    set = sim.node(0).path_set(3);
    if (!set || !set->active || set->active->nexthop != 2) {
        ok = false;
        detail << "no failover to the stored alternate; ";
    }
    const RunResult result = sim.run();
    if (result.totals.floods_initiated != 1) {
        ok = false;
        detail << "rediscovery flooded (" << result.totals.floods_initiated << " floods); ";
    }
    if (result.summary.delivered <= delivered_before) {
        ok = false;
        detail << "no deliveries after the failover; ";
    }
    r.pass = ok && watch.seconds() < 1.0;
    if (detail.str().empty()) {
        detail << "3 misses at t=7..9, failover to node 2, 1 flood total, traffic resumed";
    }
    r.detail = detail.str();
    r.seconds = watch.seconds();
    return r;
}

} // namespace

int main() {
    std::vector<CriterionResult> results;
    results.push_back(criterion_alpha_table());
    results.push_back(criterion_energy_oracle());
    results.push_back(criterion_invariants());
    const AbOutcome ab = criterion_ab_study();
    results.push_back(ab.conservation);
    results.push_back(criterion_determinism());
    results.push_back(ab.directional);
    results.push_back(ab.class_order);
    results.push_back(criterion_maintenance());

    std::sort(results.begin(), results.end(),
              [](const CriterionResult& a, const CriterionResult& b) { return a.id < b.id; });
    int failed = 0;
    for (const CriterionResult& r : results) {
        std::printf("criterion %d: %-66s %s (%.2f s)\n    %s\n", r.id, r.name.c_str(),
                    r.pass ? "PASS" : "FAIL", r.seconds, r.detail.c_str());
        if (!r.pass) {
            ++failed;
        }
    }
    std::printf("acceptance: %zu/%zu criteria passed\n", results.size() - failed, results.size());
    return failed == 0 ? 0 : 1;
}
