#pragma once

#include "manetsim/engine.hpp"
#include "manetsim/protocol.hpp"
#include "manetsim/rng.hpp"
#include "manetsim/scenario.hpp"
#include "manetsim/traffic.hpp"
#include "manetsim/world.hpp"

#include <memory>
#include <string>
#include <vector>

namespace manetsim {

struct RunResult {
    RunSummary summary;
    std::vector<std::pair<NodeId, Seconds>> exhaustions;
    std::vector<std::pair<Seconds, Joules>> energy_samples; // cumulative consumed, 1 s grid
    NodeCounters totals;        // protocol counters summed over nodes
    double ledger_error = 0.0;  // worst per-node |initial - residual - consumed| / initial
    double cross_ledger_error = 0.0; // metrics account vs world account
    std::string message_trace;
    std::string position_trace;
};

struct SimulationOptions {
    bool trace_messages = false;
    bool trace_positions = false;
    // Scripted fixtures: when non-empty these replace the seeded draws.
    std::vector<Position> fixed_positions;
    std::vector<Joules> fixed_energies;
};

// One protocol run on one seeded world. Single-threaded; distinct runs share
// nothing, so a sweep may construct many of these in parallel.
class Simulation {
public:
    using Options = SimulationOptions;

    Simulation(const Scenario& scenario, std::uint64_t seed, ProtocolMode mode,
               Options options = SimulationOptions());

    /// Run to the scenario duration and summarize.
    RunResult run();

    /// Advance the clock partway; used by scripted fixtures.
    void run_until(Seconds t);
    RunResult finish();

    Seconds now() const { return engine_.now(); }
    World& world() { return *world_; }
    const World& world() const { return *world_; }
    ProtocolNode& node(NodeId id) { return nodes_[id]; }
    const ProtocolNode& node(NodeId id) const { return nodes_[id]; }
    std::uint32_t node_count() const { return static_cast<std::uint32_t>(nodes_.size()); }
    const std::vector<CbrFlow>& flows() const { return flows_; }
    const MetricsLedger& metrics() const { return metrics_; }

private:
    void dispatch(const Event& event);
    void execute(NodeId actor, std::vector<Action>&& actions);
    void transmit(NodeId actor, const ProtocolMessage& message, TxMode mode, NodeId target);
    void trace_message(const char* verb, NodeId node, NodeId peer, const ProtocolMessage& msg);

    Scenario scenario_;
    std::uint64_t seed_;
    ProtocolMode mode_;
    Options options_;

    Engine engine_;
    std::unique_ptr<World> world_;
    std::vector<ProtocolNode> nodes_;
    std::vector<CbrFlow> flows_;
    MetricsLedger metrics_;
    std::mt19937_64 traffic_rng_;
    std::uint64_t next_packet_id_ = 0;
    std::string message_trace_;
    std::string position_trace_;
    std::vector<std::pair<Seconds, Joules>> energy_samples_;
};

} // namespace manetsim
