#pragma once

#include "manetsim/energy.hpp"
#include "manetsim/protocol.hpp"
#include "manetsim/traffic.hpp"
#include "manetsim/types.hpp"
#include "manetsim/world.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace manetsim {

// Flow specification: either an explicit list or "random:k" (k uniformly
// drawn source/destination pairs per run).
struct RandomFlows {
    std::uint32_t count = 1;
    double rate_pps = 4.0;
    std::uint32_t payload_bytes = 512;
    bool operator==(const RandomFlows&) const = default;
};

struct FlowSpec {
    NodeId source = kNoNode;
    NodeId destination = kNoNode;
    double rate_pps = 4.0;
    std::uint32_t payload_bytes = 512;
    Seconds start = 0.0;
    Seconds stop = -1.0; // -1 = run duration
    bool operator==(const FlowSpec&) const = default;
};

// Full description of one experiment. Every field has the standard default,
// so an empty scenario file is valid and runnable as-is.
struct Scenario {
    int schema = 1;
    std::uint32_t node_count = 50;
    TerrainSize terrain;             // 840 x 840 m
    double range_m = 250.0;
    double max_speed_mps = 5.0;
    Seconds pause_s = 0.0;
    Seconds duration_s = 300.0;
    ProtocolMode protocol = ProtocolMode::AomrLm;
    double alpha = 0.42;
    double t_net = 0x1.0p-40;
    int k_nodes = 35;
    Seconds rreq_wait_s = 1.0;
    Seconds rrep_wait_s = 1.0;
    Seconds hello_interval_s = 1.0;
    std::uint32_t lifetime_n = 0;    // 0 = ceil(5% of node_count)
    std::vector<std::uint64_t> seeds = {1};
    Joules energy_init_min = 10.0;
    Joules energy_init_max = 60.0;
    energy::RadioEnergyProfile radio;
    MacProfile mac;
    std::variant<RandomFlows, std::vector<FlowSpec>> flows = RandomFlows{};

    std::uint32_t effective_lifetime_n() const;
    ProtocolConfig protocol_config() const;
    World::Config world_config() const;

    bool operator==(const Scenario&) const;
};

/// Parse a scenario from JSON text. Unknown or ill-typed fields throw
/// ScenarioError naming the offending field; absent fields keep defaults.
Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario(const std::string& path);
std::string serialize_scenario(const Scenario& s);

/// Validate field ranges; throws ScenarioError naming the field.
void validate_scenario(const Scenario& s);

struct ScenarioError : std::runtime_error {
    explicit ScenarioError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace manetsim
