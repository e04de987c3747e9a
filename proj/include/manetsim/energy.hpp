#pragma once

#include "manetsim/types.hpp"

#include <span>
#include <vector>

namespace manetsim::energy {

// Node classes ordered by energy standing. The numeric values matter:
// comparisons below rely on Low < Average < High.
enum class NodeClass : int { Low = 0, Average = 1, High = 2 };

const char* to_string(NodeClass c);

// Radio characteristics used for per-packet energy and airtime. The default
// values model a 2 Mbit/s shared-media radio drawing 281.8 mW in both
// directions.
struct RadioEnergyProfile {
    double tx_power_w = 0.2818;
    double rx_power_w = 0.2818;
    double bitrate_bps = 2e6;

    bool valid() const { return tx_power_w > 0 && rx_power_w > 0 && bitrate_bps > 0; }
};

// Classification thresholds. alpha separates Low from Average; t_net and
// k_nodes define the lower bound alpha may take (alpha_lower_bound).
struct AlphaPolicy {
    double alpha = 0.42;
    double t_net = 0x1.0p-40; // 2^-40
    int k_nodes = 35;
};

// Residual energies of every node on one path, source through destination.
struct PathEnergySummary {
    std::vector<Joules> node_energies;

    std::size_t node_count() const { return node_energies.size(); }
};

/// Sum of residual energies along a path. Left-to-right fold so results are
/// bit-reproducible against an oracle using the same order.
Joules path_energy_sum(const PathEnergySummary& path);

/// Mean residual energy of the nodes on one path.
Joules path_energy_average(const PathEnergySummary& path);

/// Mean residual energy over every node seen in a multipath discovery:
/// (sum of all path sums) / (sum of all path node counts). A node on several
/// paths is counted once per path. Throws std::invalid_argument("no
/// discovery paths") on an empty set.
Joules discovery_energy_average(std::span<const PathEnergySummary> paths);

/// Residual energy of one node relative to the discovery-wide average.
/// Throws std::invalid_argument("degenerate discovery average") when the
/// average is zero.
double node_energy_level(Joules residual, Joules e_average_net);

/// Class assignment: level < alpha -> Low; alpha <= level < 1 -> Average;
/// level >= 1 -> High. The boundary level == alpha is Average ("below alpha"
/// defines Low strictly).
NodeClass classify_node(double level, double alpha);

/// Smallest admissible alpha for a given participation factor and node
/// count: t_net^(1/k_nodes).
double alpha_lower_bound(const AlphaPolicy& policy);

/// Ratio bound beta / residual. Exceeds 1 (and is vacuous) whenever the
/// node's residual is below beta; exposed for analysis tooling. Throws
/// std::invalid_argument("exhausted node has no bound") when residual is 0.
double alpha_upper_bound(Joules beta, Joules residual);

/// Time on air for one packet.
Seconds packet_airtime(const RadioEnergyProfile& profile, std::uint64_t packet_bits);

/// Energy to transmit one packet: tx_power * packet_bits / bitrate.
/// packet_bits must be positive.
Joules tx_energy(const RadioEnergyProfile& profile, std::uint64_t packet_bits);

/// Energy to receive one packet: rx_power * packet_bits / bitrate.
Joules rx_energy(const RadioEnergyProfile& profile, std::uint64_t packet_bits);

} // namespace manetsim::energy
