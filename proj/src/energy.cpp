#include "manetsim/energy.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace manetsim::energy {

const char* to_string(NodeClass c) {
    switch (c) {
    case NodeClass::Low: return "low";
    case NodeClass::Average: return "average";
    case NodeClass::High: return "high";
    }
    return "?";
}

Joules path_energy_sum(const PathEnergySummary& path) {
    assert(path.node_count() >= 2);
    Joules sum = 0.0;
    for (Joules w : path.node_energies) {
        sum += w;
    }
    return sum;
}

Joules path_energy_average(const PathEnergySummary& path) {
    return path_energy_sum(path) / static_cast<double>(path.node_count());
}

Joules discovery_energy_average(std::span<const PathEnergySummary> paths) {
    if (paths.empty()) {
        throw std::invalid_argument("no discovery paths");
    }
    Joules total = 0.0;
    std::size_t nodes = 0;
    for (const PathEnergySummary& p : paths) {
        total += path_energy_sum(p);
        nodes += p.node_count();
    }
    return total / static_cast<double>(nodes);
}

double node_energy_level(Joules residual, Joules e_average_net) {
    if (e_average_net <= 0.0) {
        throw std::invalid_argument("degenerate discovery average");
    }
    return residual / e_average_net;
}

NodeClass classify_node(double level, double alpha) {
    assert(alpha > 0.0 && alpha < 1.0);
    assert(level >= 0.0);
    if (level < alpha) {
        return NodeClass::Low;
    }
    if (level < 1.0) {
        return NodeClass::Average;
    }
    return NodeClass::High;
}

double alpha_lower_bound(const AlphaPolicy& policy) {
    assert(policy.t_net > 0.0 && policy.t_net < 1.0);
    assert(policy.k_nodes >= 1);
    return std::pow(policy.t_net, 1.0 / static_cast<double>(policy.k_nodes));
}

double alpha_upper_bound(Joules beta, Joules residual) {
    if (residual <= 0.0) {
        throw std::invalid_argument("exhausted node has no bound");
    }
    return beta / residual;
}

Seconds packet_airtime(const RadioEnergyProfile& profile, std::uint64_t packet_bits) {
    assert(profile.valid());
    assert(packet_bits > 0);
    return static_cast<double>(packet_bits) / profile.bitrate_bps;
}

Joules tx_energy(const RadioEnergyProfile& profile, std::uint64_t packet_bits) {
    return profile.tx_power_w * packet_airtime(profile, packet_bits);
}

Joules rx_energy(const RadioEnergyProfile& profile, std::uint64_t packet_bits) {
    return profile.rx_power_w * packet_airtime(profile, packet_bits);
}

} // namespace manetsim::energy
