#pragma once

#include "manetsim/energy.hpp"
#include "manetsim/rng.hpp"
#include "manetsim/types.hpp"

#include <functional>
#include <optional>
#include <random>
#include <vector>

namespace manetsim {

struct Position {
    double x = 0.0;
    double y = 0.0;
};

double distance(const Position& a, const Position& b);

// Random-waypoint motion state. The node sits at `anchor` at `anchor_time`
// and moves toward `waypoint` at `speed`; position at any later instant is
// interpolated on demand, so the update period only bounds how late a
// waypoint arrival is noticed.
struct MobilityState {
    Position anchor;
    Seconds anchor_time = 0.0;
    Position waypoint;
    double speed = 0.0; // m/s
    Seconds pause_until = 0.0;
};

/// Straight-line position along the motion segment at time `now`, clamped at
/// the waypoint.
Position mobility_position(const MobilityState& m, Seconds now);

// Simplified contention-free MAC: per-hop delay is airtime + base + uniform
// jitter, optional Bernoulli loss. Default jitter keeps simultaneous events
// apart without modelling contention.
struct MacProfile {
    Seconds per_hop_delay_base = 0.0;
    Seconds per_hop_jitter = 0.001;
    double loss_probability = 0.0;
};

struct TerrainSize {
    double width = 840.0;
    double height = 840.0;
};

enum class TxMode { Broadcast, Unicast };

// Physical layer of the simulation: node positions and motion, unit-disk
// connectivity, per-packet energy debits with an exact ledger, and
// exhaustion tracking. Owned by a single run; not thread-safe.
class World {
public:
    struct Config {
        TerrainSize terrain;
        double range_m = 250.0;
        double max_speed_mps = 5.0;
        Seconds pause_s = 0.0;
        Seconds mobility_update_period = 0.1;
        energy::RadioEnergyProfile radio;
        MacProfile mac;
    };

    struct Delivery {
        NodeId to = kNoNode;
        Seconds deliver_at = 0.0;
    };

    World(Config config, std::mt19937_64 mobility_rng, std::mt19937_64 mac_rng);

    const Config& config() const { return config_; }
    std::size_t node_count() const { return nodes_.size(); }

    NodeId add_node(Position initial, Joules initial_energy);

    bool alive(NodeId n) const { return nodes_[n].alive; }
    Joules residual(NodeId n) const { return nodes_[n].residual; }
    Joules initial_energy(NodeId n) const { return nodes_[n].initial; }
    Joules consumed(NodeId n) const { return nodes_[n].consumed; }

    /// Position interpolated along the current motion segment.
    Position position(NodeId n, Seconds now) const;

    /// Alive nodes within the transmission range (boundary inclusive),
    /// excluding the node itself.
    std::vector<NodeId> neighbors(NodeId n, Seconds now) const;

    bool in_range(NodeId a, NodeId b, Seconds now) const;

    /// Advance the node's motion; on waypoint arrival draw a fresh waypoint
    /// and speed (after the configured pause). Returns the time of the next
    /// mobility update.
    Seconds waypoint_update(NodeId n, Seconds now);

    /// Charge the sender one tx debit and plan deliveries to every in-range
    /// receiver (or the single unicast target when in range). Receivers are
    /// charged on delivery, not here. Lost or out-of-range deliveries vanish
    /// silently.
    std::vector<Delivery> transmit(NodeId sender, std::uint32_t packet_bytes, TxMode mode,
                                   NodeId target, Seconds now);

    /// Apply the receive-side debit when a planned delivery fires. Returns
    /// false when the receiver died before the delivery arrived (the packet
    /// is gone). A node whose debit crosses zero still receives this packet.
    bool deliver(NodeId receiver, std::uint32_t packet_bytes, Seconds now);

    /// Test hook: drain the node's battery to zero immediately.
    void drain(NodeId n, Seconds now);

    const std::vector<std::pair<NodeId, Seconds>>& exhaustions() const { return exhaustions_; }

    /// Fires on every energy debit with (node, amount); used by the metrics
    /// ledger to keep an independent account.
    void set_debit_hook(std::function<void(NodeId, Joules)> hook) { debit_hook_ = std::move(hook); }

    /// Fires once per node when it exhausts.
    void set_exhaustion_hook(std::function<void(NodeId, Seconds)> hook) {
        exhaustion_hook_ = std::move(hook);
    }

    /// Largest relative ledger error |initial - residual - consumed| /
    /// initial over all nodes.
    double ledger_error() const;

private:
    struct NodeState {
        MobilityState motion;
        Joules initial = 0.0;
        Joules residual = 0.0;
        Joules consumed = 0.0;
        bool alive = true;
    };

    void debit(NodeId n, Joules amount, Seconds now);
    Position draw_position();
    MobilityState fresh_leg(Position from, Seconds now);

    Config config_;
    std::mt19937_64 mobility_rng_;
    std::mt19937_64 mac_rng_;
    std::vector<NodeState> nodes_;
    std::vector<std::pair<NodeId, Seconds>> exhaustions_;
    std::function<void(NodeId, Joules)> debit_hook_;
    std::function<void(NodeId, Seconds)> exhaustion_hook_;
};

} // namespace manetsim
