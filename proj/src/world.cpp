#include "manetsim/world.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace manetsim {

double distance(const Position& a, const Position& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

World::World(Config config, std::mt19937_64 mobility_rng, std::mt19937_64 mac_rng)
    : config_(std::move(config)), mobility_rng_(mobility_rng), mac_rng_(mac_rng) {}

NodeId World::add_node(Position initial, Joules initial_energy) {
    assert(initial_energy >= 0.0);
    NodeState state;
    state.motion = fresh_leg(initial, 0.0);
    state.initial = initial_energy;
    state.residual = initial_energy;
    state.alive = initial_energy > 0.0;
    nodes_.push_back(state);
    return static_cast<NodeId>(nodes_.size() - 1);
}

Position World::draw_position() {
    // x then y, always in this order, so draws are reproducible.
    const double x = uniform_double(mobility_rng_, 0.0, config_.terrain.width);
    const double y = uniform_double(mobility_rng_, 0.0, config_.terrain.height);
    return Position{x, y};
}

MobilityState World::fresh_leg(Position from, Seconds now) {
    MobilityState m;
    m.anchor = from;
    m.anchor_time = now;
    m.waypoint = draw_position();
    m.speed = uniform_double(mobility_rng_, 0.0, config_.max_speed_mps);
    m.pause_until = now;
    return m;
}

Position mobility_position(const MobilityState& m, Seconds now) {
    const Seconds start = std::max(m.anchor_time, m.pause_until);
    if (now <= start || m.speed <= 0.0) {
        return m.anchor;
    }
    const double total = distance(m.anchor, m.waypoint);
    if (total <= 0.0) {
        return m.anchor;
    }
    const double travelled = std::min(m.speed * (now - start), total);
    const double f = travelled / total;
    return Position{m.anchor.x + f * (m.waypoint.x - m.anchor.x),
                    m.anchor.y + f * (m.waypoint.y - m.anchor.y)};
}

Position World::position(NodeId n, Seconds now) const {
    return mobility_position(nodes_[n].motion, now);
}

Seconds World::waypoint_update(NodeId n, Seconds now) {
    MobilityState& m = nodes_[n].motion;
    const Position here = position(n, now);
    const bool at_waypoint = distance(here, m.waypoint) <= 1e-9;
    m.anchor = here;
    m.anchor_time = now;
    if (at_waypoint && m.speed > 0.0 && config_.pause_s > 0.0) {
        // Arrived: sit out the pause before the next leg.
        m.speed = 0.0;
        m.pause_until = now + config_.pause_s;
    } else if ((at_waypoint || m.speed <= 0.0) && now >= m.pause_until) {
        m = fresh_leg(here, now);
    }
    return now + config_.mobility_update_period;
}

bool World::in_range(NodeId a, NodeId b, Seconds now) const {
    return distance(position(a, now), position(b, now)) <= config_.range_m;
}

std::vector<NodeId> World::neighbors(NodeId n, Seconds now) const {
    std::vector<NodeId> out;
    const Position here = position(n, now);
    for (NodeId other = 0; other < nodes_.size(); ++other) {
        if (other == n || !nodes_[other].alive) {
            continue;
        }
        if (distance(here, position(other, now)) <= config_.range_m) {
            out.push_back(other);
        }
    }
    return out;
}

std::vector<World::Delivery> World::transmit(NodeId sender, std::uint32_t packet_bytes,
                                             TxMode mode, NodeId target, Seconds now) {
    assert(nodes_[sender].alive);
    const std::uint64_t bits = static_cast<std::uint64_t>(packet_bytes) * 8;
    debit(sender, energy::tx_energy(config_.radio, bits), now);

    std::vector<NodeId> receivers;
    if (mode == TxMode::Broadcast) {
        receivers = neighbors(sender, now);
    } else if (target != kNoNode && nodes_[target].alive && in_range(sender, target, now)) {
        receivers.push_back(target);
    }

    const Seconds base = energy::packet_airtime(config_.radio, bits) + config_.mac.per_hop_delay_base;
    std::vector<Delivery> out;
    out.reserve(receivers.size());
    for (NodeId to : receivers) {
        const Seconds jitter = uniform_double(mac_rng_, 0.0, config_.mac.per_hop_jitter);
        if (config_.mac.loss_probability > 0.0 &&
            uniform_double(mac_rng_, 0.0, 1.0) < config_.mac.loss_probability) {
            continue;
        }
        out.push_back(Delivery{to, now + base + jitter});
    }
    return out;
}

bool World::deliver(NodeId receiver, std::uint32_t packet_bytes, Seconds now) {
    if (!nodes_[receiver].alive) {
        return false;
    }
    const std::uint64_t bits = static_cast<std::uint64_t>(packet_bytes) * 8;
    debit(receiver, energy::rx_energy(config_.radio, bits), now);
    return true;
}

void World::debit(NodeId n, Joules amount, Seconds now) {
    NodeState& node = nodes_[n];
    assert(node.alive);
    const Joules applied = std::min(amount, node.residual);
    node.residual -= applied;
    node.consumed += applied;
    if (debit_hook_) {
        debit_hook_(n, applied);
    }
    if (node.residual <= 0.0) {
        node.residual = 0.0;
        node.alive = false;
        exhaustions_.emplace_back(n, now);
        if (exhaustion_hook_) {
            exhaustion_hook_(n, now);
        }
    }
}

void World::drain(NodeId n, Seconds now) {
    if (nodes_[n].alive) {
        debit(n, nodes_[n].residual + 1.0, now);
    }
}

double World::ledger_error() const {
    double worst = 0.0;
    for (const NodeState& node : nodes_) {
        if (node.initial <= 0.0) {
            continue;
        }
        const double err = std::abs(node.initial - node.residual - node.consumed) / node.initial;
        worst = std::max(worst, err);
    }
    return worst;
}

} // namespace manetsim
