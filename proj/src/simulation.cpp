#include "manetsim/simulation.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace manetsim {

namespace {

constexpr Seconds kEnergySamplePeriod = 1.0;

std::string fmt_time(Seconds t) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6f", t);
    return buf;
}

} // namespace

Simulation::Simulation(const Scenario& scenario, std::uint64_t seed, ProtocolMode mode,
                       Options options)
    : scenario_(scenario), seed_(seed), mode_(mode), options_(options) {
    validate_scenario(scenario_);

    RngStream rng(seed);
    auto topology_rng = rng.substream("topology");
    auto energy_rng = rng.substream("energy-init");
    traffic_rng_ = rng.substream("traffic");

    world_ = std::make_unique<World>(scenario_.world_config(), rng.substream("mobility"),
                                     rng.substream("mac"));
    world_->set_debit_hook([this](NodeId n, Joules j) { metrics_.record_debit(n, j); });
    world_->set_exhaustion_hook([this](NodeId n, Seconds t) { metrics_.record_exhaustion(n, t); });

    // Draw order is fixed: positions for every node, then energies, then any
    // random flow endpoints, so both protocol arms see the same world.
    std::vector<Position> positions = options_.fixed_positions;
    if (positions.empty()) {
        positions.reserve(scenario_.node_count);
        for (std::uint32_t i = 0; i < scenario_.node_count; ++i) {
            positions.push_back(Position{
                uniform_double(topology_rng, 0.0, scenario_.terrain.width),
                uniform_double(topology_rng, 0.0, scenario_.terrain.height)});
        }
    }
    if (positions.size() != scenario_.node_count) {
        throw ScenarioError("scenario field 'node_count': does not match the fixed positions");
    }
    std::vector<Joules> energies = options_.fixed_energies;
    if (energies.empty()) {
        energies.reserve(scenario_.node_count);
        for (std::uint32_t i = 0; i < scenario_.node_count; ++i) {
            energies.push_back(
                uniform_double(energy_rng, scenario_.energy_init_min, scenario_.energy_init_max));
        }
    }
    if (energies.size() != scenario_.node_count) {
        throw ScenarioError("scenario field 'node_count': does not match the fixed energies");
    }

    ProtocolConfig pcfg = scenario_.protocol_config();
    pcfg.mode = mode_;
    nodes_.reserve(scenario_.node_count);
    for (std::uint32_t i = 0; i < scenario_.node_count; ++i) {
        world_->add_node(positions[i], energies[i]);
        nodes_.emplace_back(static_cast<NodeId>(i), pcfg);
    }

    if (const RandomFlows* rf = std::get_if<RandomFlows>(&scenario_.flows)) {
        for (std::uint32_t k = 0; k < rf->count; ++k) {
            const NodeId src = static_cast<NodeId>(uniform_index(topology_rng, scenario_.node_count));
            NodeId dst = src;
            while (dst == src) {
                dst = static_cast<NodeId>(uniform_index(topology_rng, scenario_.node_count));
            }
            CbrFlow flow;
            flow.source = src;
            flow.destination = dst;
            flow.rate_pps = rf->rate_pps;
            flow.payload_bytes = rf->payload_bytes;
            flow.start = 0.0;
            flow.stop = scenario_.duration_s;
            flows_.push_back(flow);
        }
    } else {
        for (const FlowSpec& spec : std::get<std::vector<FlowSpec>>(scenario_.flows)) {
            CbrFlow flow;
            flow.source = spec.source;
            flow.destination = spec.destination;
            flow.rate_pps = spec.rate_pps;
            flow.payload_bytes = spec.payload_bytes;
            flow.start = spec.start;
            flow.stop = spec.stop < 0 ? scenario_.duration_s : spec.stop;
            flows_.push_back(flow);
        }
    }

    for (std::uint32_t i = 0; i < scenario_.node_count; ++i) {
        NodeEnv env{0.0, world_->residual(i)};
        execute(i, nodes_[i].start(env));
        engine_.schedule(world_->config().mobility_update_period, MobilityUpdate{i});
    }
    for (std::uint32_t f = 0; f < flows_.size(); ++f) {
        const CbrFlow& flow = flows_[f];
        nodes_[flow.source].register_flow(flow.destination);
        const Seconds offset = uniform_double(traffic_rng_, 0.0, flow.gap());
        engine_.schedule(flow.start + offset, TrafficTick{f});
    }
    engine_.schedule(kEnergySamplePeriod,
                     TimerFire{kNoNode, TimerKind{TimerKind::What::MetricsSample, kNoNode, 0}});
}

void Simulation::run_until(Seconds t) {
    engine_.run(t, [this](const Event& ev) { dispatch(ev); });
}

RunResult Simulation::run() {
    run_until(scenario_.duration_s);
    return finish();
}

RunResult Simulation::finish() {
    RunResult result;
    result.summary = summarize(metrics_, scenario_.effective_lifetime_n(), scenario_.duration_s);
    result.summary.seed = seed_;
    result.summary.protocol = to_string(mode_);
    result.summary.nodes = scenario_.node_count;
    result.exhaustions = metrics_.exhaustion_times;
    result.energy_samples = energy_samples_;
    for (const ProtocolNode& n : nodes_) {
        const NodeCounters& c = n.counters();
        result.totals.floods_initiated += c.floods_initiated;
        result.totals.rreqs_forwarded += c.rreqs_forwarded;
        result.totals.rreps_originated += c.rreps_originated;
        result.totals.rreps_forwarded += c.rreps_forwarded;
        result.totals.rerrs_sent += c.rerrs_sent;
        result.totals.link_failures += c.link_failures;
        result.totals.data_forwarded += c.data_forwarded;
        result.totals.buffer_drops += c.buffer_drops;
        result.totals.class_order_violations += c.class_order_violations;
        result.totals.marked_forward_violations += c.marked_forward_violations;
    }
    result.ledger_error = world_->ledger_error();

    Joules world_total = 0.0;
    for (NodeId n = 0; n < world_->node_count(); ++n) {
        world_total += world_->consumed(n);
    }
    const Joules metrics_total = metrics_.total_consumed();
    result.cross_ledger_error =
        world_total > 0.0 ? std::abs(world_total - metrics_total) / world_total : 0.0;
    result.message_trace = message_trace_;
    result.position_trace = position_trace_;
    return result;
}

void Simulation::dispatch(const Event& event) {
    const Seconds now = engine_.now();
    struct Visitor {
        Simulation& sim;
        Seconds now;

        void operator()(const PacketDelivery& d) {
            if (!sim.world_->alive(d.receiver)) {
                return; // died before the packet landed
            }
            sim.world_->deliver(d.receiver, wire_bytes(d.message), now);
            // A node that exhausts on this very reception still gets the
            // packet; any reaction that needs the radio is filtered later.
            if (sim.options_.trace_messages) {
                sim.trace_message("rx", d.receiver, d.from, d.message);
            }
            NodeEnv env{now, sim.world_->residual(d.receiver)};
            sim.execute(d.receiver, sim.nodes_[d.receiver].handle_delivery(d.from, d.message, env));
        }

        void operator()(const TimerFire& t) {
            if (t.timer.what == TimerKind::What::MetricsSample) {
                Joules total = 0.0;
                for (NodeId n = 0; n < sim.world_->node_count(); ++n) {
                    total += sim.world_->consumed(n);
                }
                sim.energy_samples_.emplace_back(now, total);
                if (now + kEnergySamplePeriod <= sim.scenario_.duration_s) {
                    sim.engine_.schedule(now + kEnergySamplePeriod, TimerFire{kNoNode, t.timer});
                }
                return;
            }
            if (!sim.world_->alive(t.node)) {
                return; // dead nodes neither beacon nor time out
            }
            NodeEnv env{now, sim.world_->residual(t.node)};
            sim.execute(t.node, sim.nodes_[t.node].handle_timer(t.timer, env));
        }

        void operator()(const MobilityUpdate& m) {
            // Motion continues even for exhausted nodes so that the mobility
            // stream stays identical across protocol arms of one seed.
            const Seconds next = sim.world_->waypoint_update(m.node, now);
            if (sim.options_.trace_positions) {
                const Position p = sim.world_->position(m.node, now);
                char line[96];
                std::snprintf(line, sizeof(line), "%.3f,%u,%.3f,%.3f\n", now, m.node, p.x, p.y);
                sim.position_trace_ += line;
            }
            if (next <= sim.scenario_.duration_s) {
                sim.engine_.schedule(next, MobilityUpdate{m.node});
            }
        }

        void operator()(const TrafficTick& t) {
            const CbrFlow& flow = sim.flows_[t.flow];
            if (now >= flow.stop) {
                return;
            }
            sim.metrics_.record_sent();
            if (sim.world_->alive(flow.source)) {
                DataPacket packet;
                packet.source = flow.source;
                packet.destination = flow.destination;
                packet.packet_id = sim.next_packet_id_++;
                packet.send_time = now;
                packet.payload_bytes = flow.payload_bytes;
                NodeEnv env{now, sim.world_->residual(flow.source)};
                sim.execute(flow.source, sim.nodes_[flow.source].send_data(packet, env));
            }
            const Seconds next = now + flow.gap();
            if (next < flow.stop) {
                sim.engine_.schedule(next, TrafficTick{t.flow});
            }
        }
    };
    std::visit(Visitor{*this, now}, event.kind);
}

void Simulation::execute(NodeId actor, std::vector<Action>&& actions) {
    const Seconds now = engine_.now();
    for (Action& action : actions) {
        if (auto* b = std::get_if<BroadcastAction>(&action)) {
            transmit(actor, b->message, TxMode::Broadcast, kNoNode);
        } else if (auto* u = std::get_if<UnicastAction>(&action)) {
            transmit(actor, u->message, TxMode::Unicast, u->to);
        } else if (auto* s = std::get_if<ScheduleTimerAction>(&action)) {
            if (world_->alive(actor)) {
                engine_.schedule(s->at, TimerFire{actor, s->timer});
            }
        } else if (auto* d = std::get_if<DataDeliveredAction>(&action)) {
            metrics_.record_delivery(d->packet.send_time, now);
        }
    }
}

void Simulation::transmit(NodeId actor, const ProtocolMessage& message, TxMode mode,
                          NodeId target) {
    if (!world_->alive(actor)) {
        return; // exhausted while handling the triggering event
    }
    const Seconds now = engine_.now();
    if (options_.trace_messages) {
        trace_message(mode == TxMode::Broadcast ? "tx-bcast" : "tx", actor, target, message);
    }
    for (const World::Delivery& d : world_->transmit(actor, wire_bytes(message), mode, target, now)) {
        engine_.schedule(d.deliver_at, PacketDelivery{d.to, actor, message});
    }
}

void Simulation::trace_message(const char* verb, NodeId node, NodeId peer,
                               const ProtocolMessage& msg) {
    message_trace_ += "[" + fmt_time(engine_.now()) + "] node " + std::to_string(node) + " " + verb;
    message_trace_ += " ";
    message_trace_ += message_name(msg);
    if (peer != kNoNode) {
        message_trace_ += " peer " + std::to_string(peer);
    }
    message_trace_ += "\n";
    message_trace_ += dump(msg);
}

} // namespace manetsim
