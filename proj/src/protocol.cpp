#include "manetsim/protocol.hpp"

#include <algorithm>
#include <cassert>

namespace manetsim {

using energy::NodeClass;

const char* to_string(ProtocolMode mode) {
    return mode == ProtocolMode::AomrLm ? "aomr-lm" : "aomdv";
}

ProtocolNode::ProtocolNode(NodeId id, ProtocolConfig config)
    : id_(id), config_(config), table_(config.route_lifetime) {}

std::vector<Action> ProtocolNode::start(const NodeEnv& env) {
    std::vector<Action> out;
    out.push_back(ScheduleTimerAction{env.now + config_.hello_interval,
                                      TimerKind{TimerKind::What::Hello, kNoNode, 0}});
    return out;
}

const SourcePathSet* ProtocolNode::path_set(NodeId dest) const {
    auto it = path_sets_.find(dest);
    return it == path_sets_.end() ? nullptr : &it->second;
}

int ProtocolNode::miss_count(NodeId neighbor) const {
    auto it = hello_misses_.find(neighbor);
    return it == hello_misses_.end() ? 0 : it->second;
}

NodeClass ProtocolNode::classify(Joules residual, Joules beta) const {
    return energy::classify_node(energy::node_energy_level(residual, beta), config_.alpha);
}

// ---------------------------------------------------------------------------
// dispatch

std::vector<Action> ProtocolNode::handle_delivery(NodeId from, const ProtocolMessage& message,
                                                  const NodeEnv& env) {
    struct Visitor {
        ProtocolNode& self;
        NodeId from;
        const NodeEnv& env;
        std::vector<Action> operator()(const RreqMessage& m) { return self.handle_rreq(from, m, env); }
        std::vector<Action> operator()(const RrepMessage& m) { return self.handle_rrep(from, m, env); }
        std::vector<Action> operator()(const RerrMessage& m) { return self.handle_rerr(from, m, env); }
        std::vector<Action> operator()(const HelloMessage&) { return self.handle_hello(from, env); }
        std::vector<Action> operator()(const DataPacket& m) { return self.handle_data(from, m, env); }
    };
    return std::visit(Visitor{*this, from, env}, message);
}

std::vector<Action> ProtocolNode::handle_timer(const TimerKind& timer, const NodeEnv& env) {
    switch (timer.what) {
    case TimerKind::What::Hello:
        return hello_tick(env);
    case TimerKind::What::DiscoveryWindow:
        return destination_reply(timer.peer, timer.generation, env);
    case TimerKind::What::RrepDeadline:
        return rrep_deadline_fired(timer.peer, timer.generation, env);
    case TimerKind::What::DiscoveryTimeout: {
        auto it = pending_.find(timer.peer);
        if (it != pending_.end() && it->second.generation == timer.generation) {
            pending_.erase(it); // discovery came up empty; the next packet retries
        }
        return {};
    }
    }
    return {};
}

// ---------------------------------------------------------------------------
// route request flood

namespace {

DiscoveryCopy make_copy(NodeId from, const RreqMessage& msg, Joules own_residual) {
    DiscoveryCopy copy;
    copy.reverse_nexthop = from;
    copy.hopcount = msg.hopcount + 1;
    // The accumulated field covers source..transmitter; the destination adds
    // itself so the copy spans the whole path, endpoints included.
    copy.e_sum = msg.e_sum_so_far + own_residual;
    copy.node_count = msg.hopcount + 2;
    return copy;
}

} // namespace

std::vector<Action> ProtocolNode::handle_rreq(NodeId from, RreqMessage msg, const NodeEnv& env) {
    std::vector<Action> out;
    if (msg.source == id_) {
        return out; // our own flood echoed back
    }

    RouteEntry& entry = table_.obtain(msg.source, env.now);
    const bool newer = !entry.seq_known || entry.sequence_number < msg.source_seqnum;
    const bool same = entry.seq_known && entry.sequence_number == msg.source_seqnum;

    if (id_ == msg.destination) {
        // Destination side: every copy of the live discovery that lands
        // inside the collection window counts; late or stale copies vanish.
        if (newer) {
            entry.sequence_number = msg.source_seqnum;
            entry.seq_known = true;
            entry.advertised_hopcount.reset();
            entry.announced_hopcount.reset();
            entry.route_list.clear();
            entry.upsert(from, msg.hopcount + 1, msg.sender_energy);

            DiscoveryContext ctx;
            ctx.source = msg.source;
            ctx.source_seqnum = msg.source_seqnum;
            ctx.window_deadline = env.now + config_.rreq_wait;
            ctx.generation = ++next_generation_;
            ctx.collected.push_back(make_copy(from, msg, env.residual_energy));
            discoveries_[msg.source] = ctx;
            out.push_back(ScheduleTimerAction{
                ctx.window_deadline,
                TimerKind{TimerKind::What::DiscoveryWindow, msg.source, ctx.generation}});
        } else if (same) {
            auto it = discoveries_.find(msg.source);
            if (it != discoveries_.end() && it->second.source_seqnum == msg.source_seqnum &&
                env.now <= it->second.window_deadline) {
                entry.upsert(from, msg.hopcount + 1, msg.sender_energy);
                it->second.collected.push_back(make_copy(from, msg, env.residual_energy));
            }
        }
        return out;
    }

    if (newer) {
        entry.sequence_number = msg.source_seqnum;
        entry.seq_known = true;
        entry.advertised_hopcount.reset();
        entry.announced_hopcount.reset();
        entry.route_list.clear();
        entry.upsert(from, msg.hopcount + 1, msg.sender_energy);

        RreqMessage fwd = msg;
        fwd.hopcount = msg.hopcount + 1;
        fwd.e_sum_so_far = msg.e_sum_so_far + env.residual_energy;
        fwd.sender_energy = env.residual_energy;
        entry.announced_hopcount = fwd.hopcount;
        if (!rreq_seen(msg.source, msg.rreq_id)) {
            note_rreq(msg.source, msg.rreq_id);
            out.push_back(BroadcastAction{fwd});
            counters_.rreqs_forwarded++;
        }
    } else if (same && entry.accepts_alternate(msg.hopcount)) {
        // Alternate reverse path. Only the first copy was rebroadcast, so the
        // energy accumulation matters solely on the stored item here.
        entry.upsert(from, msg.hopcount + 1, msg.sender_energy);
    }
    return out;
}

// ---------------------------------------------------------------------------
// route replies

std::vector<Action> ProtocolNode::destination_reply(NodeId source, std::uint64_t generation,
                                                    const NodeEnv& env) {
    std::vector<Action> out;
    auto it = discoveries_.find(source);
    if (it == discoveries_.end() || it->second.generation != generation) {
        return out; // superseded by a fresher discovery
    }
    DiscoveryContext ctx = std::move(it->second);
    discoveries_.erase(it);
    assert(!ctx.collected.empty());

    // Discovery-wide average residual energy: total collected path energy
    // over total path node count, accumulated in arrival order.
    Joules total = 0.0;
    std::uint64_t node_total = 0;
    for (const DiscoveryCopy& copy : ctx.collected) {
        total += copy.e_sum;
        node_total += copy.node_count;
    }
    const Joules beta = total / static_cast<double>(node_total);

    // One reply per distinct reverse neighbor, lowest hopcount retained.
    std::vector<DiscoveryCopy> picks;
    for (const DiscoveryCopy& copy : ctx.collected) {
        auto existing = std::find_if(picks.begin(), picks.end(), [&](const DiscoveryCopy& p) {
            return p.reverse_nexthop == copy.reverse_nexthop;
        });
        if (existing == picks.end()) {
            picks.push_back(copy);
        } else if (copy.hopcount < existing->hopcount) {
            *existing = copy;
        }
    }

    ++own_seqnum_;
    RouteEntry* rentry = table_.lookup(source, env.now);
    const NodeClass self_class = config_.mode == ProtocolMode::AomrLm
                                     ? classify(env.residual_energy, beta)
                                     : NodeClass::High;
    std::uint32_t reply_id = 0;
    for (const DiscoveryCopy& pick : picks) {
        if (rentry) {
            if (RouteListItem* item = rentry->find(pick.reverse_nexthop)) {
                item->marked = true;
            }
        }
        RrepMessage reply;
        reply.source = source;
        reply.destination = id_;
        reply.dest_seqnum = own_seqnum_;
        reply.hopcount = 0;
        reply.beta = beta;
        reply.path_class = self_class;
        reply.reply_id = reply_id++;
        reply.sender_energy = env.residual_energy;
        reply.trace.push_back(id_);
        out.push_back(UnicastAction{pick.reverse_nexthop, reply});
        counters_.rreps_originated++;
    }
    if (rentry) {
        finalize_advertised(*rentry);
        table_.touch(*rentry, env.now);
    }
    return out;
}

RouteListItem* ProtocolNode::pick_reverse_neighbor(RouteEntry& entry, NodeClass self_class,
                                                   Joules beta) {
    // Rank 0 is the node's own class, then classes above in ascending order,
    // then classes below in descending order.
    auto rank_of = [&](NodeClass c) {
        const int self = static_cast<int>(self_class);
        const int cls = static_cast<int>(c);
        if (cls == self) return 0;
        if (cls > self) return cls - self;
        return 2 + (self - cls);
    };
    RouteListItem* best = nullptr;
    int best_rank = 0;
    for (RouteListItem& item : entry.route_list) {
        if (item.marked) {
            continue;
        }
        item.neighbor_class = classify(item.neighbor_energy, beta);
        const int rank = rank_of(*item.neighbor_class);
        const bool better =
            !best || rank < best_rank ||
            (rank == best_rank && (item.neighbor_energy > best->neighbor_energy ||
                                   (item.neighbor_energy == best->neighbor_energy &&
                                    (item.hopcount < best->hopcount ||
                                     (item.hopcount == best->hopcount && item.nexthop < best->nexthop)))));
        if (better) {
            best = &item;
            best_rank = rank;
        }
    }
    return best;
}

std::vector<Action> ProtocolNode::handle_rrep(NodeId from, RrepMessage msg, const NodeEnv& env) {
    std::vector<Action> out;
    if (rrep_seen_before(msg)) {
        return out;
    }

    // Forward-route maintenance toward the reply's destination.
    RouteEntry& fentry = table_.obtain(msg.destination, env.now);
    const bool newer = !fentry.seq_known || fentry.sequence_number < msg.dest_seqnum;
    const bool same = fentry.seq_known && fentry.sequence_number == msg.dest_seqnum;
    if (newer) {
        fentry.sequence_number = msg.dest_seqnum;
        fentry.seq_known = true;
        fentry.advertised_hopcount.reset();
        fentry.announced_hopcount.reset();
        fentry.route_list.clear();
        fentry.upsert(from, msg.hopcount + 1, msg.sender_energy);
    } else if (same) {
        if (fentry.accepts_alternate(msg.hopcount)) {
            fentry.upsert(from, msg.hopcount + 1, msg.sender_energy);
        }
        // A rejected alternate still forwards: the reply belongs to the
        // source, only our table skips it.
    } else {
        return out; // stale reply
    }

    if (id_ == msg.source) {
        SourcePathSet& set = path_sets_[msg.destination];
        if (set.destination == kNoNode) {
            set.destination = msg.destination;
        }
        if (set.dest_seqnum > msg.dest_seqnum) {
            return out; // reply from an obsolete discovery
        }
        if (set.dest_seqnum < msg.dest_seqnum) {
            const NodeId dest = set.destination;
            set = SourcePathSet{};
            set.destination = dest;
            set.dest_seqnum = msg.dest_seqnum;
            set.generation = ++next_generation_;
        }
        for (const SourceRoute& r : set.routes) {
            if (r.nexthop == from) {
                return out; // replies are link-disjoint; same first hop means a duplicate
            }
        }
        SourceRoute route;
        route.nexthop = from;
        route.hopcount = msg.hopcount + 1;
        route.path_class = config_.mode == ProtocolMode::AomrLm
                               ? std::min(msg.path_class, classify(env.residual_energy, msg.beta))
                               : msg.path_class;
        route.nexthop_energy = msg.sender_energy;
        route.beta = msg.beta;
        route.reply_id = msg.reply_id;
        route.trace = msg.trace;
        route.trace.push_back(id_);
        set.routes.push_back(route);

        if (!set.selection_done && set.routes.size() == 1) {
            set.rrep_deadline = env.now + config_.rrep_wait;
            out.push_back(ScheduleTimerAction{
                set.rrep_deadline,
                TimerKind{TimerKind::What::RrepDeadline, set.destination, set.generation}});
        } else if (set.selection_done &&
                   (!set.active || route.path_class > set.active->path_class)) {
            // Late reply outranking the current choice: re-select so the
            // active path always sits in the highest stored class.
            set.active = select_path(set, env);
            flush_buffer(set.destination, env, out);
        }
        return out;
    }

    // Intermediate: route the reply one reverse hop, class-matched.
    RouteEntry* rentry = table_.lookup(msg.source, env.now);
    if (!rentry || rentry->route_list.empty()) {
        return out; // this reverse branch is exhausted; drop silently
    }
    RouteListItem* chosen = nullptr;
    NodeClass self_class = NodeClass::High;
    if (config_.mode == ProtocolMode::Aomdv) {
        for (RouteListItem& item : rentry->route_list) {
            if (!item.marked) {
                chosen = &item;
                break;
            }
        }
    } else {
        self_class = classify(env.residual_energy, msg.beta);
        chosen = pick_reverse_neighbor(*rentry, self_class, msg.beta);
    }
    if (!chosen) {
        return out;
    }
    if (chosen->marked) {
        counters_.marked_forward_violations++; // structurally unreachable
    }
    chosen->marked = true;

    RrepMessage fwd = msg;
    fwd.hopcount = msg.hopcount + 1;
    fwd.sender_energy = env.residual_energy;
    if (config_.mode == ProtocolMode::AomrLm) {
        fwd.path_class = std::min({msg.path_class, *chosen->neighbor_class, self_class});
    }
    fwd.trace.push_back(id_);

    finalize_advertised(*rentry);
    finalize_advertised(fentry);
    table_.touch(*rentry, env.now);
    out.push_back(UnicastAction{chosen->nexthop, fwd});
    counters_.rreps_forwarded++;
    return out;
}

// ---------------------------------------------------------------------------
// data plane

std::vector<Action> ProtocolNode::send_data(const DataPacket& packet, const NodeEnv& env) {
    std::vector<Action> out;
    auto it = path_sets_.find(packet.destination);
    if (it != path_sets_.end() && it->second.active) {
        forward_from_source(it->second, packet, env, out);
        return out;
    }
    if (buffer_.size() >= config_.buffer_capacity) {
        buffer_.pop_front();
        counters_.buffer_drops++;
    }
    buffer_.push_back(packet);
    if (!pending_.count(packet.destination)) {
        start_discovery(packet.destination, env, out);
    }
    return out;
}

void ProtocolNode::forward_from_source(SourcePathSet& set, const DataPacket& packet,
                                       const NodeEnv& env, std::vector<Action>& out) {
    assert(set.active);
    NodeClass top = set.active->path_class;
    for (const SourceRoute& r : set.routes) {
        top = std::max(top, r.path_class);
    }
    if (config_.mode == ProtocolMode::AomrLm && set.active->path_class != top) {
        counters_.class_order_violations++;
    }
    if (RouteEntry* entry = table_.lookup(packet.destination, env.now)) {
        table_.touch(*entry, env.now);
    }
    out.push_back(UnicastAction{set.active->nexthop, packet});
    counters_.data_forwarded++;
}

std::vector<Action> ProtocolNode::handle_data(NodeId from, const DataPacket& packet,
                                              const NodeEnv& env) {
    std::vector<Action> out;
    if (packet.destination == id_) {
        out.push_back(DataDeliveredAction{packet});
        return out;
    }
    upstream_[packet.destination].insert(from);

    RouteEntry* entry = table_.lookup(packet.destination, env.now);
    const RouteListItem* item = entry ? entry->best_item() : nullptr;
    if (!item) {
        // Path dead-ends here: tell the data predecessors and drop.
        RerrMessage err;
        err.unreachable_destination = packet.destination;
        err.broken_nexthop = id_;
        err.origin = id_;
        for (NodeId u : upstream_[packet.destination]) {
            out.push_back(UnicastAction{u, err});
            counters_.rerrs_sent++;
        }
        upstream_.erase(packet.destination);
        return out;
    }
    table_.touch(*entry, env.now);
    out.push_back(UnicastAction{item->nexthop, packet});
    counters_.data_forwarded++;
    return out;
}

std::optional<SourceRoute> ProtocolNode::select_path(const SourcePathSet& set,
                                                     const NodeEnv& env) const {
    const RouteEntry* entry = table_.peek(set.destination);
    auto valid = [&](const SourceRoute& r) {
        return entry && entry->expires_at >= env.now && entry->find(r.nexthop) != nullptr;
    };
    if (config_.mode == ProtocolMode::Aomdv) {
        for (const SourceRoute& r : set.routes) {
            if (valid(r)) {
                return r; // first stored route, class-blind
            }
        }
        return std::nullopt;
    }
    const SourceRoute* best = nullptr;
    for (const SourceRoute& r : set.routes) {
        if (!valid(r)) {
            continue;
        }
        // Highest class wins; inside a class the shortest path, then the
        // lowest next-hop id.
        const bool better = !best || r.path_class > best->path_class ||
                            (r.path_class == best->path_class &&
                             (r.hopcount < best->hopcount ||
                              (r.hopcount == best->hopcount && r.nexthop < best->nexthop)));
        if (better) {
            best = &r;
        }
    }
    if (!best) {
        return std::nullopt;
    }
    return *best;
}

std::vector<Action> ProtocolNode::rrep_deadline_fired(NodeId dest, std::uint64_t generation,
                                                      const NodeEnv& env) {
    std::vector<Action> out;
    auto it = path_sets_.find(dest);
    if (it == path_sets_.end() || it->second.generation != generation) {
        return out;
    }
    SourcePathSet& set = it->second;
    set.selection_done = true;
    set.active = select_path(set, env);
    pending_.erase(dest);
    if (set.active) {
        flush_buffer(dest, env, out);
    }
    return out;
}

void ProtocolNode::flush_buffer(NodeId dest, const NodeEnv& env, std::vector<Action>& out) {
    auto it = path_sets_.find(dest);
    if (it == path_sets_.end() || !it->second.active) {
        return;
    }
    std::deque<DataPacket> keep;
    for (DataPacket& packet : buffer_) {
        if (packet.destination == dest) {
            forward_from_source(it->second, packet, env, out);
        } else {
            keep.push_back(packet);
        }
    }
    buffer_ = std::move(keep);
}

void ProtocolNode::start_discovery(NodeId dest, const NodeEnv& env, std::vector<Action>& out) {
    ++own_seqnum_;
    const std::uint32_t rreq_id = next_rreq_id_++;
    PendingDiscovery pending;
    pending.rreq_id = rreq_id;
    pending.generation = ++next_generation_;
    pending_[dest] = pending;

    RreqMessage msg;
    msg.source = id_;
    msg.destination = dest;
    msg.rreq_id = rreq_id;
    msg.source_seqnum = own_seqnum_;
    const RouteEntry* known = table_.peek(dest);
    msg.dest_seqnum_known = known && known->seq_known ? known->sequence_number : 0;
    msg.hopcount = 0;
    msg.e_sum_so_far = env.residual_energy;
    msg.sender_energy = env.residual_energy;
    out.push_back(BroadcastAction{msg});
    counters_.floods_initiated++;

    const Seconds deadline =
        env.now + config_.rreq_wait + config_.rrep_wait + config_.discovery_retry_margin;
    out.push_back(ScheduleTimerAction{
        deadline, TimerKind{TimerKind::What::DiscoveryTimeout, dest, pending.generation}});
}

// ---------------------------------------------------------------------------
// maintenance

std::vector<Action> ProtocolNode::handle_hello(NodeId from, const NodeEnv& env) {
    last_heard_[from] = env.now;
    hello_misses_[from] = 0;
    return {};
}

std::vector<Action> ProtocolNode::hello_tick(const NodeEnv& env) {
    std::vector<Action> out;
    out.push_back(BroadcastAction{HelloMessage{id_}});

    std::set<NodeId> monitored;
    for (const auto& [dest, entry] : table_.entries()) {
        for (const RouteListItem& item : entry.route_list) {
            monitored.insert(item.nexthop);
        }
    }
    std::vector<NodeId> failed;
    for (NodeId n : monitored) {
        auto heard = last_heard_.find(n);
        if (heard == last_heard_.end()) {
            last_heard_[n] = env.now; // newly monitored: grace interval
            continue;
        }
        if (heard->second + config_.hello_interval <= env.now) {
            if (++hello_misses_[n] >= config_.hello_miss_limit) {
                failed.push_back(n);
            }
        } else {
            hello_misses_[n] = 0;
        }
    }
    for (NodeId n : failed) {
        fail_link(n, env, out);
    }
    out.push_back(ScheduleTimerAction{env.now + config_.hello_interval,
                                      TimerKind{TimerKind::What::Hello, kNoNode, 0}});
    return out;
}

void ProtocolNode::fail_link(NodeId neighbor, const NodeEnv& env, std::vector<Action>& out) {
    counters_.link_failures++;
    last_heard_.erase(neighbor);
    hello_misses_.erase(neighbor);

    std::vector<NodeId> affected;
    for (auto& [dest, entry] : table_.entries()) {
        if (entry.erase_nexthop(neighbor)) {
            affected.push_back(dest);
        }
    }
    for (NodeId dest : affected) {
        auto pit = path_sets_.find(dest);
        if (pit != path_sets_.end()) {
            SourcePathSet& set = pit->second;
            std::erase_if(set.routes,
                          [&](const SourceRoute& r) { return r.nexthop == neighbor; });
            if (set.active && set.active->nexthop == neighbor) {
                set.active.reset();
                if (set.selection_done) {
                    reselect_or_rediscover(set, env, out);
                }
            }
        }
        // Relay role: a path through us lost its next hop entirely.
        const RouteEntry* entry = table_.peek(dest);
        const bool route_gone = !entry || entry->route_list.empty();
        auto uit = upstream_.find(dest);
        if (route_gone && uit != upstream_.end() && !uit->second.empty()) {
            RerrMessage err;
            err.unreachable_destination = dest;
            err.broken_nexthop = neighbor;
            err.origin = id_;
            for (NodeId u : uit->second) {
                out.push_back(UnicastAction{u, err});
                counters_.rerrs_sent++;
            }
            upstream_.erase(uit);
        }
    }
}

void ProtocolNode::reselect_or_rediscover(SourcePathSet& set, const NodeEnv& env,
                                          std::vector<Action>& out) {
    set.active = select_path(set, env);
    if (set.active) {
        flush_buffer(set.destination, env, out);
        return;
    }
    if (flows_.count(set.destination) && !pending_.count(set.destination)) {
        start_discovery(set.destination, env, out);
    }
}

std::vector<Action> ProtocolNode::handle_rerr(NodeId from, const RerrMessage& msg,
                                              const NodeEnv& env) {
    std::vector<Action> out;
    const NodeId dest = msg.unreachable_destination;
    RouteEntry* entry = table_.lookup(dest, env.now);
    const bool erased = entry && entry->erase_nexthop(from);

    bool source_affected = false;
    auto pit = path_sets_.find(dest);
    if (pit != path_sets_.end()) {
        SourcePathSet& set = pit->second;
        const auto before = set.routes.size();
        std::erase_if(set.routes, [&](const SourceRoute& r) { return r.nexthop == from; });
        source_affected = set.routes.size() != before;
        if (set.active && set.active->nexthop == from) {
            set.active.reset();
            source_affected = true;
            if (set.selection_done) {
                reselect_or_rediscover(set, env, out);
            }
        }
    }
    if (!erased && !source_affected) {
        return out; // unknown route
    }

    // Relay along the reverse data path.
    const bool route_gone = !entry || entry->route_list.empty();
    auto uit = upstream_.find(dest);
    if (route_gone && uit != upstream_.end()) {
        for (NodeId u : uit->second) {
            if (u == from) {
                continue;
            }
            out.push_back(UnicastAction{u, msg});
            counters_.rerrs_sent++;
        }
        upstream_.erase(uit);
    }
    return out;
}

// ---------------------------------------------------------------------------
// small helpers

void ProtocolNode::note_rreq(NodeId source, std::uint32_t rreq_id) {
    rreq_cache_.emplace_back(source, rreq_id);
    if (rreq_cache_.size() > config_.rreq_cache_size) {
        rreq_cache_.pop_front();
    }
}

bool ProtocolNode::rreq_seen(NodeId source, std::uint32_t rreq_id) const {
    return std::find(rreq_cache_.begin(), rreq_cache_.end(),
                     std::make_pair(source, rreq_id)) != rreq_cache_.end();
}

bool ProtocolNode::rrep_seen_before(const RrepMessage& msg) {
    RrepKey key{msg.source, msg.destination, msg.dest_seqnum, msg.reply_id};
    if (std::find(rrep_cache_.begin(), rrep_cache_.end(), key) != rrep_cache_.end()) {
        return true;
    }
    rrep_cache_.push_back(key);
    if (rrep_cache_.size() > config_.rrep_cache_size) {
        rrep_cache_.pop_front();
    }
    return false;
}

void ProtocolNode::finalize_advertised(RouteEntry& entry) {
    if (entry.advertised_hopcount || entry.route_list.empty()) {
        return;
    }
    std::uint32_t longest = 0;
    for (const RouteListItem& item : entry.route_list) {
        longest = std::max(longest, item.hopcount);
    }
    entry.advertised_hopcount = longest + 1;
}

} // namespace manetsim
