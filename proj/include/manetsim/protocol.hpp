#pragma once

#include "manetsim/energy.hpp"
#include "manetsim/engine.hpp"
#include "manetsim/messages.hpp"
#include "manetsim/routing.hpp"
#include "manetsim/types.hpp"

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <variant>
#include <vector>

namespace manetsim {

enum class ProtocolMode { AomrLm, Aomdv };

const char* to_string(ProtocolMode mode);

struct ProtocolConfig {
    ProtocolMode mode = ProtocolMode::AomrLm;
    double alpha = 0.42;
    Seconds rreq_wait = 1.0;       // destination-side RREQ collection window
    Seconds rrep_wait = 1.0;       // source-side reply collection window
    Seconds hello_interval = 1.0;
    int hello_miss_limit = 3;
    Seconds route_lifetime = 10.0; // entry expiry on disuse
    std::size_t buffer_capacity = 64;
    std::size_t rreq_cache_size = 100;
    std::size_t rrep_cache_size = 200;
    Seconds discovery_retry_margin = 0.5; // slack past both windows before a retry may fire
};

// What the surrounding simulation must do on the node's behalf. Handlers
// never touch the world directly; they return these.
struct BroadcastAction {
    ProtocolMessage message;
};
struct UnicastAction {
    NodeId to = kNoNode;
    ProtocolMessage message;
};
struct ScheduleTimerAction {
    Seconds at = 0.0;
    TimerKind timer;
};
struct DataDeliveredAction {
    DataPacket packet;
};
using Action = std::variant<BroadcastAction, UnicastAction, ScheduleTimerAction, DataDeliveredAction>;

// Everything the node needs to know about itself at call time.
struct NodeEnv {
    Seconds now = 0.0;
    Joules residual_energy = 0.0;
};

// One complete source-to-destination path as registered at the flow source.
struct SourceRoute {
    NodeId nexthop = kNoNode;
    std::uint32_t hopcount = 0;
    energy::NodeClass path_class = energy::NodeClass::High;
    Joules nexthop_energy = 0.0;
    Joules beta = 0.0;
    std::uint32_t reply_id = 0;
    std::vector<NodeId> trace; // destination ... source as travelled by the reply
};

// Source-side state per destination: the routes one discovery produced,
// grouped by class at selection time, plus the reply-collection window.
struct SourcePathSet {
    NodeId destination = kNoNode;
    std::uint32_t dest_seqnum = 0;
    std::vector<SourceRoute> routes; // reply arrival order
    std::optional<SourceRoute> active;
    Seconds rrep_deadline = 0.0;
    bool selection_done = false;
    std::uint64_t generation = 0;
};

// Destination-side accumulator for the RREQ copies of one discovery.
struct DiscoveryCopy {
    NodeId reverse_nexthop = kNoNode;
    std::uint32_t hopcount = 0;   // route hopcount back to the source via that neighbor
    Joules e_sum = 0.0;           // full path energy, source through destination
    std::uint32_t node_count = 0; // nodes on the path, endpoints included
};

struct DiscoveryContext {
    NodeId source = kNoNode;
    std::uint32_t source_seqnum = 0;
    Seconds window_deadline = 0.0;
    std::uint64_t generation = 0;
    std::vector<DiscoveryCopy> collected;
};

struct NodeCounters {
    std::uint64_t floods_initiated = 0;
    std::uint64_t rreqs_forwarded = 0;
    std::uint64_t rreps_originated = 0;
    std::uint64_t rreps_forwarded = 0;
    std::uint64_t rerrs_sent = 0;
    std::uint64_t link_failures = 0;
    std::uint64_t data_forwarded = 0;
    std::uint64_t buffer_drops = 0;
    // Invariant instrumentation; both stay zero by construction.
    std::uint64_t class_order_violations = 0;
    std::uint64_t marked_forward_violations = 0;
};

// Per-node routing agent. Runs AOMR-LM or, with classification disabled,
// plain first-neighbor AOMDV. All methods are driven by the event engine's
// dispatch loop; there is no internal locking and no randomness, so behavior
// is a pure function of the delivered event sequence.
class ProtocolNode {
public:
    ProtocolNode(NodeId id, ProtocolConfig config);

    NodeId id() const { return id_; }
    const ProtocolConfig& config() const { return config_; }

    /// Kick off the periodic HELLO timer.
    std::vector<Action> start(const NodeEnv& env);

    /// Tell the node it originates traffic toward `dest` (enables proactive
    /// rediscovery when the last path dies).
    void register_flow(NodeId dest) { flows_.insert(dest); }

    /// A data packet handed over by the local traffic generator.
    std::vector<Action> send_data(const DataPacket& packet, const NodeEnv& env);

    /// A packet arrived over the radio from neighbor `from`.
    std::vector<Action> handle_delivery(NodeId from, const ProtocolMessage& message,
                                        const NodeEnv& env);

    /// A timer registered by this node fired.
    std::vector<Action> handle_timer(const TimerKind& timer, const NodeEnv& env);

    // Introspection (tests, traces, invariant sweeps).
    const RoutingTable& table() const { return table_; }
    const SourcePathSet* path_set(NodeId dest) const;
    const NodeCounters& counters() const { return counters_; }
    int miss_count(NodeId neighbor) const;
    std::uint32_t own_seqnum() const { return own_seqnum_; }

private:
    std::vector<Action> handle_rreq(NodeId from, RreqMessage msg, const NodeEnv& env);
    std::vector<Action> handle_rrep(NodeId from, RrepMessage msg, const NodeEnv& env);
    std::vector<Action> handle_rerr(NodeId from, const RerrMessage& msg, const NodeEnv& env);
    std::vector<Action> handle_hello(NodeId from, const NodeEnv& env);
    std::vector<Action> handle_data(NodeId from, const DataPacket& packet, const NodeEnv& env);

    std::vector<Action> destination_reply(NodeId source, std::uint64_t generation,
                                          const NodeEnv& env);
    std::vector<Action> rrep_deadline_fired(NodeId dest, std::uint64_t generation,
                                            const NodeEnv& env);
    std::vector<Action> hello_tick(const NodeEnv& env);

    void start_discovery(NodeId dest, const NodeEnv& env, std::vector<Action>& out);
    void forward_from_source(SourcePathSet& set, const DataPacket& packet, const NodeEnv& env,
                             std::vector<Action>& out);
    void flush_buffer(NodeId dest, const NodeEnv& env, std::vector<Action>& out);

    /// Class-ordered choice among the stored routes (or plain first-arrival
    /// in baseline mode). Skips routes with no live table backing.
    std::optional<SourceRoute> select_path(const SourcePathSet& set, const NodeEnv& env) const;

    /// Reverse neighbor choice for reply forwarding. AOMR-LM: same class,
    /// else lowest class above, else highest class below; ties by highest
    /// energy, lowest hopcount, lowest id. Baseline: first unmarked item.
    RouteListItem* pick_reverse_neighbor(RouteEntry& entry, energy::NodeClass self_class,
                                         Joules beta);

    energy::NodeClass classify(Joules residual, Joules beta) const;
    void note_rreq(NodeId source, std::uint32_t rreq_id);
    bool rreq_seen(NodeId source, std::uint32_t rreq_id) const;
    bool rrep_seen_before(const RrepMessage& msg);
    void finalize_advertised(RouteEntry& entry);
    void fail_link(NodeId neighbor, const NodeEnv& env, std::vector<Action>& out);
    void reselect_or_rediscover(SourcePathSet& set, const NodeEnv& env, std::vector<Action>& out);

    NodeId id_;
    ProtocolConfig config_;
    RoutingTable table_;
    std::uint32_t own_seqnum_ = 0;
    std::uint32_t next_rreq_id_ = 0;
    std::uint64_t next_generation_ = 0;

    std::map<NodeId, SourcePathSet> path_sets_;      // as flow source, by destination
    std::map<NodeId, DiscoveryContext> discoveries_; // as flow destination, by source
    struct PendingDiscovery {
        std::uint32_t rreq_id = 0;
        std::uint64_t generation = 0;
    };
    std::map<NodeId, PendingDiscovery> pending_; // by destination

    std::set<NodeId> flows_;
    std::deque<DataPacket> buffer_;

    std::deque<std::pair<NodeId, std::uint32_t>> rreq_cache_;
    struct RrepKey {
        NodeId source;
        NodeId destination;
        std::uint32_t dest_seqnum;
        std::uint32_t reply_id;
        bool operator==(const RrepKey&) const = default;
    };
    std::deque<RrepKey> rrep_cache_;

    std::map<NodeId, Seconds> last_heard_; // neighbor -> last HELLO time
    std::map<NodeId, int> hello_misses_;
    std::map<NodeId, std::set<NodeId>> upstream_; // dest -> data predecessors

    NodeCounters counters_;
};

} // namespace manetsim
