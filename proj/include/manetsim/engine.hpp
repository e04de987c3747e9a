#pragma once

#include "manetsim/messages.hpp"
#include "manetsim/types.hpp"

#include <cstdint>
#include <functional>
#include <queue>
#include <variant>
#include <vector>

namespace manetsim {

// Timers the protocol layer runs on. `generation` guards against stale
// fires: a discovery that has been superseded bumps the generation instead
// of cancelling the already-queued event.
struct TimerKind {
    enum class What : int {
        Hello,            // periodic beacon + neighbor liveness check
        DiscoveryWindow,  // destination-side RREQ collection window closes
        RrepDeadline,     // source-side reply window closes, pick the path
        DiscoveryTimeout, // discovery produced nothing, allow a retry
        MetricsSample,    // run-level bookkeeping, never reaches a node
    };
    What what = What::Hello;
    NodeId peer = kNoNode;         // discovery counterpart, if any
    std::uint64_t generation = 0;
};

struct PacketDelivery {
    NodeId receiver = kNoNode;
    NodeId from = kNoNode; // transmitting neighbor
    ProtocolMessage message;
};

struct TimerFire {
    NodeId node = kNoNode;
    TimerKind timer;
};

struct MobilityUpdate {
    NodeId node = kNoNode;
};

struct TrafficTick {
    std::uint32_t flow = 0;
};

using EventKind = std::variant<PacketDelivery, TimerFire, MobilityUpdate, TrafficTick>;

struct Event {
    Seconds fire_time = 0.0;
    std::uint64_t sequence = 0; // insertion order, tie-breaker
    EventKind kind;
};

// Deterministic discrete-event scheduler. Events pop in strict
// (fire_time, sequence) order; scheduling in the past is a programming
// error and throws.
class Engine {
public:
    Seconds now() const { return now_; }
    std::size_t pending() const { return queue_.size(); }

    /// Enqueue an event at fire_time >= now. Throws std::logic_error on a
    /// past-time event.
    void schedule(Seconds fire_time, EventKind kind);

    /// Pop and dispatch events in order until the queue is empty or the next
    /// event fires after `until`. The clock ends at min(until, last fire
    /// time) and never moves backwards.
    void run(Seconds until, const std::function<void(const Event&)>& dispatch);

private:
    struct Later {
        bool operator()(const Event& a, const Event& b) const {
            if (a.fire_time != b.fire_time) return a.fire_time > b.fire_time;
            return a.sequence > b.sequence;
        }
    };

    Seconds now_ = 0.0;
    std::uint64_t next_sequence_ = 0;
    std::priority_queue<Event, std::vector<Event>, Later> queue_;
};

} // namespace manetsim
