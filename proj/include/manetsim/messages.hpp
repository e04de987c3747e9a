#pragma once

#include "manetsim/energy.hpp"
#include "manetsim/types.hpp"

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace manetsim {

// Control and data messages. These are plain value types; the "wire" is the
// simulator's event queue. wire_bytes() is what the energy model charges.

struct RreqMessage {
    NodeId source = kNoNode;
    NodeId destination = kNoNode;
    std::uint32_t rreq_id = 0;       // per-source discovery identifier
    std::uint32_t source_seqnum = 0;
    std::uint32_t dest_seqnum_known = 0;
    std::uint32_t hopcount = 0;      // hops travelled; equals the transmitter's
                                     // announced distance from the source
    Joules e_sum_so_far = 0.0;       // residual energy accumulated source..transmitter
    Joules sender_energy = 0.0;      // residual energy of the transmitter
};

struct RrepMessage {
    NodeId source = kNoNode;       // flow source the reply is heading to
    NodeId destination = kNoNode;  // flow destination that generated the reply
    std::uint32_t dest_seqnum = 0;
    std::uint32_t hopcount = 0;    // hops travelled from the destination
    Joules beta = 0.0;             // discovery-wide average residual energy
    energy::NodeClass path_class = energy::NodeClass::High; // min class seen so far
    std::uint32_t reply_id = 0;    // distinguishes the replies of one discovery
    Joules sender_energy = 0.0;    // residual energy of the transmitter
    std::vector<NodeId> trace;     // nodes traversed, destination first
};

struct RerrMessage {
    NodeId unreachable_destination = kNoNode;
    NodeId broken_nexthop = kNoNode;
    NodeId origin = kNoNode; // node that detected the failure
};

struct HelloMessage {
    NodeId origin = kNoNode;
};

struct DataPacket {
    NodeId source = kNoNode;
    NodeId destination = kNoNode;
    std::uint64_t packet_id = 0;
    Seconds send_time = 0.0;
    std::uint32_t payload_bytes = 512;
};

using ProtocolMessage = std::variant<RreqMessage, RrepMessage, RerrMessage, HelloMessage, DataPacket>;

/// Size charged to the radio. Control packets use fixed sizes
/// (RREQ/RREP 64 B, RERR/HELLO 32 B); data packets are their payload.
std::uint32_t wire_bytes(const ProtocolMessage& msg);

const char* message_name(const ProtocolMessage& msg);

/// Stable textual dump, one "  field: value" line per field, used by the
/// message trace log. Formatting is fixed so traces are byte-reproducible.
std::string dump(const ProtocolMessage& msg);

} // namespace manetsim
