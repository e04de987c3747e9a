#include "manetsim/messages.hpp"

#include <cstdio>
#include <sstream>

namespace manetsim {

namespace {

std::string fmt_joules(Joules j) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", j);
    return buf;
}

} // namespace

std::uint32_t wire_bytes(const ProtocolMessage& msg) {
    struct Visitor {
        std::uint32_t operator()(const RreqMessage&) const { return 64; }
        std::uint32_t operator()(const RrepMessage&) const { return 64; }
        std::uint32_t operator()(const RerrMessage&) const { return 32; }
        std::uint32_t operator()(const HelloMessage&) const { return 32; }
        std::uint32_t operator()(const DataPacket& d) const { return d.payload_bytes; }
    };
    return std::visit(Visitor{}, msg);
}

const char* message_name(const ProtocolMessage& msg) {
    struct Visitor {
        const char* operator()(const RreqMessage&) const { return "RREQ"; }
        const char* operator()(const RrepMessage&) const { return "RREP"; }
        const char* operator()(const RerrMessage&) const { return "RERR"; }
        const char* operator()(const HelloMessage&) const { return "HELLO"; }
        const char* operator()(const DataPacket&) const { return "DATA"; }
    };
    return std::visit(Visitor{}, msg);
}

std::string dump(const ProtocolMessage& msg) {
    std::ostringstream out;
    struct Visitor {
        std::ostringstream& out;
        void operator()(const RreqMessage& m) const {
            out << "  source: " << m.source << '\n'
                << "  destination: " << m.destination << '\n'
                << "  rreq_id: " << m.rreq_id << '\n'
                << "  source_seqnum: " << m.source_seqnum << '\n'
                << "  dest_seqnum_known: " << m.dest_seqnum_known << '\n'
                << "  hopcount: " << m.hopcount << '\n'
                << "  e_sum_so_far: " << fmt_joules(m.e_sum_so_far) << '\n'
                << "  sender_energy: " << fmt_joules(m.sender_energy) << '\n';
        }
        void operator()(const RrepMessage& m) const {
            out << "  source: " << m.source << '\n'
                << "  destination: " << m.destination << '\n'
                << "  dest_seqnum: " << m.dest_seqnum << '\n'
                << "  hopcount: " << m.hopcount << '\n'
                << "  beta: " << fmt_joules(m.beta) << '\n'
                << "  path_class: " << energy::to_string(m.path_class) << '\n'
                << "  reply_id: " << m.reply_id << '\n'
                << "  sender_energy: " << fmt_joules(m.sender_energy) << '\n';
        }
        void operator()(const RerrMessage& m) const {
            out << "  unreachable_destination: " << m.unreachable_destination << '\n'
                << "  broken_nexthop: " << m.broken_nexthop << '\n'
                << "  origin: " << m.origin << '\n';
        }
        void operator()(const HelloMessage& m) const {
            out << "  origin: " << m.origin << '\n';
        }
        void operator()(const DataPacket& m) const {
            out << "  source: " << m.source << '\n'
                << "  destination: " << m.destination << '\n'
                << "  packet_id: " << m.packet_id << '\n'
                << "  send_time: " << fmt_joules(m.send_time) << '\n'
                << "  payload_bytes: " << m.payload_bytes << '\n';
        }
    };
    std::visit(Visitor{out}, msg);
    return out.str();
}

} // namespace manetsim
