#pragma once

#include "manetsim/energy.hpp"
#include "manetsim/types.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace manetsim {

// One alternate next hop toward a destination. `marked` means a reverse
// path of the current discovery already went through this neighbor, so no
// further reply may reuse the link; marks only ever flip false -> true and
// are cleared when the sequence number advances.
struct RouteListItem {
    NodeId nexthop = kNoNode;
    std::uint32_t hopcount = 0;
    Joules neighbor_energy = 0.0;
    bool marked = false;
    std::optional<energy::NodeClass> neighbor_class; // filled during the reply phase
};

// Per-destination routing state. `advertised_hopcount` is unset (infinite)
// while a discovery is in flight; once this node forwards a reply for the
// entry it is pinned to max(route hopcounts) + 1 and stays until the
// sequence number advances. `announced_hopcount` remembers the distance this
// node put in its one rebroadcast/forward of the current discovery; it
// bounds which alternates are still acceptable while advertised_hopcount is
// infinite, which keeps every stored hopcount strictly decreasing along any
// chain of next hops.
struct RouteEntry {
    NodeId destination = kNoNode;
    std::uint32_t sequence_number = 0;
    bool seq_known = false; // false until the first advertisement is seen
    std::optional<std::uint32_t> advertised_hopcount;
    std::optional<std::uint32_t> announced_hopcount;
    std::vector<RouteListItem> route_list;
    Seconds expires_at = 0.0;

    bool accepts_alternate(std::uint32_t incoming_hopcount) const;

    /// Insert or improve the item for `nexthop` (next hops stay pairwise
    /// distinct; a duplicate keeps the lower hopcount).
    void upsert(NodeId nexthop, std::uint32_t hopcount, Joules neighbor_energy);

    RouteListItem* find(NodeId nexthop);
    const RouteListItem* find(NodeId nexthop) const;
    bool erase_nexthop(NodeId nexthop);

    /// Valid forwarding choice for data: the unexpired item with the lowest
    /// hopcount (ties to the lowest nexthop id). Using the minimum keeps the
    /// remaining hopcount strictly decreasing hop by hop.
    const RouteListItem* best_item() const;
};

// Routing table: one entry per known destination, purged lazily on access.
class RoutingTable {
public:
    explicit RoutingTable(Seconds route_lifetime) : route_lifetime_(route_lifetime) {}

    /// Entry for `dest` if present and not expired.
    RouteEntry* lookup(NodeId dest, Seconds now);
    const RouteEntry* peek(NodeId dest) const;

    /// Entry for `dest`, created empty if absent; refreshes the expiry.
    RouteEntry& obtain(NodeId dest, Seconds now);

    void touch(RouteEntry& entry, Seconds now) { entry.expires_at = now + route_lifetime_; }
    void erase(NodeId dest) { entries_.erase(dest); }

    std::map<NodeId, RouteEntry>& entries() { return entries_; }
    const std::map<NodeId, RouteEntry>& entries() const { return entries_; }

private:
    Seconds route_lifetime_;
    std::map<NodeId, RouteEntry> entries_;
};

} // namespace manetsim
