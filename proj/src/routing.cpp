#include "manetsim/routing.hpp"

#include <algorithm>

namespace manetsim {

bool RouteEntry::accepts_alternate(std::uint32_t incoming_hopcount) const {
    if (advertised_hopcount) {
        return incoming_hopcount + 1 < *advertised_hopcount;
    }
    if (announced_hopcount) {
        // Mid-discovery: only transmitters strictly closer to the endpoint
        // than the distance we announced ourselves.
        return incoming_hopcount < *announced_hopcount;
    }
    return true;
}

void RouteEntry::upsert(NodeId nexthop, std::uint32_t hopcount, Joules neighbor_energy) {
    if (RouteListItem* existing = find(nexthop)) {
        if (hopcount < existing->hopcount) {
            existing->hopcount = hopcount;
            existing->neighbor_energy = neighbor_energy;
        }
        return;
    }
    route_list.push_back(RouteListItem{nexthop, hopcount, neighbor_energy, false, std::nullopt});
}

RouteListItem* RouteEntry::find(NodeId nexthop) {
    for (RouteListItem& item : route_list) {
        if (item.nexthop == nexthop) return &item;
    }
    return nullptr;
}

const RouteListItem* RouteEntry::find(NodeId nexthop) const {
    for (const RouteListItem& item : route_list) {
        if (item.nexthop == nexthop) return &item;
    }
    return nullptr;
}

bool RouteEntry::erase_nexthop(NodeId nexthop) {
    const auto before = route_list.size();
    route_list.erase(std::remove_if(route_list.begin(), route_list.end(),
                                    [&](const RouteListItem& i) { return i.nexthop == nexthop; }),
                     route_list.end());
    return route_list.size() != before;
}

const RouteListItem* RouteEntry::best_item() const {
    const RouteListItem* best = nullptr;
    for (const RouteListItem& item : route_list) {
        if (!best || item.hopcount < best->hopcount ||
            (item.hopcount == best->hopcount && item.nexthop < best->nexthop)) {
            best = &item;
        }
    }
    return best;
}

RouteEntry* RoutingTable::lookup(NodeId dest, Seconds now) {
    auto it = entries_.find(dest);
    if (it == entries_.end()) {
        return nullptr;
    }
    if (it->second.expires_at < now) {
        entries_.erase(it);
        return nullptr;
    }
    return &it->second;
}

const RouteEntry* RoutingTable::peek(NodeId dest) const {
    auto it = entries_.find(dest);
    return it == entries_.end() ? nullptr : &it->second;
}

RouteEntry& RoutingTable::obtain(NodeId dest, Seconds now) {
    RouteEntry& entry = entries_[dest];
    if (entry.destination == kNoNode) {
        entry.destination = dest;
    }
    touch(entry, now);
    return entry;
}

} // namespace manetsim
