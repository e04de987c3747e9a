#pragma once

#include <cstdint>
#include <limits>

namespace manetsim {

using NodeId = std::uint32_t;

inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

// Simulation time is seconds as a 64-bit real; ordering ties are broken by
// insertion sequence in the event queue, never by nudging timestamps.
using Seconds = double;
using Joules = double;

} // namespace manetsim
