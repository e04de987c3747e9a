#pragma once

#include "manetsim/types.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace manetsim {

// Constant-bit-rate flow: fixed-size packets at a fixed rate over [start,
// stop). The first packet is offset inside one inter-packet gap so flows do
// not phase-lock.
struct CbrFlow {
    NodeId source = kNoNode;
    NodeId destination = kNoNode;
    double rate_pps = 4.0;
    std::uint32_t payload_bytes = 512;
    Seconds start = 0.0;
    Seconds stop = 300.0;

    Seconds gap() const { return 1.0 / rate_pps; }
};

// Raw observations of one run, reduced to the summary afterwards.
struct MetricsLedger {
    std::vector<std::pair<NodeId, Seconds>> exhaustion_times; // recording order
    std::map<NodeId, Joules> per_node_consumed;
    std::vector<std::pair<Seconds, Seconds>> deliveries; // (send, receive)
    std::uint64_t sent_count = 0;
    std::uint64_t delivered_count = 0;

    void record_debit(NodeId node, Joules amount) { per_node_consumed[node] += amount; }
    void record_exhaustion(NodeId node, Seconds when) { exhaustion_times.emplace_back(node, when); }
    void record_sent() { ++sent_count; }
    void record_delivery(Seconds sent_at, Seconds received_at) {
        deliveries.emplace_back(sent_at, received_at);
        ++delivered_count;
    }

    Joules total_consumed() const;
};

/// Time of the n-th battery exhaustion (n >= 1), or nullopt when fewer than
/// n nodes died by run end (right-censored).
std::optional<Seconds> network_lifetime(const MetricsLedger& ledger, std::size_t n);

struct RunSummary {
    std::uint64_t seed = 0;
    std::string protocol;
    std::uint32_t nodes = 0;
    std::optional<Seconds> lifetime; // nullopt = censored at run end
    Seconds run_duration = 0.0;
    Joules mean_energy = 0.0;          // over nodes that consumed anything
    std::optional<Seconds> mean_delay; // nullopt when nothing was delivered
    double delivery_ratio = 0.0;
    std::uint64_t sent = 0;
    std::uint64_t delivered = 0;
    std::uint64_t exhausted = 0;

    /// Lifetime with censoring collapsed to the run end, for comparisons.
    Seconds lifetime_or_duration() const { return lifetime ? *lifetime : run_duration; }
};

/// Reduce a finished run: lifetime(n), mean consumed energy over
/// participating nodes (consumption > 0), mean delivery delay, delivery
/// ratio.
RunSummary summarize(const MetricsLedger& ledger, std::size_t lifetime_n, Seconds run_duration);

/// Summary CSV header and row: seed,protocol,nodes,lifetime_s,censored,
/// mean_energy_J,mean_delay_s,delivery_ratio. An empty delay cell means no
/// delivery happened.
std::string summary_csv_header();
std::string summary_csv_row(const RunSummary& s);

} // namespace manetsim
