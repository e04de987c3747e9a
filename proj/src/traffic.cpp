#include "manetsim/traffic.hpp"

#include <cstdio>

namespace manetsim {

Joules MetricsLedger::total_consumed() const {
    Joules total = 0.0;
    for (const auto& [node, consumed] : per_node_consumed) {
        total += consumed;
    }
    return total;
}

std::optional<Seconds> network_lifetime(const MetricsLedger& ledger, std::size_t n) {
    if (n == 0 || ledger.exhaustion_times.size() < n) {
        return std::nullopt;
    }
    return ledger.exhaustion_times[n - 1].second;
}

RunSummary summarize(const MetricsLedger& ledger, std::size_t lifetime_n, Seconds run_duration) {
    RunSummary s;
    s.run_duration = run_duration;
    s.lifetime = network_lifetime(ledger, lifetime_n);
    s.sent = ledger.sent_count;
    s.delivered = ledger.delivered_count;
    s.exhausted = ledger.exhaustion_times.size();

    Joules consumed_total = 0.0;
    std::size_t participants = 0;
    for (const auto& [node, consumed] : ledger.per_node_consumed) {
        if (consumed > 0.0) {
            consumed_total += consumed;
            ++participants;
        }
    }
    s.mean_energy = participants ? consumed_total / static_cast<double>(participants) : 0.0;

    if (!ledger.deliveries.empty()) {
        Seconds total_delay = 0.0;
        for (const auto& [sent_at, received_at] : ledger.deliveries) {
            total_delay += received_at - sent_at;
        }
        s.mean_delay = total_delay / static_cast<double>(ledger.deliveries.size());
    }
    s.delivery_ratio = ledger.sent_count
                           ? static_cast<double>(ledger.delivered_count) /
                                 static_cast<double>(ledger.sent_count)
                           : 0.0;
    return s;
}

std::string summary_csv_header() {
    return "seed,protocol,nodes,lifetime_s,censored,mean_energy_J,mean_delay_s,delivery_ratio";
}

std::string summary_csv_row(const RunSummary& s) {
    char buf[256];
    const double lifetime = s.lifetime_or_duration();
    std::string delay_cell;
    if (s.mean_delay) {
        char d[40];
        std::snprintf(d, sizeof(d), "%.9g", *s.mean_delay);
        delay_cell = d;
    }
    std::snprintf(buf, sizeof(buf), "%llu,%s,%u,%.9g,%d,%.9g,%s,%.9g",
                  static_cast<unsigned long long>(s.seed), s.protocol.c_str(), s.nodes, lifetime,
                  s.lifetime ? 0 : 1, s.mean_energy, delay_cell.c_str(), s.delivery_ratio);
    return buf;
}

} // namespace manetsim
