#include "manetsim/scenario.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace manetsim {

using nlohmann::json;

std::uint32_t Scenario::effective_lifetime_n() const {
    if (lifetime_n > 0) {
        return lifetime_n;
    }
    return static_cast<std::uint32_t>(std::ceil(0.05 * node_count));
}

ProtocolConfig Scenario::protocol_config() const {
    ProtocolConfig cfg;
    cfg.mode = protocol;
    cfg.alpha = alpha;
    cfg.rreq_wait = rreq_wait_s;
    cfg.rrep_wait = rrep_wait_s;
    cfg.hello_interval = hello_interval_s;
    return cfg;
}

World::Config Scenario::world_config() const {
    World::Config cfg;
    cfg.terrain = terrain;
    cfg.range_m = range_m;
    cfg.max_speed_mps = max_speed_mps;
    cfg.pause_s = pause_s;
    cfg.radio = radio;
    cfg.mac = mac;
    return cfg;
}

bool Scenario::operator==(const Scenario& o) const {
    return schema == o.schema && node_count == o.node_count &&
           terrain.width == o.terrain.width && terrain.height == o.terrain.height &&
           range_m == o.range_m && max_speed_mps == o.max_speed_mps && pause_s == o.pause_s &&
           duration_s == o.duration_s && protocol == o.protocol && alpha == o.alpha &&
           t_net == o.t_net && k_nodes == o.k_nodes && rreq_wait_s == o.rreq_wait_s &&
           rrep_wait_s == o.rrep_wait_s && hello_interval_s == o.hello_interval_s &&
           lifetime_n == o.lifetime_n && seeds == o.seeds &&
           energy_init_min == o.energy_init_min && energy_init_max == o.energy_init_max &&
           radio.tx_power_w == o.radio.tx_power_w && radio.rx_power_w == o.radio.rx_power_w &&
           radio.bitrate_bps == o.radio.bitrate_bps &&
           mac.per_hop_delay_base == o.mac.per_hop_delay_base &&
           mac.per_hop_jitter == o.mac.per_hop_jitter &&
           mac.loss_probability == o.mac.loss_probability && flows == o.flows;
}

namespace {

[[noreturn]] void bad_field(const std::string& field, const std::string& why) {
    throw ScenarioError("scenario field '" + field + "': " + why);
}

template <typename T>
void read_number(const json& j, const char* key, T& into) {
    if (!j.contains(key)) {
        return;
    }
    if (!j[key].is_number()) {
        bad_field(key, "expected a number");
    }
    into = j[key].get<T>();
}

ProtocolMode parse_mode(const std::string& name) {
    if (name == "aomr-lm") {
        return ProtocolMode::AomrLm;
    }
    if (name == "aomdv") {
        return ProtocolMode::Aomdv;
    }
    bad_field("protocol", "expected 'aomr-lm' or 'aomdv', got '" + name + "'");
}

} // namespace

Scenario parse_scenario(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text.empty() ? "{}" : json_text);
    } catch (const json::exception& e) {
        throw ScenarioError(std::string("scenario is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) {
        throw ScenarioError("scenario must be a JSON object");
    }

    Scenario s;
    read_number(j, "schema", s.schema);
    if (s.schema != 1) {
        bad_field("schema", "unsupported version");
    }
    read_number(j, "node_count", s.node_count);
    if (j.contains("terrain")) {
        const json& t = j["terrain"];
        if (!t.is_object()) {
            bad_field("terrain", "expected an object with width/height");
        }
        read_number(t, "width", s.terrain.width);
        read_number(t, "height", s.terrain.height);
    }
    read_number(j, "range_m", s.range_m);
    read_number(j, "max_speed_mps", s.max_speed_mps);
    read_number(j, "pause_s", s.pause_s);
    read_number(j, "duration_s", s.duration_s);
    if (j.contains("protocol")) {
        if (!j["protocol"].is_string()) {
            bad_field("protocol", "expected a string");
        }
        s.protocol = parse_mode(j["protocol"].get<std::string>());
    }
    read_number(j, "alpha", s.alpha);
    read_number(j, "t_net", s.t_net);
    read_number(j, "k_nodes", s.k_nodes);
    read_number(j, "rreq_wait_s", s.rreq_wait_s);
    read_number(j, "rrep_wait_s", s.rrep_wait_s);
    read_number(j, "hello_interval_s", s.hello_interval_s);
    read_number(j, "lifetime_n", s.lifetime_n);
    if (j.contains("seeds")) {
        const json& seeds = j["seeds"];
        if (seeds.is_number_unsigned() || seeds.is_number_integer()) {
            const std::int64_t count = seeds.get<std::int64_t>();
            if (count < 1) {
                bad_field("seeds", "seed count must be positive");
            }
            s.seeds.clear();
            for (std::int64_t i = 1; i <= count; ++i) {
                s.seeds.push_back(static_cast<std::uint64_t>(i));
            }
        } else if (seeds.is_array()) {
            s.seeds.clear();
            for (const json& v : seeds) {
                if (!v.is_number()) {
                    bad_field("seeds", "expected integers");
                }
                s.seeds.push_back(v.get<std::uint64_t>());
            }
        } else {
            bad_field("seeds", "expected a list of seeds or a count");
        }
    }
    if (j.contains("energy_init")) {
        const json& e = j["energy_init"];
        if (!e.is_object()) {
            bad_field("energy_init", "expected an object with min/max");
        }
        read_number(e, "min", s.energy_init_min);
        read_number(e, "max", s.energy_init_max);
    }
    if (j.contains("radio")) {
        const json& r = j["radio"];
        if (!r.is_object()) {
            bad_field("radio", "expected an object");
        }
        read_number(r, "tx_power_w", s.radio.tx_power_w);
        read_number(r, "rx_power_w", s.radio.rx_power_w);
        read_number(r, "bitrate_bps", s.radio.bitrate_bps);
    }
    if (j.contains("mac")) {
        const json& m = j["mac"];
        if (!m.is_object()) {
            bad_field("mac", "expected an object");
        }
        read_number(m, "per_hop_delay_base_s", s.mac.per_hop_delay_base);
        read_number(m, "per_hop_jitter_s", s.mac.per_hop_jitter);
        read_number(m, "loss_probability", s.mac.loss_probability);
    }
    if (j.contains("flows")) {
        const json& f = j["flows"];
        if (f.is_string()) {
            const std::string spec = f.get<std::string>();
            if (spec.rfind("random:", 0) != 0) {
                bad_field("flows", "expected 'random:<k>' or a flow list");
            }
            RandomFlows rf;
            try {
                rf.count = static_cast<std::uint32_t>(std::stoul(spec.substr(7)));
            } catch (...) {
                bad_field("flows", "bad count in 'random:<k>'");
            }
            s.flows = rf;
        } else if (f.is_array()) {
            std::vector<FlowSpec> list;
            for (const json& fj : f) {
                if (!fj.is_object()) {
                    bad_field("flows", "expected flow objects");
                }
                FlowSpec flow;
                read_number(fj, "source", flow.source);
                read_number(fj, "destination", flow.destination);
                read_number(fj, "rate_pps", flow.rate_pps);
                read_number(fj, "payload_bytes", flow.payload_bytes);
                read_number(fj, "start_s", flow.start);
                read_number(fj, "stop_s", flow.stop);
                list.push_back(flow);
            }
            s.flows = list;
        } else {
            bad_field("flows", "expected 'random:<k>' or a flow list");
        }
    }
    validate_scenario(s);
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ScenarioError("cannot open scenario file: " + path);
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_scenario(text.str());
}

std::string serialize_scenario(const Scenario& s) {
    json j;
    j["schema"] = s.schema;
    j["node_count"] = s.node_count;
    j["terrain"] = {{"width", s.terrain.width}, {"height", s.terrain.height}};
    j["range_m"] = s.range_m;
    j["max_speed_mps"] = s.max_speed_mps;
    j["pause_s"] = s.pause_s;
    j["duration_s"] = s.duration_s;
    j["protocol"] = to_string(s.protocol);
    j["alpha"] = s.alpha;
    j["t_net"] = s.t_net;
    j["k_nodes"] = s.k_nodes;
    j["rreq_wait_s"] = s.rreq_wait_s;
    j["rrep_wait_s"] = s.rrep_wait_s;
    j["hello_interval_s"] = s.hello_interval_s;
    j["lifetime_n"] = s.lifetime_n;
    j["seeds"] = s.seeds;
    j["energy_init"] = {{"min", s.energy_init_min}, {"max", s.energy_init_max}};
    j["radio"] = {{"tx_power_w", s.radio.tx_power_w},
                  {"rx_power_w", s.radio.rx_power_w},
                  {"bitrate_bps", s.radio.bitrate_bps}};
    j["mac"] = {{"per_hop_delay_base_s", s.mac.per_hop_delay_base},
                {"per_hop_jitter_s", s.mac.per_hop_jitter},
                {"loss_probability", s.mac.loss_probability}};
    if (const RandomFlows* rf = std::get_if<RandomFlows>(&s.flows)) {
        j["flows"] = "random:" + std::to_string(rf->count);
    } else {
        json list = json::array();
        for (const FlowSpec& f : std::get<std::vector<FlowSpec>>(s.flows)) {
            list.push_back({{"source", f.source},
                            {"destination", f.destination},
                            {"rate_pps", f.rate_pps},
                            {"payload_bytes", f.payload_bytes},
                            {"start_s", f.start},
                            {"stop_s", f.stop}});
        }
        j["flows"] = list;
    }
    return j.dump(2) + "\n";
}

void validate_scenario(const Scenario& s) {
    if (s.node_count < 2 || s.node_count > 10000) {
        bad_field("node_count", "need between 2 and 10000 nodes");
    }
    if (s.terrain.width <= 0 || s.terrain.height <= 0) {
        bad_field("terrain", "dimensions must be positive");
    }
    if (s.range_m <= 0) {
        bad_field("range_m", "must be positive");
    }
    if (s.max_speed_mps < 0) {
        bad_field("max_speed_mps", "must be non-negative");
    }
    if (s.pause_s < 0) {
        bad_field("pause_s", "must be non-negative");
    }
    if (s.duration_s <= 0) {
        bad_field("duration_s", "must be positive");
    }
    if (!(s.alpha > 0.0 && s.alpha < 1.0)) {
        bad_field("alpha", "must lie in (0,1)");
    }
    if (!(s.t_net > 0.0 && s.t_net < 1.0)) {
        bad_field("t_net", "must lie in (0,1)");
    }
    if (s.k_nodes < 1) {
        bad_field("k_nodes", "must be a positive integer");
    }
    if (s.rreq_wait_s <= 0) {
        bad_field("rreq_wait_s", "must be positive");
    }
    if (s.rrep_wait_s <= 0) {
        bad_field("rrep_wait_s", "must be positive");
    }
    if (s.hello_interval_s <= 0) {
        bad_field("hello_interval_s", "must be positive");
    }
    if (s.seeds.empty()) {
        bad_field("seeds", "need at least one seed");
    }
    if (s.energy_init_min < 0 || s.energy_init_max < s.energy_init_min) {
        bad_field("energy_init", "need 0 <= min <= max");
    }
    if (!s.radio.valid()) {
        bad_field("radio", "powers and bitrate must be positive");
    }
    if (s.mac.per_hop_jitter < 0 || s.mac.per_hop_delay_base < 0) {
        bad_field("mac", "delays must be non-negative");
    }
    if (s.mac.loss_probability < 0 || s.mac.loss_probability >= 1.0) {
        bad_field("mac", "loss_probability must lie in [0,1)");
    }
    if (const auto* list = std::get_if<std::vector<FlowSpec>>(&s.flows)) {
        for (const FlowSpec& f : *list) {
            if (f.source >= s.node_count || f.destination >= s.node_count) {
                bad_field("flows", "flow endpoint out of range");
            }
            if (f.source == f.destination) {
                bad_field("flows", "flow source equals destination");
            }
            if (f.rate_pps <= 0) {
                bad_field("flows", "rate_pps must be positive");
            }
            if (f.payload_bytes < 1 || f.payload_bytes > 65536) {
                bad_field("flows", "payload_bytes must lie in 1..65536");
            }
            const Seconds stop = f.stop < 0 ? s.duration_s : f.stop;
            if (f.start < 0 || f.start > stop) {
                bad_field("flows", "need 0 <= start_s <= stop_s");
            }
        }
    } else if (std::get<RandomFlows>(s.flows).count < 1) {
        bad_field("flows", "random flow count must be positive");
    }
}

} // namespace manetsim
