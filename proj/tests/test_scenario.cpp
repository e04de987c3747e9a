#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "manetsim/scenario.hpp"

using namespace manetsim;

TEST_CASE("an empty scenario is the standard default and round-trips") {
    const Scenario a = parse_scenario("{}");
    CHECK(a.node_count == 50);
    CHECK(a.terrain.width == 840.0);
    CHECK(a.terrain.height == 840.0);
    CHECK(a.range_m == 250.0);
    CHECK(a.max_speed_mps == 5.0);
    CHECK(a.duration_s == 300.0);
    CHECK(a.protocol == ProtocolMode::AomrLm);
    CHECK(a.alpha == 0.42);
    CHECK(a.t_net == 0x1.0p-40);
    CHECK(a.k_nodes == 35);
    CHECK(a.rreq_wait_s == 1.0);
    CHECK(a.rrep_wait_s == 1.0);
    CHECK(a.energy_init_min == 10.0);
    CHECK(a.energy_init_max == 60.0);
    CHECK(a.radio.tx_power_w == doctest::Approx(0.2818));
    CHECK(a.radio.bitrate_bps == 2e6);
    CHECK(a.effective_lifetime_n() == 3); // ceil(5% of 50)

    const Scenario b = parse_scenario(serialize_scenario(a));
    CHECK(a == b);
    const Scenario c = parse_scenario(serialize_scenario(b));
    CHECK(b == c);
}

TEST_CASE("explicit fields override defaults and round-trip") {
    const char* text = R"({
      "node_count": 30,
      "protocol": "aomdv",
      "seeds": [7, 8, 9],
      "energy_init": {"min": 0.5, "max": 2.0},
      "flows": [{"source": 0, "destination": 5, "rate_pps": 2.0}],
      "lifetime_n": 2
    })";
    const Scenario s = parse_scenario(text);
    CHECK(s.node_count == 30);
    CHECK(s.protocol == ProtocolMode::Aomdv);
    CHECK(s.seeds == std::vector<std::uint64_t>{7, 8, 9});
    CHECK(s.energy_init_min == 0.5);
    CHECK(s.effective_lifetime_n() == 2);
    const auto& flows = std::get<std::vector<FlowSpec>>(s.flows);
    REQUIRE(flows.size() == 1);
    CHECK(flows[0].rate_pps == 2.0);
    CHECK(flows[0].stop == -1.0); // resolved to the duration at run time
    CHECK(parse_scenario(serialize_scenario(s)) == s);
}

TEST_CASE("a seed count expands to 1..k") {
    const Scenario s = parse_scenario(R"({"seeds": 4})");
    CHECK(s.seeds == std::vector<std::uint64_t>{1, 2, 3, 4});
}

TEST_CASE("random flow specs parse") {
    const Scenario s = parse_scenario(R"({"flows": "random:3"})");
    CHECK(std::get<RandomFlows>(s.flows).count == 3);
}

TEST_CASE("validation diagnostics name the offending field") {
    auto error_of = [](const char* text) {
        try {
            parse_scenario(text);
        } catch (const ScenarioError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    CHECK(error_of(R"({"node_count": 0})").find("node_count") != std::string::npos);
    CHECK(error_of(R"({"alpha": 1.5})").find("alpha") != std::string::npos);
    CHECK(error_of(R"({"t_net": 0})").find("t_net") != std::string::npos);
    CHECK(error_of(R"({"seeds": []})").find("seeds") != std::string::npos);
    CHECK(error_of(R"({"energy_init": {"min": 5, "max": 1}})").find("energy_init") !=
          std::string::npos);
    CHECK(error_of(R"({"flows": [{"source": 0, "destination": 0}]})").find("flows") !=
          std::string::npos);
    CHECK(error_of(R"({"flows": [{"source": 0, "destination": 99}]})").find("flows") !=
          std::string::npos);
    CHECK(error_of(R"({"protocol": "zebra"})").find("protocol") != std::string::npos);
    CHECK(error_of(R"({"schema": 2})").find("schema") != std::string::npos);
    CHECK(error_of(R"(not json)").find("JSON") != std::string::npos);
}
