#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "manetsim/simulation.hpp"

using namespace manetsim;

namespace {

Scenario small_scenario() {
    Scenario s = parse_scenario("{}");
    s.node_count = 20;
    s.duration_s = 60.0;
    return s;
}

} // namespace

TEST_CASE("identical seed and scenario give byte-identical outputs") {
    const Scenario s = small_scenario();
    Simulation::Options opts;
    opts.trace_messages = true;
    opts.trace_positions = true;
    Simulation first(s, 42, ProtocolMode::AomrLm, opts);
    Simulation second(s, 42, ProtocolMode::AomrLm, opts);
    const RunResult a = first.run();
    const RunResult b = second.run();
    CHECK(summary_csv_row(a.summary) == summary_csv_row(b.summary));
    CHECK(a.message_trace == b.message_trace);
    CHECK(a.position_trace == b.position_trace);
    CHECK(a.exhaustions == b.exhaustions);
}

TEST_CASE("different seeds visit different worlds") {
    const Scenario s = small_scenario();
    Simulation a(s, 1, ProtocolMode::AomrLm);
    Simulation b(s, 2, ProtocolMode::AomrLm);
    CHECK((a.world().position(0, 0.0).x != b.world().position(0, 0.0).x ||
           a.world().position(0, 0.0).y != b.world().position(0, 0.0).y));
}

TEST_CASE("both protocol arms see the same world under one seed") {
    const Scenario s = small_scenario();
    Simulation a(s, 7, ProtocolMode::AomrLm);
    Simulation b(s, 7, ProtocolMode::Aomdv);
    for (NodeId n = 0; n < 20; ++n) {
        CHECK(a.world().position(n, 0.0).x == b.world().position(n, 0.0).x);
        CHECK(a.world().initial_energy(n) == b.world().initial_energy(n));
    }
    REQUIRE(a.flows().size() == 1);
    CHECK(a.flows()[0].source == b.flows()[0].source);
    CHECK(a.flows()[0].destination == b.flows()[0].destination);

    // mobility draws stay aligned while the protocols diverge
    a.run_until(30.0);
    b.run_until(30.0);
    for (NodeId n = 0; n < 20; ++n) {
        CHECK(a.world().position(n, 30.0).x == b.world().position(n, 30.0).x);
        CHECK(a.world().position(n, 30.0).y == b.world().position(n, 30.0).y);
    }
}

TEST_CASE("energy is conserved to 1e-9 and both ledgers agree") {
    Scenario s = small_scenario();
    s.energy_init_min = 0.05; // force exhaustions
    s.energy_init_max = 0.4;
    Simulation sim(s, 3, ProtocolMode::AomrLm);
    const RunResult r = sim.run();
    CHECK(r.ledger_error <= 1e-9);
    CHECK(r.cross_ledger_error <= 1e-9);
    for (NodeId n = 0; n < sim.node_count(); ++n) {
        const World& w = sim.world();
        CHECK(std::abs(w.initial_energy(n) - w.residual(n) - w.consumed(n)) <=
              1e-9 * w.initial_energy(n));
    }
}

TEST_CASE("a 4 pkt/s flow over 300 s offers exactly 1200 packets") {
    Scenario s = parse_scenario(R"({
        "node_count": 2,
        "terrain": {"width": 100, "height": 100},
        "max_speed_mps": 0,
        "flows": [{"source": 0, "destination": 1}]
    })");
    Simulation sim(s, 5, ProtocolMode::AomrLm);
    const RunResult r = sim.run();
    CHECK(r.summary.sent == 1200);
    CHECK(r.summary.delivered > 1100); // two adjacent nodes: nearly everything lands
    CHECK(r.summary.delivery_ratio > 0.9);
    REQUIRE(r.summary.mean_delay.has_value());
    CHECK(*r.summary.mean_delay < 0.05); // early packets sat out the discovery
}

TEST_CASE("baseline route choice ignores battery sizes") {
    Scenario lean = small_scenario();
    lean.max_speed_mps = 0.0; // static so routes stay put
    Scenario rich = lean;
    rich.energy_init_min = 100.0;
    rich.energy_init_max = 600.0;
    Simulation a(lean, 9, ProtocolMode::Aomdv);
    Simulation b(rich, 9, ProtocolMode::Aomdv);
    a.run_until(10.0);
    b.run_until(10.0);
    const CbrFlow& flow = a.flows()[0];
    const SourcePathSet* sa = a.node(flow.source).path_set(flow.destination);
    const SourcePathSet* sb = b.node(flow.source).path_set(flow.destination);
    if (sa == nullptr) {
        CHECK(sb == nullptr); // disconnected either way
        return;
    }
    REQUIRE(sb != nullptr);
    REQUIRE(sa->routes.size() == sb->routes.size());
    for (std::size_t i = 0; i < sa->routes.size(); ++i) {
        CHECK(sa->routes[i].nexthop == sb->routes[i].nexthop);
        CHECK(sa->routes[i].trace == sb->routes[i].trace); // same physical paths
    }
    if (sa->active) {
        REQUIRE(sb->active.has_value());
        CHECK(sa->active->nexthop == sb->active->nexthop);
    }
}

TEST_CASE("a zero-length flow offers nothing") {
    Scenario s = parse_scenario(R"({
        "node_count": 2,
        "terrain": {"width": 100, "height": 100},
        "duration_s": 30,
        "flows": [{"source": 0, "destination": 1, "start_s": 5, "stop_s": 5}]
    })");
    Simulation sim(s, 5, ProtocolMode::AomrLm);
    const RunResult r = sim.run();
    CHECK(r.summary.sent == 0);
    CHECK(r.summary.delivered == 0);
}

TEST_CASE("exhaustion timestamps arrive in order and feed the lifetime metric") {
    Scenario s = small_scenario();
    s.energy_init_min = 0.03;
    s.energy_init_max = 0.25;
    s.duration_s = 120.0;
    Simulation sim(s, 11, ProtocolMode::Aomdv);
    const RunResult r = sim.run();
    Seconds prev = 0.0;
    for (const auto& [node, t] : r.exhaustions) {
        CHECK(t >= prev);
        prev = t;
    }
    if (r.exhaustions.size() >= 3) {
        CHECK(r.summary.lifetime == r.exhaustions[2].second);
    }
}
