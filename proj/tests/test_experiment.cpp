#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "manetsim/experiment.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace manetsim;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        out.push_back(line);
    }
    return out;
}

Scenario tiny_scenario() {
    Scenario s = parse_scenario("{}");
    s.node_count = 12;
    s.duration_s = 20.0;
    s.seeds = {1, 2, 3};
    return s;
}

} // namespace

TEST_CASE("alpha table identities and formats") {
    const auto rows = alpha_table(0.3, {1, 2});
    CHECK(rows[0].alpha_min == 0.3); // k = 1: the bound is t_net itself
    CHECK(rows[1].alpha_min == doctest::Approx(std::sqrt(0.3)).epsilon(1e-12));
    CHECK_FALSE(rows[0].reference.has_value());

    const auto table = alpha_table(0x1.0p-40, {50, 90});
    CHECK(table[0].alpha_min == doctest::Approx(0.574).epsilon(0.002 / 0.574));
    CHECK(std::abs(table[1].alpha_min - 0.734) <= 0.002);
    CHECK_FALSE(table[0].divergent);

    const std::string csv = alpha_table_csv(table);
    const auto lines = lines_of(csv);
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "k,alpha_min,reference,divergent");
    CHECK(lines[1].substr(0, 3) == "50,");
}

TEST_CASE("an experiment writes one row per run plus one aggregate row per protocol") {
    ExperimentPlan plan;
    plan.scenario = tiny_scenario();
    plan.protocols = {ProtocolMode::AomrLm, ProtocolMode::Aomdv};
    const ExperimentOutcome outcome = run_experiment(plan);
    CHECK(outcome.failures == 0);
    CHECK(outcome.runs.size() == 6);
    const auto lines = lines_of(outcome.summary_csv);
    REQUIRE(lines.size() == 1 + 6 + 2); // header + runs + aggregates
    CHECK(lines[0] == summary_csv_header());
    CHECK(lines[7].substr(0, 5) == "mean,");
    CHECK(lines[8].substr(0, 5) == "mean,");

    // aggregates equal an independent recomputation from the per-run rows
    for (const ProtocolAggregate& agg : outcome.aggregates) {
        double lifetime = 0.0, energy = 0.0, ratio = 0.0;
        std::size_t n = 0;
        for (const ExperimentRun& run : outcome.runs) {
            if (std::string(to_string(run.protocol)) != agg.protocol) {
                continue;
            }
            lifetime += run.result.summary.lifetime_or_duration();
            energy += run.result.summary.mean_energy;
            ratio += run.result.summary.delivery_ratio;
            ++n;
        }
        REQUIRE(n == agg.runs);
        CHECK(agg.lifetime_mean == doctest::Approx(lifetime / n).epsilon(1e-12));
        CHECK(agg.energy_mean == doctest::Approx(energy / n).epsilon(1e-12));
        CHECK(agg.ratio_mean == doctest::Approx(ratio / n).epsilon(1e-12));
    }
}

TEST_CASE("curves: A/B output gives two series on a shared grid") {
    const fs::path out = fs::temp_directory_path() / "manetsim_curve_test";
    fs::remove_all(out);
    ExperimentPlan plan;
    plan.scenario = tiny_scenario();
    plan.protocols = {ProtocolMode::AomrLm, ProtocolMode::Aomdv};
    plan.out_dir = (out / "exp").string();
    run_experiment(plan);

    const auto written = emit_curves((out / "exp").string(), (out / "curves").string());
    CHECK(written.size() == 4);
    const auto exhausted = lines_of(slurp(out / "curves" / "exhausted_vs_time.csv"));
    REQUIRE(exhausted.size() > 1);
    CHECK(exhausted[0] == "x,y,series");
    bool saw_a = false, saw_b = false;
    for (std::size_t i = 1; i < exhausted.size(); ++i) {
        if (exhausted[i].find(",aomr-lm") != std::string::npos) saw_a = true;
        if (exhausted[i].find(",aomdv") != std::string::npos) saw_b = true;
    }
    CHECK(saw_a);
    CHECK(saw_b);
    // shared grid: both series have the same number of samples
    const std::size_t rows = exhausted.size() - 1;
    CHECK(rows % 2 == 0);

    const auto alpha = lines_of(slurp(out / "curves" / "alpha_vs_k.csv"));
    CHECK(alpha.size() == 11); // header + the ten standard k values
    fs::remove_all(out);
}

TEST_CASE("curves from an empty run directory are header-only") {
    const fs::path out = fs::temp_directory_path() / "manetsim_curve_empty";
    fs::remove_all(out);
    fs::create_directories(out / "nothing");
    const auto written = emit_curves((out / "nothing").string(), (out / "curves").string());
    CHECK(written.size() == 4);
    const auto exhausted = lines_of(slurp(out / "curves" / "exhausted_vs_time.csv"));
    REQUIRE(exhausted.size() >= 1);
    CHECK(exhausted[0] == "x,y,series");
    CHECK(exhausted.size() == 1);
    const auto delay = lines_of(slurp(out / "curves" / "delay_vs_nodes.csv"));
    CHECK(delay.size() == 1);
    fs::remove_all(out);
}
