#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "relmas/core.hpp"
#include "relmas/rational.hpp"
#include "relmas/rng.hpp"

using namespace relmas;

TEST_CASE("absolute deadline is arrival plus qos latency") {
    CHECK(absolute_deadline(Job(1, 0, 100, 50, QosLevel::Medium)) == 150);
    CHECK(absolute_deadline(Job(2, 0, 0, 1, QosLevel::Low)) == 1);
}

TEST_CASE("job with zero qos latency is rejected at construction") {
    CHECK_THROWS_AS(Job(3, 0, 7, 0, QosLevel::High), ConfigError);
    CHECK_THROWS_AS(Job(3, 0, -1, 5, QosLevel::High), ConfigError);
}

TEST_CASE("phase transitions allow only pending->running->finished and pending->dropped") {
    CHECK(phase_transition_ok(Phase::Pending, Phase::Running));
    CHECK(phase_transition_ok(Phase::Pending, Phase::Dropped));
    CHECK(phase_transition_ok(Phase::Running, Phase::Finished));
    CHECK_FALSE(phase_transition_ok(Phase::Running, Phase::Pending));
    CHECK_FALSE(phase_transition_ok(Phase::Running, Phase::Dropped));
    CHECK_FALSE(phase_transition_ok(Phase::Finished, Phase::Running));
    CHECK_FALSE(phase_transition_ok(Phase::Dropped, Phase::Pending));
    CHECK_FALSE(phase_transition_ok(Phase::Finished, Phase::Finished));
}

namespace {

ReadyEntry entry(std::int64_t job, int layer, std::int64_t deadline) {
    ReadyEntry e;
    e.job_id = job;
    e.layer_id = layer;
    e.deadline = deadline;
    e.qos = deadline;
    return e;
}

}  // namespace

TEST_CASE("validate_snapshot accepts a sorted live queue") {
    SystemSnapshot s;
    s.now = 10;
    s.busy_until = {0, 5};
    s.ready_queue = {entry(1, 0, 20), entry(1, 1, 20), entry(2, 0, 30)};
    CHECK(validate_snapshot(s).empty());
}

TEST_CASE("validate_snapshot flags duplicates, expiry, and order breaks") {
    SystemSnapshot s;
    s.now = 10;
    s.busy_until = {0};

    s.ready_queue = {entry(1, 0, 20), entry(1, 0, 20)};
    auto problems = validate_snapshot(s);
    REQUIRE(problems.size() == 1);
    CHECK(problems[0].find("duplicate") != std::string::npos);

    s.ready_queue = {entry(1, 0, 9)};
    problems = validate_snapshot(s);
    REQUIRE(problems.size() == 1);
    CHECK(problems[0].find("expired") != std::string::npos);

    s.ready_queue = {entry(2, 0, 30), entry(1, 0, 20)};
    problems = validate_snapshot(s);
    REQUIRE(problems.size() == 1);
    CHECK(problems[0].find("order") != std::string::npos);
}

TEST_CASE("deadline order breaks ties by job then layer") {
    ReadyEntry a = entry(1, 1, 20);
    ReadyEntry b = entry(1, 0, 20);
    CHECK(deadline_order(b, a));
    CHECK_FALSE(deadline_order(a, b));
    ReadyEntry c = entry(2, 0, 20);
    CHECK(deadline_order(a, c));
}

TEST_CASE("default mas has six cores sharing 16 bytes per cycle") {
    MasConfig cfg = default_mas_config();
    CHECK(cfg.num_sas() == 6);
    CHECK(cfg.dram_bandwidth_bytes_per_cycle == 16);
    std::int64_t total_macs = 0;
    for (const auto& sa : cfg.sas) total_macs += sa.peak_macs_per_cycle();
    CHECK(total_macs == 2048);
    int rs = 0;
    for (const auto& sa : cfg.sas)
        if (sa.dataflow == Dataflow::RowStationary) ++rs;
    CHECK(rs == 3);
}

TEST_CASE("mas validation rejects mixed clock domains and bad ids") {
    MasConfig cfg = default_mas_config();
    cfg.sas[3].frequency_hz = 2e9;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);

    cfg = default_mas_config();
    cfg.sas[1].id = 5;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);

    cfg = default_mas_config();
    cfg.dram_bandwidth_bytes_per_cycle = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("model json loads objects and arrays") {
    auto models = load_models_json_text(
        R"({"name":"tiny","layers":[{"macs":100,"input_bytes":8,"weight_bytes":16,"output_bytes":4}]})");
    REQUIRE(models.size() == 1);
    CHECK(models[0].name == "tiny");
    CHECK(models[0].layers[0].macs == 100);
    CHECK(models[0].layers[0].total_bytes() == 28);

    models = load_models_json_text(
        R"([{"name":"a","layers":[{"macs":1}]},{"name":"b","layers":[{"macs":2},{"macs":3}]}])");
    REQUIRE(models.size() == 2);
    CHECK(models[1].model_id == 1);
    CHECK(models[1].num_layers() == 2);
}

TEST_CASE("model json rejects malformed documents") {
    CHECK_THROWS_AS(load_models_json_text("not json"), ConfigError);
    CHECK_THROWS_AS(load_models_json_text("[]"), ConfigError);
    CHECK_THROWS_AS(load_models_json_text(R"({"name":"x"})"), ConfigError);
    CHECK_THROWS_AS(load_models_json_text(R"({"name":"x","layers":[{"macs":0}]})"),
                    ConfigError);
}

TEST_CASE("rational helpers: construction, floor, ceil") {
    Rat r = make_rat(7, 2);
    CHECK(rat_floor(r) == 3);
    CHECK(rat_ceil(r) == 4);
    CHECK(rat_floor(make_rat(-7, 2)) == -4);
    CHECK(rat_ceil(make_rat(-7, 2)) == -3);
    CHECK(rat_ceil(make_rat(6, 2)) == 3);
    CHECK_THROWS(make_rat(1, 0));
}

TEST_CASE("rational decimal parsing is exact") {
    CHECK(rat_from_decimal("0.75") == make_rat(3, 4));
    CHECK(rat_from_decimal("0.85") == make_rat(17, 20));
    CHECK(rat_from_decimal("1.3") == make_rat(13, 10));
    CHECK(rat_from_decimal("-2.5") == make_rat(-5, 2));
    CHECK(rat_from_decimal("16") == make_rat(16, 1));
    CHECK_THROWS(rat_from_decimal("1e3"));
    CHECK_THROWS(rat_from_decimal(""));
    CHECK_THROWS(rat_from_decimal("1.2.3"));
}

TEST_CASE("rational decimal rendering round-trips common values") {
    CHECK(rat_to_decimal(make_rat(3, 4), 6) == "0.75");
    CHECK(rat_to_decimal(make_rat(1, 3), 4) == "0.3333");
    CHECK(rat_to_decimal(make_rat(10, 1), 6) == "10");
    CHECK(rat_to_decimal(make_rat(-1, 8), 6) == "-0.125");
}

TEST_CASE("rng streams are deterministic and seed-separated") {
    Rng a(42), b(42), c(43);
    bool all_equal = true;
    bool any_diff_seed = false;
    for (int i = 0; i < 100; ++i) {
        double x = a.uniform01();
        if (x != b.uniform01()) all_equal = false;
        if (x != c.uniform01()) any_diff_seed = true;
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
    }
    CHECK(all_equal);
    CHECK(any_diff_seed);
    CHECK(mix_seed(7, 0) != mix_seed(7, 1));
    CHECK(mix_seed(7, 0) == mix_seed(7, 0));
}

TEST_CASE("rng uniform_int stays in range and hits all buckets") {
    Rng r(123);
    std::vector<int> counts(5, 0);
    for (int i = 0; i < 5000; ++i) {
        auto v = r.uniform_int(5);
        REQUIRE(v < 5);
        counts[static_cast<int>(v)]++;
    }
    for (int c : counts) CHECK(c > 800);
}

TEST_CASE("rng gaussian has sane first moments") {
    Rng r(7);
    double sum = 0, sq = 0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        double g = r.gaussian();
        sum += g;
        sq += g * g;
    }
    double mean = sum / n;
    double var = sq / n - mean * mean;
    CHECK(std::abs(mean) < 0.05);
    CHECK(std::abs(var - 1.0) < 0.05);
}

TEST_CASE("pareto draws respect the scale floor and heavy tail") {
    Rng r(9);
    double scale = 100.0;
    double max_seen = 0;
    for (int i = 0; i < 10000; ++i) {
        double v = r.pareto(1.5, scale);
        REQUIRE(v >= scale);
        max_seen = std::max(max_seen, v);
    }
    CHECK(max_seen > 10 * scale);
}
