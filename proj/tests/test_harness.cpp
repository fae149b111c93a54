#include <cstdlib>
#include <sstream>

#include "doctest.h"
#include "emdlsh/emd.hpp"
#include "emdlsh/errors.hpp"
#include "emdlsh/harness/config.hpp"
#include "emdlsh/harness/dataset_io.hpp"
#include "emdlsh/harness/generators.hpp"
#include "emdlsh/harness/stats.hpp"
#include "emdlsh/harness/suites.hpp"
#include "emdlsh/parallel.hpp"

using namespace emdlsh;

namespace {

ExperimentConfig small_config(Mode mode) {
    ExperimentConfig cfg;
    cfg.mode = mode;
    cfg.n = 12;
    cfg.s = 3;
    cfg.d = 6;
    cfg.delta = 5;
    cfg.generator.clusters = 3;
    cfg.generator.radius = 2;
    return cfg;
}

Dataset round_trip(const Dataset& data, std::optional<Mode> expected = std::nullopt) {
    std::stringstream ss;
    write_dataset(ss, data);
    return read_dataset(ss, expected);
}

}  // namespace

TEST_CASE("dataset round trip is bit-exact in every mode") {
    for (Mode m : {Mode::hypercube, Mode::grid, Mode::real}) {
        const Dataset data = gen_clustered(small_config(m), 3);
        const Dataset back = round_trip(data, m);
        CHECK(back == data);
        CHECK(back.mode() == m);
    }
    const Dataset awkward(std::vector<PointSet>{PointSet({Vector::real({0.1, 1.0 / 3.0, -2.5e-300, 1e300})})});
    CHECK(round_trip(awkward) == awkward);
}

TEST_CASE("dataset header and format errors") {
    std::stringstream empty;
    CHECK_THROWS_AS(read_dataset(empty), FormatError);
    std::stringstream ss;
    write_dataset(ss, gen_clustered(small_config(Mode::grid), 4));
    try {
        read_dataset(ss, Mode::hypercube);
        FAIL("mode mismatch accepted");
    } catch (const FormatError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("grid") != std::string::npos);
        CHECK(msg.find("hypercube") != std::string::npos);
    }
    auto bad = [](const char* text) {
        std::stringstream in(text);
        CHECK_THROWS_AS(read_dataset(in), FormatError);
    };
    bad("EMDSET v2 hypercube 1 1 2\n0 1\n");
    bad("EMDSET v1 hypercube 1 1 2\n0 2\n");
    bad("EMDSET v1 hypercube 1 1 2\n0\n");
    bad("EMDSET v1 hypercube 2 1 2\n0 1\n");
    bad("EMDSET v1 grid 1 1 2\n1 1\n");
    bad("EMDSET v1 grid 1 1 2 4\n1 5\n");
    bad("EMDSET v1 real 1 2 2\n0.5 x\n1 1\n");
    bad("EMDSET v1 real 1 2 2\n0.5 1\n\n1 1\n");
    bad("EMDSET v1 real 1 1 2\n0.5 1\n\n1 1\n");
    std::stringstream ok("EMDSET v1 grid 2 1 2 4\n1 4\n\n2 3\n\n");
    const Dataset d = read_dataset(ok);
    CHECK(d.n() == 2);
    CHECK(d.delta() == 4);
    CHECK(d[1][0][1] == 3.0);
}

TEST_CASE("config parsing, validation and overrides") {
    const auto cfg = ExperimentConfig::from_yaml_text(
        "mode: grid\nn: 50\ns: 2\nd: 8\ndelta: 6\nseed: 9\ntrials: 40\n"
        "generator: {kind: planted, clusters: 5, radius: 1, queries: 7, far_margin: 3}\n"
        "params: {r: 5, c: 2, p1: 0.7, p2: 0.3}\n");
    CHECK(cfg.mode == Mode::grid);
    CHECK(cfg.n == 50);
    CHECK(cfg.delta == 6);
    CHECK(cfg.generator.kind == GeneratorKind::planted);
    CHECK(cfg.generator.queries == 7);
    CHECK(cfg.p2 == doctest::Approx(0.3));
    CHECK(ExperimentConfig::from_yaml_text("").n == ExperimentConfig{}.n);
    CHECK_THROWS_AS(ExperimentConfig::from_yaml_text("n: 0\n"), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_yaml_text("params: {p1: 0.2, p2: 0.5}\n"), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_yaml_text("bogus: 1\n"), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_yaml_text("mode: torus\n"), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_yaml_text("n: [1, 2\n"), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_yaml_text("n: abc\n"), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::load("/nonexistent/cfg.yaml"), ConfigError);

    ExperimentConfig c = cfg;
    ConfigOverrides o;
    o.seed = 77;
    o.trials = 3;
    o.mode = Mode::hypercube;
    o.out = "x.txt";
    apply_overrides(c, o);
    CHECK(c.seed == 77);
    CHECK(c.trials == 3);
    CHECK(c.mode == Mode::hypercube);
    CHECK(c.out == "x.txt");
    CHECK(c.digest() != cfg.digest());
    CHECK(cfg.digest() == ExperimentConfig(cfg).digest());
}

TEST_CASE("clustered generator") {
    ExperimentConfig cfg = small_config(Mode::hypercube);
    cfg.generator.radius = 0;
    const Dataset same = gen_clustered(cfg, 5);
    for (std::size_t i = cfg.generator.clusters; i < cfg.n; ++i) CHECK(same[i] == same[i % cfg.generator.clusters]);
    cfg.generator.radius = 2;
    for (Mode m : {Mode::hypercube, Mode::grid, Mode::real}) {
        cfg.mode = m;
        const Dataset data = gen_clustered(cfg, 6);
        CHECK(data.n() == cfg.n);
        CHECK(data.mode() == m);
        CHECK(data == gen_clustered(cfg, 6));
        // Every point lies within s * radius of its cluster's other members' centers: 2 s radius pairwise.
        for (std::size_t i = cfg.generator.clusters; i < cfg.n; ++i)
            CHECK(emd(data[i], data[i % cfg.generator.clusters]) <= 2.0 * static_cast<double>(cfg.s * cfg.generator.radius));
    }
}

TEST_CASE("planted generator") {
    ExperimentConfig cfg = small_config(Mode::hypercube);
    cfg.d = 24;
    cfg.r = 4;
    cfg.generator.queries = 20;
    cfg.generator.far_margin = 2;
    const PlantedBenchmark b = gen_planted(cfg, 7);
    REQUIRE(b.near_queries.size() == 20);
    REQUIRE(b.far_queries.size() == 20);
    for (std::size_t i = 0; i < b.near_queries.size(); ++i) {
        const double e = emd_exact(b.near_queries[i], b.data[b.near_index[i]]).cost;
        CHECK(e <= cfg.r);
        CHECK(e == b.near_emd[i]);
        CHECK(emd_bruteforce(b.near_queries[i], b.data[b.near_index[i]]) == e);
    }
    for (const auto& z : b.far_queries)
        for (const auto& p : b.data.points()) CHECK(emd_exact(p, z).cost >= cfg.generator.far_margin * cfg.r);
    cfg.r = 2;  // fewer flips than elements
    CHECK_THROWS_AS(gen_planted(cfg, 7), ConfigError);
    cfg.r = 4;
    cfg.mode = Mode::real;
    CHECK_THROWS_AS(gen_planted(cfg, 7), ConfigError);
    cfg.mode = Mode::hypercube;
    cfg.generator.far_margin = 50;
    CHECK_THROWS_AS(gen_planted(cfg, 7), ConfigError);
}

TEST_CASE("stats helpers") {
    CHECK(stats::binomial_sigma(0.5, 100) == doctest::Approx(0.05));
    CHECK(stats::sign_test_pvalue(10, 0) == doctest::Approx(1.0 / 1024));
    CHECK(stats::sign_test_pvalue(0, 0) == 1.0);
    const auto r = stats::Record::check("x", 0.79, stats::Relation::at_least, 0.8, 0.02, 0.01, 100);
    CHECK(r.pass);
    CHECK(!stats::Record::check("x", 0.81, stats::Relation::at_most, 0.8, 0.0, 0.0, 1).pass);
    stats::StatsReport rep;
    rep.suite = "t";
    rep.add(r);
    std::ostringstream os;
    rep.write(os);
    CHECK(os.str().find("record=x") != std::string::npos);
    CHECK(rep.all_pass());
}

TEST_CASE("suites are reproducible and pass on small configs") {
    ExperimentConfig cfg = small_config(Mode::hypercube);
    cfg.d = 8;
    cfg.trials = 400;
    const auto a = run_collision_suite(cfg), b = run_collision_suite(cfg);
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) CHECK(a.records[i].estimate == b.records[i].estimate);
    CHECK(a.all_pass());
    // Zero-distance pairs never separate.
    for (const auto& r : a.records)
        if (r.name.rfind("dind.emd=0.", 0) == 0 || r.name == "grid_hash.dist=0.abs_error") CHECK(r.estimate == 0.0);
    cfg.trials = 40;
    const auto dist = run_distortion_suite(cfg);
    CHECK(dist.records.size() == 2);
    ExperimentConfig grid = small_config(Mode::grid);
    grid.trials = 100;
    CHECK(run_collision_suite(grid).all_pass());
}

TEST_CASE("reports do not depend on the worker count") {
    ExperimentConfig cfg = small_config(Mode::hypercube);
    cfg.trials = 60;
    auto render = [&] {
        std::ostringstream os;
        run_collision_suite(cfg).write(os);
        run_distortion_suite(cfg).write(os);
        return os.str();
    };
    ::setenv("EMD_LSH_THREADS", "1", 1);
    CHECK(thread_count() == 1);
    const std::string one = render();
    ::setenv("EMD_LSH_THREADS", "3", 1);
    CHECK(thread_count() == 3);
    const std::string three = render();
    ::unsetenv("EMD_LSH_THREADS");
    CHECK(one == three);
}
