#include <algorithm>

#include "doctest.h"
#include "emdlsh/emd.hpp"
#include "emdlsh/errors.hpp"
#include "emdlsh/metric_reduction.hpp"
#include "support.hpp"

using namespace emdlsh;
using namespace testsupport;

namespace {
constexpr double kSigmas = 3.0;
}

TEST_CASE("grid hash is deterministic") {
    CounterRng rng(10);
    const GridHash g = GridHash::sample(3, 2.5, rng);
    const Vector a = Vector::real({0.3, 1.7, -2.0});
    CHECK(grid_hash_eval(g, a) == grid_hash_eval(g, a));
    CHECK(g.offset >= 0.0);
    CHECK(g.offset <= g.cell_width);
    CHECK_THROWS_AS(GridHash::sample(3, 0.0, rng), ParameterError);
}

TEST_CASE("grid hash separation law below and above R") {
    const double R = 10.0;
    const std::size_t N = 100000;
    const Vector a = Vector::real({0.0, 0.0});
    for (double dist : {1.0, 3.0, 7.5}) {
        const Vector b = Vector::real({dist * 0.4, dist * 0.6});
        CounterRng rng(11, "grid-law", static_cast<std::uint64_t>(dist * 10));
        std::size_t differ = 0;
        for (std::size_t i = 0; i < N; ++i) {
            const GridHash g = GridHash::sample(2, R, rng);
            differ += grid_hash_eval(g, a) != grid_hash_eval(g, b);
        }
        const double p = dist / (2.0 * R);
        CHECK(std::fabs(static_cast<double>(differ) / N - p) <= kSigmas * binomial_sigma(p, N));
    }
    const Vector far = Vector::real({12.0, 3.0});
    CounterRng rng(12);
    std::size_t differ = 0;
    for (std::size_t i = 0; i < N; ++i) {
        const GridHash g = GridHash::sample(2, R, rng);
        differ += grid_hash_eval(g, a) != grid_hash_eval(g, far);
    }
    CHECK(static_cast<double>(differ) / N > 0.5 + kSigmas * binomial_sigma(0.5, N));
}

TEST_CASE("threshold bits formula") {
    CHECK(threshold_bits(3, 4.0, 0.1, 1.0) ==
          static_cast<std::size_t>(std::ceil(64.0 * 144.0 * std::log(2.0 * 9.0 / 0.1))));
    CHECK(threshold_bits(3, 4.0, 0.1, 0.5) > threshold_bits(3, 4.0, 0.1, 1.0));
    CHECK_THROWS_AS(sample_threshold_map(3, 8, 3.0, 1.0, 0.1, 1), ParameterError);
    CHECK_THROWS_AS(sample_threshold_map(3, 8, 4.0, 1.0, 1.5, 1), ParameterError);
}

TEST_CASE("threshold map construction contract") {
    const ThresholdMap f = sample_threshold_map(2, 4, 4.0, 2.0, 0.2, 13, 4.0);
    CHECK(f.R() == doctest::Approx(8.0));
    CHECK(f.r() == doctest::Approx(static_cast<double>(f.t()) / (1.99 * 4.0)));
    const Vector a = Vector::real({0.1, 0.5, -3.0, 2.0});
    const PointSet x({a, a});
    const PointSet fx = threshold_map_apply(f, x);
    CHECK(fx.s() == 2);
    CHECK(fx.dim() == f.t());
    CHECK(fx.mode() == Mode::hypercube);
    CHECK(fx[0] == fx[1]);
    CHECK(threshold_map_apply(f, x) == fx);
    CHECK_THROWS_AS(f.apply(Vector::real({1.0})), InvalidInput);
}

TEST_CASE("lazy sign tables: query order does not matter") {
    const ThresholdMap f = sample_threshold_map(2, 3, 4.0, 1.5, 0.2, 14, 6.0);
    CounterRng rng(15);
    std::vector<Vector> pts;
    for (int i = 0; i < 12; ++i) pts.push_back(Vector::real({rng.uniform(-9, 9), rng.uniform(-9, 9), rng.uniform(-9, 9)}));
    // Materialize a full table (point x bit) in bit-major order, then query
    // in a shuffled point/bit order and compare.
    std::vector<std::vector<bool>> table(pts.size(), std::vector<bool>(f.t()));
    for (std::size_t i = 0; i < f.t(); ++i)
        for (std::size_t p = 0; p < pts.size(); ++p) table[p][i] = f.bit(i, pts[p]);
    std::vector<std::pair<std::size_t, std::size_t>> order;
    for (std::size_t p = 0; p < pts.size(); ++p)
        for (std::size_t i = 0; i < f.t(); ++i) order.emplace_back(p, i);
    std::shuffle(order.begin(), order.end(), rng);
    bool all = true;
    for (auto [p, i] : order) all = all && (f.bit(i, pts[p]) == table[p][i]);
    CHECK(all);
    const ThresholdMap g = sample_threshold_map(2, 3, 4.0, 1.5, 0.2, 14, 6.0);
    CHECK(g.apply(pts[3]) == f.apply(pts[3]));
}

TEST_CASE("concatenated and per-bit laws") {
    // Bits of one map are i.i.d., so frequencies across bits estimate the laws.
    const double tau = 5.0, c = 4.0;  // R = 20
    const ThresholdMap f = sample_threshold_map(3, 4, c, tau, 0.1, 16, 0.5);
    const std::size_t N = f.t();
    const Vector a = Vector::real({0.0, 1.0, 2.0, 3.0});
    for (double dist : {2.0, 6.0, 14.0}) {
        const Vector b = Vector::real({dist / 2, 1.0 + dist / 4, 2.0, 3.0 - dist / 4});
        std::size_t cells_differ = 0, bits_differ = 0;
        for (std::size_t i = 0; i < N; ++i) {
            cells_differ += f.cell_digest(i, a) != f.cell_digest(i, b);
            bits_differ += f.bit(i, a) != f.bit(i, b);
        }
        const double R = f.R();
        const double pc = static_cast<double>(cells_differ) / N, pb = static_cast<double>(bits_differ) / N;
        CHECK(pc >= dist / (2 * R) - kSigmas * binomial_sigma(dist / (2 * R), N));
        CHECK(pc <= dist / R + kSigmas * binomial_sigma(dist / R, N));
        CHECK(pb >= dist / (4 * R) - kSigmas * binomial_sigma(dist / (4 * R), N));
        CHECK(pb <= dist / (2 * R) + kSigmas * binomial_sigma(dist / (2 * R), N));
    }
}

TEST_CASE("threshold map separates near and far pairs (reduced trials)") {
    const double tau = 1.0, c = 4.0, delta = 0.1;
    CounterRng rng(17);
    auto rp = [&] { return Vector::real({rng.uniform(0, 4), rng.uniform(0, 4), rng.uniform(0, 4)}); };
    const PointSet x({rp(), rp(), rp()});
    std::vector<Vector> ne, fe;
    for (const Vector& e : x) {
        ne.push_back(Vector::real({e[0] + 0.3, e[1], e[2]}));
        fe.push_back(Vector::real({e[0] + 3.0, e[1] + 2.0, e[2]}));
    }
    const PointSet near(ne), far(fe);
    REQUIRE(emd(x, near) <= tau);
    REQUIRE(emd(x, far) >= c * tau);
    const int draws = 30;
    int near_ok = 0, far_ok = 0;
    for (int k = 0; k < draws; ++k) {
        const ThresholdMap f = sample_threshold_map(3, 3, c, tau, delta, 1000 + k);
        const PointSet fx = threshold_map_apply(f, x);
        near_ok += emd(fx, threshold_map_apply(f, near)) <= f.r();
        far_ok += emd(fx, threshold_map_apply(f, far)) >= c * f.r() / 3.0;
    }
    CHECK(near_ok >= draws * (1 - delta) - kSigmas * draws * binomial_sigma(1 - delta, draws));
    CHECK(far_ok >= draws * (1 - delta) - kSigmas * draws * binomial_sigma(1 - delta, draws));
}

TEST_CASE("l_p to l_1 map") {
    CounterRng rng(18);
    std::vector<PointSet> data;
    for (int i = 0; i < 4; ++i) {
        const Vector v = random_real(6, rng);
        data.push_back(PointSet({v, v, random_real(6, rng)}));
    }
    const auto same = lp_to_l1(data, 1.0, 0.5, 1);
    CHECK(same == data);
    const auto mapped = lp_to_l1(data, 2.0, 0.5, 2);
    CHECK(mapped.size() == data.size());
    CHECK(mapped[0][0] == mapped[0][1]);
    CHECK(mapped[0].dim() == lp_to_l1_dim(6, 0.5));
    CHECK_THROWS_AS(lp_to_l1(data, 2.5, 0.5, 1), InvalidInput);
    CHECK_THROWS_AS(lp_to_l1(data, 2.0, 1.5, 1), InvalidInput);
    CHECK_THROWS_AS(lp_to_l1(data, 0.9, 0.5, 1), InvalidInput);
}

TEST_CASE("l_2 distances survive the l_1 embedding") {
    const LpToL1Map map(32, 2.0, 0.2, 19);
    CounterRng rng(20);
    int good = 0;
    for (int i = 0; i < 100; ++i) {
        const Vector a = random_real(32, rng), b = random_real(32, rng);
        const double ratio = ground_distance(map.apply(a), map.apply(b), 1.0) / ground_distance(a, b, 2.0);
        good += ratio > 0.75 && ratio < 1.25;
    }
    CHECK(good >= 95);
}

TEST_CASE("l_1.5 embedding is unbiased on average") {
    const LpToL1Map map(8, 1.5, 0.3, 21);
    CounterRng rng(22);
    double sum = 0;
    const int pairs = 200;
    for (int i = 0; i < pairs; ++i) {
        const Vector a = random_real(8, rng), b = random_real(8, rng);
        sum += ground_distance(map.apply(a), map.apply(b), 1.0) / ground_distance(a, b, 1.5);
    }
    // Heavy tails make single pairs noisy; the mean ratio sits near 1.
    CHECK(sum / pairs == doctest::Approx(1.0).epsilon(0.25));
}
