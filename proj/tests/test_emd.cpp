#include <algorithm>
#include <limits>
#include <numeric>

#include "doctest.h"
#include "emdlsh/emd.hpp"
#include "emdlsh/errors.hpp"
#include "support.hpp"

using namespace emdlsh;
using namespace testsupport;

namespace {

// Independent oracle: try every permutation, recompute ground costs inline.
double naive_emd(const PointSet& x, const PointSet& y, double p) {
    std::vector<std::size_t> perm(x.s());
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
        double t = 0;
        for (std::size_t i = 0; i < x.s(); ++i) {
            double acc = 0;
            for (std::size_t k = 0; k < x.dim(); ++k) acc += std::pow(std::fabs(x[i][k] - y[perm[i]][k]), p);
            t += std::pow(acc, 1.0 / p);
        }
        best = std::min(best, t);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

PointSet random_mode_set(Mode m, std::size_t s, std::size_t d, CounterRng& rng) {
    std::vector<Vector> e;
    for (std::size_t i = 0; i < s; ++i) {
        if (m == Mode::hypercube) e.push_back(random_bits(d, rng));
        else if (m == Mode::grid) e.push_back(random_grid(d, 6, rng));
        else e.push_back(random_real(d, rng));
    }
    return PointSet(std::move(e));
}

}  // namespace

TEST_CASE("ground distance examples") {
    CHECK(ground_distance(bits({0, 0, 0}), bits({0, 0, 0})) == 0.0);
    CHECK(ground_distance(bits({1, 0, 1}), bits({0, 0, 1})) == 1.0);
    CHECK(ground_distance(Vector::real({3, 4}), Vector::real({0, 0}), 2.0) == doctest::Approx(5.0));
    CHECK_THROWS_AS(ground_distance(bits({1, 0}), bits({1, 0, 1})), InvalidInput);
    CHECK_THROWS_AS(ground_distance(bits({1, 0}), bits({1, 1}), 2.0), InvalidInput);
    CHECK_THROWS_AS(ground_distance(Vector::real({1}), Vector::real({2}), 2.5), InvalidInput);
}

TEST_CASE("vector and point set validation") {
    CHECK_THROWS_AS(Vector::hypercube({0, 2}), InvalidInput);
    CHECK_THROWS_AS(Vector::grid({0, 1}, 4), InvalidInput);
    CHECK_THROWS_AS(Vector::grid({5}, 4), InvalidInput);
    CHECK_THROWS_AS(PointSet({bits({1, 0}), bits({1})}), InvalidInput);
    CHECK_THROWS_AS(PointSet(std::vector<Vector>{}), InvalidInput);
    CHECK_THROWS_AS(PointSet({bits({1}), Vector::real({1})}), InvalidInput);
    CHECK(parse_mode("grid") == Mode::grid);
    CHECK_THROWS_AS(parse_mode("cube"), InvalidInput);
}

TEST_CASE("emd_exact trivial examples") {
    CounterRng rng(1);
    const PointSet x = random_set(4, 10, rng);
    CHECK(emd_exact(x, x).cost == 0.0);
    const PointSet a({bits({1, 1, 0, 0})}), b({bits({0, 1, 1, 1})});
    CHECK(emd_exact(a, b).cost == 3.0);
    CHECK_THROWS_AS(emd_exact(random_set(3, 4, rng), random_set(2, 4, rng)), InvalidInput);
}

TEST_CASE("brute force examples") {
    const PointSet x({bits({0, 0}), bits({1, 1})}), y({bits({1, 1}), bits({0, 0})});
    CHECK(emd_bruteforce(x, y) == 0.0);
    const PointSet z({bits({0, 0}), bits({0, 0})}), w({bits({1, 0}), bits({0, 1})});
    CHECK(emd_bruteforce(z, w) == 2.0);
    CounterRng rng(2);
    CHECK_THROWS_AS(emd_bruteforce(random_set(9, 3, rng), random_set(9, 3, rng)), OracleSizeError);
}

TEST_CASE("exact solver matches independent enumeration in every mode") {
    CounterRng rng(3);
    for (Mode m : {Mode::hypercube, Mode::grid, Mode::real}) {
        for (std::size_t s = 1; s <= 6; ++s) {
            for (int rep = 0; rep < 40; ++rep) {
                const PointSet x = random_mode_set(m, s, 5, rng), y = random_mode_set(m, s, 5, rng);
                const Matching mt = emd_exact(x, y);
                const double oracle = naive_emd(x, y, 1.0);
                if (m == Mode::real) {
                    CHECK(mt.cost == doctest::Approx(oracle).epsilon(1e-9));
                    CHECK(emd_bruteforce(x, y) == doctest::Approx(oracle).epsilon(1e-9));
                } else {
                    CHECK(mt.cost == oracle);
                    CHECK(emd_bruteforce(x, y) == oracle);
                }
                // Returned permutation is a bijection whose cost is the reported cost.
                std::vector<std::size_t> sorted = mt.permutation;
                std::sort(sorted.begin(), sorted.end());
                for (std::size_t i = 0; i < s; ++i) CHECK(sorted[i] == i);
                double c = 0;
                for (std::size_t i = 0; i < s; ++i) c += ground_distance(x[i], y[mt.permutation[i]]);
                CHECK(c == doctest::Approx(mt.cost).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("real mode with p = 2 matches enumeration") {
    CounterRng rng(4);
    for (int rep = 0; rep < 100; ++rep) {
        const PointSet x = random_mode_set(Mode::real, 5, 3, rng), y = random_mode_set(Mode::real, 5, 3, rng);
        CHECK(emd_exact(x, y, 2.0).cost == doctest::Approx(naive_emd(x, y, 2.0)).epsilon(1e-9));
        CHECK(emd_exact(x, y, 1.5).cost == doctest::Approx(naive_emd(x, y, 1.5)).epsilon(1e-9));
    }
}

TEST_CASE("emd symmetry and triangle inequality") {
    CounterRng rng(5);
    for (int rep = 0; rep < 200; ++rep) {
        const PointSet x = random_set(4, 12, rng), y = random_set(4, 12, rng), z = random_set(4, 12, rng);
        CHECK(emd(x, y) == emd(y, x));
        CHECK(emd(x, z) <= emd(x, y) + emd(y, z) + 1e-9);
    }
    for (int rep = 0; rep < 200; ++rep) {
        const PointSet x = random_mode_set(Mode::real, 4, 3, rng), y = random_mode_set(Mode::real, 4, 3, rng),
                       z = random_mode_set(Mode::real, 4, 3, rng);
        CHECK(emd(x, z) <= emd(x, y) + emd(y, z) + 1e-9);
    }
}

TEST_CASE("larger instances agree with brute force at the guard") {
    CounterRng rng(6);
    for (int rep = 0; rep < 5; ++rep) {
        const PointSet x = random_set(8, 6, rng), y = random_set(8, 6, rng);
        CHECK(emd_exact(x, y).cost == emd_bruteforce(x, y));
    }
}

TEST_CASE("chamfer distance") {
    const PointSet x({bits({0, 0}), bits({1, 1})});
    std::vector<Vector> omega{bits({0, 0})};
    CHECK(chamfer(x, omega) == 2.0);
    CHECK(chamfer(x, x.elements()) == 0.0);
    CHECK_THROWS_AS(chamfer(x, std::vector<Vector>{}), InvalidInput);
    CounterRng rng(7);
    for (int rep = 0; rep < 50; ++rep) {
        const PointSet a = random_set(6, 8, rng), y = random_set(6, 8, rng);
        std::vector<Vector> om = y.elements();
        for (int k = 0; k < 5; ++k) om.push_back(random_bits(8, rng));
        double naive = 0;
        for (const Vector& e : a) {
            double best = 1e300;
            for (const Vector& b : om) {
                double dd = 0;
                for (std::size_t i = 0; i < 8; ++i) dd += std::fabs(e[i] - b[i]);
                best = std::min(best, dd);
            }
            naive += best;
        }
        CHECK(chamfer(a, om) == naive);
        CHECK(chamfer(a, om) <= emd(a, y));
    }
}

TEST_CASE("greedy matching upper-bounds the optimum") {
    CounterRng rng(8);
    const PointSet x({bits({1, 0, 1})}), y({bits({0, 0, 0})});
    CHECK(greedy_matching_cost(x, y) == 2.0);
    for (int rep = 0; rep < 200; ++rep) {
        const PointSet a = random_set(5, 6, rng), b = random_set(5, 6, rng);
        CHECK(greedy_matching_cost(a, a) == 0.0);
        CHECK(greedy_matching_cost(a, b) >= emd(a, b));
    }
    // Greedy takes the (0, 0) pair first and is then stuck with a cost-3 edge.
    const PointSet g1({bits({0, 0, 0}), bits({1, 1, 0})}), g2({bits({0, 1, 0}), bits({1, 0, 1})});
    CHECK(greedy_matching_cost(g1, g2) >= emd(g1, g2));
}

TEST_CASE("assignment solver on a hand-solved matrix") {
    const std::vector<std::int64_t> c{4, 1, 3, 2, 0, 5, 3, 2, 2};
    const auto perm = solve_assignment(std::span<const std::int64_t>(c), 3);
    CHECK(perm == std::vector<std::size_t>{1, 0, 2});
}
