#include <functional>
#include <set>

#include "doctest.h"
#include "emdlsh/ann_index.hpp"
#include "emdlsh/emd.hpp"
#include "emdlsh/errors.hpp"
#include "support.hpp"

using namespace emdlsh;
using namespace testsupport;

namespace {

constexpr double kSigmas = 3.0;

Dataset clustered(std::size_t clusters, std::size_t per, std::size_t s, std::size_t d, std::size_t radius,
                  CounterRng& rng) {
    std::vector<PointSet> pts;
    for (std::size_t c = 0; c < clusters; ++c) {
        const PointSet center = random_set(s, d, rng);
        for (std::size_t i = 0; i < per; ++i) {
            std::vector<Vector> e;
            for (const auto& a : center) e.push_back(flip_some(a, rng.uniform_index(radius + 1), rng));
            pts.emplace_back(std::move(e));
        }
    }
    return Dataset(std::move(pts));
}

GluedParams small_params(std::size_t s, std::size_t d) {
    GluedParams g = GluedParams::derive(static_cast<double>(s) + 1.0, 0.8, 0.2, s, d);
    g.tau = 6.0;
    g.gamma = 6.0;
    g.c = 3.0;
    g.m = 20;
    return g;
}

std::vector<std::size_t> all_indices(std::size_t n) {
    std::vector<std::size_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = i;
    return v;
}

void walk(const CoreNode& v, const std::function<void(const CoreNode&)>& f) {
    f(v);
    for (const auto& [b, c] : v.children) walk(*c, f);
}

}  // namespace

TEST_CASE("amplification parameters") {
    const GluedParams g = GluedParams::derive(6, 0.8, 0.2, 3, 64);
    const AnnParams a = AnnParams::derive(200, g);
    CHECK(a.k == 4);
    CHECK(a.rho == doctest::Approx(std::log(1.25) / std::log(5.0)));
    CHECK(a.repetitions == static_cast<std::size_t>(std::ceil(3 * std::pow(200.0, a.rho) / 0.8)));
    CHECK(a.failure_bound() <= 0.1);
    CHECK(AnnParams::derive(2, g).k >= 1);
    CHECK(AnnParams::derive(1, g).k == 0);
    CHECK(AnnParams::derive(1, g).repetitions >= 1);
    CHECK(AnnParams::derive(25, g).k == 2);
}

TEST_CASE("core tree structure") {
    CounterRng rng(1);
    const Dataset P = clustered(4, 10, 2, 12, 2, rng);
    const GluedParams g = small_params(2, 12);
    const auto idx = all_indices(P.n());
    SUBCASE("k = 0 is a leaf holding everything") {
        const auto leaf = core_preprocess(P, idx, 0, g, 2);
        CHECK(leaf->leaf);
        CHECK(leaf->data.size() == P.n());
    }
    SUBCASE("singleton residuals are leaves") {
        const std::vector<std::size_t> one{7};
        const auto v = core_preprocess(P, one, 3, g, 3);
        CHECK(v->leaf);
        CHECK(v->point == 7);
    }
    SUBCASE("depth, references and children keys") {
        const std::size_t k = 3;
        const auto root = core_preprocess(P, idx, k, g, 4);
        std::size_t refs = 0;
        walk(*root, [&](const CoreNode& v) {
            refs += v.residual_size;
            CHECK(v.depth <= k);
            if (v.leaf) {
                CHECK((v.depth == k || v.residual_size == 1));
                CHECK(v.data.size() == v.residual_size);
            } else {
                CHECK(v.depth < k);
                std::size_t below = 0;
                for (const auto& [b, c] : v.children) {
                    below += c->residual_size;
                    CHECK(c->depth == v.depth + 1);
                }
                CHECK(below == v.residual_size);
            }
        });
        CHECK(refs <= P.n() * (k + 1));
        // Root children are exactly the occupied buckets.
        std::set<std::pair<int, Digest128>> occupied, keys;
        for (const auto& p : P.points()) {
            const auto b = root->hash->eval(p);
            occupied.insert({b.level, b.bucket.value});
        }
        for (const auto& [b, c] : root->children) keys.insert({b.level, b.bucket.value});
        CHECK(occupied == keys);
    }
}

TEST_CASE("core query basics") {
    CounterRng rng(5);
    const Dataset P = clustered(3, 8, 2, 12, 1, rng);
    const GluedParams g = small_params(2, 12);
    const auto root = core_preprocess(P, all_indices(P.n()), 2, g, 6);
    const auto hit = core_query(P, P[root->point], *root, g.cr());
    REQUIRE(hit.has_value());
    CHECK(*hit == root->point);
    const auto leaf = core_preprocess(P, all_indices(P.n()), 0, g, 7);
    const PointSet far({Vector::hypercube(std::vector<double>(12, 1.0)), Vector::hypercube(std::vector<double>(12, 1.0))});
    bool any_near = false;
    for (const auto& p : P.points()) any_near = any_near || emd(p, far) <= 1.0;
    REQUIRE(!any_near);
    QueryStats st;
    CHECK(!core_query(P, far, *leaf, 1.0, &st).has_value());
    CHECK(st.leaf_scan_evals == P.n());
}

TEST_CASE("per-tree success is at least p1^k on planted near neighbors") {
    CounterRng rng(8);
    const Dataset P = clustered(5, 8, 2, 16, 1, rng);
    const GluedParams g = GluedParams::derive(3, 0.8, 0.2, 2, 16);
    const std::size_t k = 2;
    const int trials = 200;
    int found = 0;
    for (int t = 0; t < trials; ++t) {
        const std::size_t target = rng.uniform_index(P.n());
        const PointSet q({flip_some(P[target][0], 1, rng), P[target][1]});
        const auto root = core_preprocess(P, all_indices(P.n()), k, g, 1000 + t);
        const auto ans = core_query(P, q, *root, g.cr());
        if (ans) {
            CHECK(emd(P[*ans], q) <= g.cr());
            ++found;
        }
    }
    const double target = std::pow(g.p1, static_cast<double>(k));
    CHECK(static_cast<double>(found) / trials >= target - kSigmas * binomial_sigma(target, trials));
}

TEST_CASE("index: single point, far queries, determinism, query cost") {
    CounterRng rng(9);
    const GluedParams g = small_params(2, 16);
    {
        const Dataset one(std::vector<PointSet>{random_set(2, 16, rng)});
        int ok = 0;
        for (int t = 0; t < 30; ++t) {
            const AnnIndex idx = AnnIndex::build(one, AnnParams::derive(1, g), 50 + t);
            const PointSet q({flip_some(one[0][0], 2, rng), one[0][1]});
            ok += idx.query(q).has_value();
        }
        CHECK(ok == 30);
    }
    const Dataset P = clustered(4, 10, 2, 16, 1, rng);
    const AnnParams a = AnnParams::derive(P.n(), g);
    const AnnIndex idx = AnnIndex::build(P, a, 11), twin = AnnIndex::build(P, a, 11);
    CHECK(idx.tree_count() == a.repetitions);
    double leaf_evals = 0;
    const int queries = 50;
    for (int i = 0; i < queries; ++i) {
        const PointSet q = random_set(2, 16, rng);
        QueryStats s1, s2;
        const auto r1 = idx.query(q, &s1), r2 = twin.query(q, &s2);
        CHECK(r1 == r2);
        CHECK(s1.distance_evals == s2.distance_evals);
        if (r1) CHECK(emd(P[*r1], q) <= idx.cr());
        bool near = false;
        for (const auto& p : P.points()) near = near || emd(p, q) <= idx.cr();
        if (!near) CHECK(!r1.has_value());
        leaf_evals += static_cast<double>(s1.leaf_scan_evals) / static_cast<double>(std::max<std::size_t>(1, s1.trees_tried));
    }
    const double envelope = 4.0 * (static_cast<double>(a.k) + P.n() * std::pow(g.p2, static_cast<double>(a.k)));
    CHECK(leaf_evals / queries <= envelope);
    CHECK_THROWS_AS(idx.query(random_set(3, 16, rng)), InvalidInput);
}
