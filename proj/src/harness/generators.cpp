#include "emdlsh/harness/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "emdlsh/emd.hpp"
#include "emdlsh/errors.hpp"
#include "emdlsh/random.hpp"

namespace emdlsh {

namespace {

Vector random_element(const ExperimentConfig& cfg, CounterRng& rng) {
    std::vector<double> v(cfg.d);
    for (auto& x : v) {
        switch (cfg.mode) {
            case Mode::hypercube: x = static_cast<double>(rng.uniform_index(2)); break;
            case Mode::grid: x = static_cast<double>(1 + rng.uniform_index(static_cast<std::uint64_t>(cfg.delta))); break;
            case Mode::real: x = rng.uniform01(); break;
        }
    }
    return Vector::make(cfg.mode, std::move(v), cfg.mode == Mode::grid ? cfg.delta : 1);
}

// `count` distinct coordinates in random order.
std::vector<std::size_t> pick_coords(std::size_t d, std::size_t count, CounterRng& rng) {
    std::vector<std::size_t> idx(d);
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t i = 0; i < count; ++i) std::swap(idx[i], idx[i + rng.uniform_index(d - i)]);
    idx.resize(count);
    return idx;
}

Vector perturb(const ExperimentConfig& cfg, const Vector& a, std::size_t budget, CounterRng& rng) {
    std::vector<double> v = a.coords();
    for (std::size_t j : pick_coords(cfg.d, std::min(budget, cfg.d), rng)) {
        switch (cfg.mode) {
            case Mode::hypercube: v[j] = 1.0 - v[j]; break;
            case Mode::grid: {
                const double step = rng.bernoulli(0.5) ? 1.0 : -1.0;
                double x = v[j] + step;
                if (x < 1 || x > static_cast<double>(cfg.delta)) x = v[j] - step;
                if (x >= 1 && x <= static_cast<double>(cfg.delta)) v[j] = x;
                break;
            }
            case Mode::real: v[j] += rng.uniform(-0.5, 0.5); break;
        }
    }
    return Vector::make(cfg.mode, std::move(v), cfg.mode == Mode::grid ? cfg.delta : 1);
}

}  // namespace

Dataset gen_clustered(const ExperimentConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    CounterRng rng(seed, "gen-clustered");
    std::vector<std::vector<Vector>> centers(cfg.generator.clusters);
    for (auto& c : centers)
        for (std::size_t e = 0; e < cfg.s; ++e) c.push_back(random_element(cfg, rng));
    std::vector<PointSet> pts;
    pts.reserve(cfg.n);
    for (std::size_t i = 0; i < cfg.n; ++i) {
        const auto& c = centers[i % centers.size()];
        std::vector<Vector> elems;
        for (const Vector& a : c) elems.push_back(perturb(cfg, a, rng.uniform_index(cfg.generator.radius + 1), rng));
        pts.emplace_back(std::move(elems));
    }
    return Dataset(std::move(pts));
}

PlantedBenchmark gen_planted(const ExperimentConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    if (cfg.mode != Mode::hypercube) throw ConfigError("planted benchmark requires hypercube mode");
    const auto budget = static_cast<std::size_t>(std::floor(cfg.r));
    if (budget < cfg.s)
        throw ConfigError("infeasible flip budget: floor(r) = " + std::to_string(budget) + " < s = " +
                          std::to_string(cfg.s));
    if (budget > cfg.s * cfg.d) throw ConfigError("flip budget exceeds s * d");
    PlantedBenchmark out;
    out.data = gen_clustered(cfg, seed);
    CounterRng rng(seed, "gen-planted");
    for (std::size_t q = 0; q < cfg.generator.queries; ++q) {
        const std::size_t target = rng.uniform_index(cfg.n);
        const PointSet& p = out.data[target];
        std::vector<Vector> elems;
        for (std::size_t e = 0; e < cfg.s; ++e) {
            const std::size_t share = budget / cfg.s + (e < budget % cfg.s ? 1 : 0);
            if (share > cfg.d) throw ConfigError("flip budget exceeds d for one element");
            elems.push_back(perturb(cfg, p[e], share, rng));
        }
        PointSet query(std::move(elems));
        const double dist = emd(p, query);
        if (dist > cfg.r) throw StructuralError("planted near query exceeds r");
        out.near_queries.push_back(std::move(query));
        out.near_index.push_back(target);
        out.near_emd.push_back(dist);
    }
    const double far = cfg.generator.far_margin * cfg.r;
    const std::size_t max_attempts = 1000 * cfg.generator.queries;
    std::size_t attempts = 0;
    while (out.far_queries.size() < cfg.generator.queries) {
        if (++attempts > max_attempts) throw ConfigError("cannot place far queries at the requested margin");
        std::vector<Vector> elems;
        for (std::size_t e = 0; e < cfg.s; ++e) elems.push_back(random_element(cfg, rng));
        PointSet z(std::move(elems));
        bool ok = true;
        for (const PointSet& p : out.data.points())
            if (emd_exact(p, z).cost < far) {
                ok = false;
                break;
            }
        if (ok) out.far_queries.push_back(std::move(z));
    }
    return out;
}

Dataset gen_synthetic(const ExperimentConfig& cfg) {
    if (cfg.generator.kind == GeneratorKind::planted) return gen_planted(cfg, cfg.seed).data;
    return gen_clustered(cfg, cfg.seed);
}

}  // namespace emdlsh
