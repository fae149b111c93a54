#include "emdlsh/harness/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <ostream>

#include "emdlsh/dind_hash.hpp"
#include "emdlsh/emd.hpp"
#include "emdlsh/errors.hpp"
#include "emdlsh/harness/config.hpp"
#include "emdlsh/harness/generators.hpp"
#include "emdlsh/harness/suites.hpp"
#include "emdlsh/lazy_unary.hpp"
#include "emdlsh/metric_reduction.hpp"
#include "emdlsh/parallel.hpp"
#include "emdlsh/quadtree.hpp"
#include "emdlsh/sampletree.hpp"

namespace emdlsh {

using stats::Record;
using stats::Relation;

namespace {

constexpr double kSigmas = 3.0;
constexpr double kChiFloor = 0.001;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

Vector random_element(Mode mode, std::size_t d, std::int64_t delta, CounterRng& rng) {
    std::vector<double> v(d);
    for (auto& x : v) {
        if (mode == Mode::hypercube)
            x = static_cast<double>(rng.uniform_index(2));
        else if (mode == Mode::grid)
            x = static_cast<double>(1 + rng.uniform_index(static_cast<std::uint64_t>(delta)));
        else
            x = rng.uniform(-1.0, 1.0);
    }
    return Vector::make(mode, std::move(v), delta);
}

Vector random_bits(std::size_t d, CounterRng& rng) { return random_element(Mode::hypercube, d, 1, rng); }

PointSet random_set(std::size_t s, std::size_t d, CounterRng& rng) {
    std::vector<Vector> e;
    for (std::size_t i = 0; i < s; ++i) e.push_back(random_bits(d, rng));
    return PointSet(std::move(e));
}

Vector flip_some(const Vector& a, std::size_t count, CounterRng& rng) {
    std::vector<std::size_t> idx(a.dim());
    std::iota(idx.begin(), idx.end(), 0);
    Vector out = a;
    for (std::size_t i = 0; i < count; ++i) {
        std::swap(idx[i], idx[i + rng.uniform_index(idx.size() - i)]);
        out = out.flipped(idx[i]);
    }
    return out;
}

std::uint64_t bits_key(const Vector& a) {
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < a.dim(); ++i) k = (k << 1) | (a.bit(i) ? 1u : 0u);
    return k;
}

std::size_t count_parallel(std::size_t n, const std::function<bool(std::size_t)>& hit) {
    std::vector<char> out(n);
    parallel_for(n, [&](std::size_t i) { out[i] = hit(i) ? 1 : 0; });
    return static_cast<std::size_t>(std::count(out.begin(), out.end(), 1));
}

Record frequency_at_least(std::string name, std::size_t hits, std::size_t trials, double target) {
    const double sigma = stats::binomial_sigma(target, static_cast<double>(trials));
    return Record::check(std::move(name), static_cast<double>(hits) / static_cast<double>(trials), Relation::at_least,
                         target, kSigmas * sigma, sigma, trials);
}

Record frequency_at_most(std::string name, std::size_t hits, std::size_t trials, double target) {
    const double sigma = stats::binomial_sigma(target, static_cast<double>(trials));
    return Record::check(std::move(name), static_cast<double>(hits) / static_cast<double>(trials), Relation::at_most,
                         target, kSigmas * sigma, sigma, trials);
}

// Two-sided: |rate - p| <= 3 sigma.
Record frequency_matches(std::string name, std::size_t hits, std::size_t trials, double p) {
    const double est = static_cast<double>(hits) / static_cast<double>(trials);
    const double sigma = stats::binomial_sigma(p, static_cast<double>(trials));
    return Record::check(std::move(name), std::fabs(est - p), Relation::at_most, 0.0, kSigmas * sigma, sigma, trials,
                         "rate=" + fmt(est) + " law=" + fmt(p));
}

// ---------------------------------------------------------------- 1
std::vector<Record> exact_oracle(std::uint64_t seed) {
    struct Space {
        Mode mode;
        std::size_t d;
        std::int64_t delta;
    };
    const Space spaces[] = {{Mode::hypercube, 8, 1}, {Mode::grid, 4, 8}, {Mode::real, 4, 0}};
    const std::size_t per_s = 500;
    std::vector<Record> recs;
    for (const Space& sp : spaces) {
        std::size_t mismatches = 0, total = 0;
        for (std::size_t s = 2; s <= 6; ++s) {
            mismatches += count_parallel(per_s, [&](std::size_t i) {
                CounterRng rng(seed, "c1", static_cast<std::uint64_t>(sp.mode), s, i);
                std::vector<Vector> xe, ye;
                for (std::size_t e = 0; e < s; ++e) {
                    xe.push_back(random_element(sp.mode, sp.d, sp.delta, rng));
                    ye.push_back(random_element(sp.mode, sp.d, sp.delta, rng));
                }
                const PointSet x(std::move(xe)), y(std::move(ye));
                const double exact = emd_exact(x, y).cost, brute = emd_bruteforce(x, y);
                if (sp.mode == Mode::real) return std::fabs(exact - brute) > 1e-12 * std::max(1.0, brute);
                return exact != brute;
            });
            total += per_s;
        }
        recs.push_back(Record::check(std::string(mode_name(sp.mode)) + ".mismatches", static_cast<double>(mismatches),
                                     Relation::at_most, 0.0, 0.0, 0.0, total,
                                     sp.mode == Mode::real ? "relative tolerance 1e-12" : "exact equality"));
    }
    return recs;
}

// ---------------------------------------------------------------- 2
std::vector<Record> grid_hash_law(std::uint64_t seed) {
    const double R = 10.0;
    const std::size_t d = 3, N = 100000;
    const Vector a = Vector::real({0.0, 0.0, 0.0});
    std::vector<Record> recs;
    int idx = 0;
    for (double dist : {0.5, 2.5, 5.0, 7.5, 10.0}) {
        const Vector b = Vector::real({dist * 0.5, dist * 0.3, dist * 0.2});
        const double l1 = std::fabs(b[0]) + std::fabs(b[1]) + std::fabs(b[2]);
        CounterRng rng(seed, "c2", idx++);
        std::size_t differ = 0;
        for (std::size_t i = 0; i < N; ++i) {
            const GridHash g = GridHash::sample(d, R, rng);
            differ += grid_hash_eval(g, a) != grid_hash_eval(g, b);
        }
        recs.push_back(frequency_matches("dist=" + fmt(dist) + ".abs_error", differ, N, l1 / (static_cast<double>(d) * R)));
    }
    return recs;
}

// ---------------------------------------------------------------- 3
std::vector<Record> threshold_sensitivity(std::uint64_t seed) {
    const std::size_t s = 3, d = 3, draws = 500;
    const double tau = 1.0, c = 4.0, delta = 0.1;
    CounterRng rng(seed, "c3-data");
    std::vector<Vector> xe, n1, n2, fe;
    for (std::size_t i = 0; i < s; ++i) {
        const Vector e = Vector::real({rng.uniform(0, 4), rng.uniform(0, 4), rng.uniform(0, 4)});
        xe.push_back(e);
        n1.push_back(Vector::real({e[0] + 0.3, e[1], e[2]}));
        n2.push_back(i == 0 ? Vector::real({e[0] + 0.5, e[1] - 0.49, e[2]}) : e);
        fe.push_back(Vector::real({e[0] + 3.0, e[1] + 2.0, e[2]}));
    }
    const PointSet x(xe), near1(n1), near2(n2), far(fe);
    if (emd(x, near1) > tau || emd(x, near2) > tau || emd(x, far) < c * tau)
        throw StructuralError("threshold-map instance violates its near/far premise");
    struct Out {
        bool n1 = false, n2 = false, f = false;
    };
    std::vector<Out> out(draws);
    parallel_for(draws, [&](std::size_t k) {
        const ThresholdMap f = sample_threshold_map(s, d, c, tau, delta, derive_key(seed, "c3-map", k));
        const PointSet fx = threshold_map_apply(f, x);
        out[k].n1 = emd(fx, threshold_map_apply(f, near1)) <= f.r();
        out[k].n2 = emd(fx, threshold_map_apply(f, near2)) <= f.r();
        out[k].f = emd(fx, threshold_map_apply(f, far)) >= c * f.r() / 3.0;
    });
    std::size_t h1 = 0, h2 = 0, hf = 0;
    for (const Out& o : out) {
        h1 += o.n1;
        h2 += o.n2;
        hf += o.f;
    }
    return {frequency_at_least("near_emd=" + fmt(emd(x, near1)) + ".within_r", h1, draws, 1 - delta),
            frequency_at_least("near_emd=" + fmt(emd(x, near2)) + ".within_r", h2, draws, 1 - delta),
            frequency_at_least("far_emd=" + fmt(emd(x, far)) + ".beyond_cr_over_3", hf, draws, 1 - delta)};
}

// ---------------------------------------------------------------- 4
std::vector<Record> quadtree_noncontraction(std::uint64_t seed) {
    const std::size_t d = 16, trees = 50, pairs = 200;
    std::vector<std::size_t> violations(trees);
    parallel_for(trees, [&](std::size_t t) {
        CounterRng rng(seed, "c4", t);
        std::vector<Vector> omega;
        for (int c = 0; c < 10; ++c) {
            const Vector center = random_bits(d, rng);
            for (int k = 0; k < 4; ++k) omega.push_back(flip_some(center, rng.uniform_index(3), rng));
        }
        const QuadTree tree = QuadTree::build(TreeShape::hypercube(d), omega, 1.0, derive_key(seed, "c4-tree", t));
        for (std::size_t p = 0; p < pairs; ++p) {
            const std::size_t i = rng.uniform_index(omega.size());
            const std::size_t j = (i + 1 + rng.uniform_index(omega.size() - 1)) % omega.size();
            const double l1 = ground_distance(omega[i], omega[j]);
            if (tree.tree_distance(omega[i], omega[j]) < l1 * (1.0 - 1e-12)) ++violations[t];
        }
    });
    const std::size_t total = std::accumulate(violations.begin(), violations.end(), std::size_t{0});
    return {Record::check("violations", static_cast<double>(total), Relation::at_most, 0.0, 0.0, 0.0, trees * pairs)};
}

// ---------------------------------------------------------------- 5, 6
struct UpdateWorkload {
    std::vector<Vector> pool;
    std::uint64_t levels = 0;
};

UpdateWorkload update_workload(std::uint64_t seed) {
    UpdateWorkload w;
    CounterRng rng(seed, "update-pool");
    while (w.pool.size() < 14) {
        const Vector v = random_bits(8, rng);
        if (std::find(w.pool.begin(), w.pool.end(), v) == w.pool.end()) w.pool.push_back(v);
    }
    w.levels = derive_key(seed, "update-levels");
    return w;
}

// Insert the pool, erase four, reinsert five (three of them duplicates),
// erase one more.
QuadTree replay_updates(const UpdateWorkload& w, std::uint64_t reps_seed) {
    QuadTree t = QuadTree::build(TreeShape::hypercube(8), {}, 1.0, TreeSeeds{w.levels, reps_seed});
    for (const auto& v : w.pool) t.insert(v);
    for (ElementId id : {1u, 4u, 6u, 9u}) t.erase(id);
    for (std::size_t i = 0; i < 5; ++i) t.insert(w.pool[i]);
    t.erase(15);
    return t;
}

std::vector<Vector> live_elements(const QuadTree& t) {
    std::vector<Vector> out;
    for (ElementId id = 0; id < 256; ++id)
        if (t.contains(id)) out.push_back(t.element(id));
    return out;
}

std::vector<Record> rep_uniformity(std::uint64_t seed) {
    const UpdateWorkload w = update_workload(seed);
    const std::size_t replays = 10000;
    std::vector<std::vector<std::pair<Digest128, ElementId>>> reps(replays);
    std::map<Digest128, std::size_t> sizes;
    {
        const QuadTree t = replay_updates(w, 0);
        for (const auto& [key, node] : t.nodes()) sizes[key] = node.members.size();
    }
    parallel_for(replays, [&](std::size_t r) {
        const QuadTree t = replay_updates(w, derive_key(seed, "c5-reps", r));
        for (const auto& [key, node] : t.nodes()) reps[r].emplace_back(key, node.rep);
    });
    std::map<Digest128, std::map<ElementId, double>> counts;
    for (const auto& rr : reps)
        for (const auto& [key, id] : rr) counts[key][id] += 1;
    double min_p = 1.0;
    std::size_t tested = 0, unknown = 0;
    for (const auto& [key, by_id] : counts) {
        const auto it = sizes.find(key);
        if (it == sizes.end()) {
            ++unknown;
            continue;
        }
        const std::size_t m = it->second;
        const double expected = static_cast<double>(replays) / static_cast<double>(m);
        if (m < 2 || expected < 5) continue;
        std::vector<double> obs, exp;
        for (const auto& [id, c] : by_id) obs.push_back(c);
        if (obs.size() > m) {
            ++unknown;
            continue;
        }
        while (obs.size() < m) obs.push_back(0);
        exp.assign(m, expected);
        min_p = std::min(min_p, stats::chi_square_gof_pvalue(obs, exp));
        ++tested;
    }
    return {Record::check("min_node_pvalue", min_p, Relation::at_least, kChiFloor, 0.0, 0.0, replays,
                          "nodes_tested=" + std::to_string(tested)),
            Record::check("structural_mismatches", static_cast<double>(unknown), Relation::at_most, 0.0, 0.0, 0.0,
                          replays)};
}

// Homogeneity of two samples over shared categories, pooling categories
// with fewer than 10 combined observations into one.
double pooled_homogeneity(const std::map<std::uint64_t, double>& a, const std::map<std::uint64_t, double>& b) {
    std::map<std::uint64_t, std::pair<double, double>> joint;
    for (const auto& [k, v] : a) joint[k].first += v;
    for (const auto& [k, v] : b) joint[k].second += v;
    std::vector<double> xa, xb;
    double ra = 0, rb = 0;
    for (const auto& [k, v] : joint) {
        if (v.first + v.second < 10) {
            ra += v.first;
            rb += v.second;
        } else {
            xa.push_back(v.first);
            xb.push_back(v.second);
        }
    }
    if (ra + rb > 0) {
        xa.push_back(ra);
        xb.push_back(rb);
    }
    if (xa.size() < 2) return 1.0;
    return stats::chi_square_homogeneity_pvalue(xa, xb);
}

std::vector<Record> dynamic_static_equivalence(std::uint64_t seed) {
    const UpdateWorkload w = update_workload(seed);
    const std::size_t replays = 10000;
    const QuadTree reference = replay_updates(w, 0);
    const std::vector<Vector> final_set = live_elements(reference);
    const Vector& qa = w.pool[0];
    const Vector& qb = w.pool[13];
    struct Sample {
        std::vector<std::pair<Digest128, std::uint64_t>> reps;  // node key -> rep value
        double pair_distance = 0;
        bool same_structure = true;
    };
    auto sample = [&](const QuadTree& t) {
        Sample s;
        for (const auto& [key, node] : t.nodes()) {
            s.reps.emplace_back(key, bits_key(t.element(node.rep)));
            if (!reference.find(key)) s.same_structure = false;
        }
        s.same_structure = s.same_structure && t.node_count() == reference.node_count();
        s.pair_distance = t.tree_distance(qa, qb);
        return s;
    };
    std::vector<Sample> dyn(replays), fresh(replays);
    parallel_for(replays, [&](std::size_t r) {
        dyn[r] = sample(replay_updates(w, derive_key(seed, "c6-dynamic", r)));
        fresh[r] = sample(QuadTree::build(TreeShape::hypercube(8), final_set, 1.0,
                                          TreeSeeds{w.levels, derive_key(seed, "c6-fresh", r)}));
    });
    std::map<Digest128, std::pair<std::map<std::uint64_t, double>, std::map<std::uint64_t, double>>> per_node;
    std::map<std::uint64_t, double> dist_dyn, dist_fresh;
    std::size_t mismatched = 0;
    for (std::size_t r = 0; r < replays; ++r) {
        mismatched += !dyn[r].same_structure + !fresh[r].same_structure;
        for (const auto& [k, v] : dyn[r].reps) per_node[k].first[v] += 1;
        for (const auto& [k, v] : fresh[r].reps) per_node[k].second[v] += 1;
        dist_dyn[static_cast<std::uint64_t>(std::llround(dyn[r].pair_distance * 1e6))] += 1;
        dist_fresh[static_cast<std::uint64_t>(std::llround(fresh[r].pair_distance * 1e6))] += 1;
    }
    double min_p = 1.0;
    std::size_t tested = 0;
    for (const auto& [key, ab] : per_node) {
        if (ab.first.size() < 2 && ab.second.size() < 2) continue;
        min_p = std::min(min_p, pooled_homogeneity(ab.first, ab.second));
        ++tested;
    }
    return {Record::check("min_node_rep_pvalue", min_p, Relation::at_least, kChiFloor, 0.0, 0.0, replays,
                          "nodes_tested=" + std::to_string(tested)),
            Record::check("pair_tree_distance_pvalue", pooled_homogeneity(dist_dyn, dist_fresh), Relation::at_least,
                          kChiFloor, 0.0, 0.0, replays),
            Record::check("structural_mismatches", static_cast<double>(mismatched), Relation::at_most, 0.0, 0.0, 0.0,
                          2 * replays)};
}

// ---------------------------------------------------------------- 7
std::vector<Record> lazy_unary_fidelity(std::uint64_t seed) {
    const std::size_t d = 2;
    const std::int64_t delta = 8;
    const std::size_t cube = d * static_cast<std::size_t>(delta);
    const std::size_t trials = 10000;
    const Vector a = Vector::grid({2, 5}, delta), b = Vector::grid({4, 5}, delta), c = Vector::grid({3, 7}, delta);
    const Vector ua = unary_encode(a), ub = unary_encode(b), uc = unary_encode(c);
    auto diff = [&](const Vector& x, const Vector& y) {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < cube; ++i)
            if (x[i] != y[i]) out.push_back(i);
        return out;
    };
    const auto dab = diff(ua, ub), dac = diff(ua, uc);
    std::vector<std::size_t> both = dab;
    for (std::size_t i : dac)
        if (std::find(both.begin(), both.end(), i) == both.end()) both.push_back(i);
    const std::size_t L = tree_depth(cube);
    std::vector<Record> recs;
    for (std::size_t l = 0; l < L; ++l) {
        const double N = std::ldexp(1.0, static_cast<int>(l));
        auto miss = [&](std::size_t k) { return std::pow(1.0 - static_cast<double>(k) / static_cast<double>(cube), N); };
        // Cells (split ab, split ac): (0,0), (0,1), (1,0), (1,1).
        const double p00 = miss(both.size());
        const double p01 = miss(dab.size()) - p00;
        const double p10 = miss(dac.size()) - p00;
        const double law[4] = {p00, p01, p10, 1.0 - p00 - p01 - p10};
        std::vector<int> lazy(trials), expl(trials);
        parallel_for(trials, [&](std::size_t t) {
            const LazyUnaryLevel lv(static_cast<std::uint64_t>(N), d, delta, derive_key(seed, "c7-lazy", l, t));
            const auto ca = lv.counts(a), cb = lv.counts(b), cc = lv.counts(c);
            lazy[t] = 2 * (ca != cb) + (ca != cc);
            CounterRng rng(seed, "c7-explicit", l, t);
            bool sab = false, sac = false;
            for (std::uint64_t k = 0; k < static_cast<std::uint64_t>(N); ++k) {
                const std::size_t i = rng.uniform_index(cube);
                sab = sab || ua[i] != ub[i];
                sac = sac || ua[i] != uc[i];
            }
            expl[t] = 2 * sab + sac;
        });
        for (const auto& [name, v] : {std::pair{"lazy", &lazy}, std::pair{"explicit", &expl}}) {
            double worst = 0;
            bool impossible_hit = false;
            for (int cell = 0; cell < 4; ++cell) {
                const auto hits = static_cast<double>(std::count(v->begin(), v->end(), cell));
                const double sigma = stats::binomial_sigma(law[cell], static_cast<double>(trials));
                const double err = std::fabs(hits / static_cast<double>(trials) - law[cell]);
                if (sigma > 0)
                    worst = std::max(worst, err / sigma);
                else if (err > 0)
                    impossible_hit = true;
            }
            recs.push_back(Record::check(std::string(name) + ".level=" + std::to_string(l) + ".max_cell_z",
                                         impossible_hit ? 1e9 : worst, Relation::at_most, kSigmas, 0.0, 1.0, trials));
        }
    }
    return recs;
}

// ---------------------------------------------------------------- 8
double tree_emd_bruteforce(const QuadTree& tree, const PointSet& x, const PointSet& y) {
    const std::size_t s = x.s();
    std::vector<WeightedPath> px, py;
    for (const auto& e : x) px.push_back(tree.weighted_path(e));
    for (const auto& e : y) py.push_back(tree.weighted_path(e));
    std::vector<double> cost(s * s);
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j) cost[i * s + j] = QuadTree::tree_distance(px[i], py[j]);
    std::vector<std::size_t> perm(s);
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
        double sum = 0;
        for (std::size_t i = 0; i < s; ++i) sum += cost[i * s + perm[i]];
        best = std::min(best, sum);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

std::vector<Record> tree_isometry(std::uint64_t seed) {
    const std::size_t d = 10, draws = 10, per_draw = 20;
    std::vector<double> worst(5 * draws, 0.0);
    parallel_for(worst.size(), [&](std::size_t job) {
        const std::size_t s = 2 + job / draws;
        CounterRng rng(seed, "c8", job);
        std::vector<PointSet> mu;
        for (int i = 0; i < 8; ++i) mu.push_back(random_set(s, d, rng));
        const SampleTreeDraw draw = build_sampletree(mu, 4, 0.1, derive_key(seed, "c8-tree", job));
        for (std::size_t k = 0; k < per_draw; ++k) {
            const PointSet x = rng.bernoulli(0.5) ? mu[rng.uniform_index(mu.size())] : random_set(s, d, rng);
            std::vector<Vector> ye;
            for (const auto& e : x) ye.push_back(rng.bernoulli(0.5) ? flip_some(e, 1 + rng.uniform_index(3), rng)
                                                                    : random_bits(d, rng));
            const PointSet y(std::move(ye));
            const double te = tree_emd_bruteforce(draw.tree, x, y);
            const double l1 = l1_distance(embed_l1(draw, x), embed_l1(draw, y));
            worst[job] = std::max(worst[job], std::fabs(l1 - te) / std::max(1.0, te));
        }
    });
    return {Record::check("max_relative_error", *std::max_element(worst.begin(), worst.end()), Relation::at_most, 1e-9,
                          0.0, 0.0, worst.size() * per_draw)};
}

// ---------------------------------------------------------------- 9
std::vector<Record> sampletree_noncontraction(std::uint64_t seed) {
    ExperimentConfig cfg;
    cfg.n = 40;
    cfg.s = 3;
    cfg.d = 32;
    cfg.generator.clusters = 4;
    cfg.generator.radius = 2;
    const Dataset mu = gen_clustered(cfg, derive_key(seed, "c9-data"));
    const std::size_t trials = 1000, m = 20;
    const double delta = 0.05;
    const std::size_t violations = count_parallel(trials, [&](std::size_t t) {
        CounterRng rng(seed, "c9", t);
        const std::size_t i = rng.uniform_index(mu.n());
        const PointSet& x = mu[i];
        PointSet y;
        switch (rng.uniform_index(3)) {
            case 0: y = mu[(i + cfg.generator.clusters * (1 + rng.uniform_index(9))) % mu.n()]; break;
            case 1: {
                std::vector<Vector> e = x.elements();
                const std::size_t which = rng.uniform_index(e.size());
                e[which] = flip_some(e[which], 1 + rng.uniform_index(3), rng);
                y = PointSet(std::move(e));
                break;
            }
            default: y = random_set(cfg.s, cfg.d, rng);
        }
        const auto draw = build_sampletree(mu, m, delta, derive_key(seed, "c9-tree", t));
        const double te = l1_distance(embed_l1(draw, x), embed_l1(draw, y));
        return te < emd(x, y) * (1.0 - 1e-12);
    });
    Record r = frequency_at_most("violation_frequency", violations, trials, delta);
    r.note = "xi=" + fmt(sampletree_xi(m, cfg.s, cfg.d, delta));
    return {r};
}

// ---------------------------------------------------------------- 10
std::vector<Record> dind_separation(std::uint64_t seed) {
    const std::size_t d = 16, s = 3, N = 10000;
    const double tau = 8.0;
    const TreeShape shape = TreeShape::hypercube(d);
    CounterRng rng(seed, "c10-data");
    const PointSet x = random_set(s, d, rng);
    std::vector<Record> recs;
    for (std::size_t flips : {1u, 2u, 4u}) {
        std::vector<Vector> e = x.elements();
        e[0] = flip_some(e[0], flips, rng);
        const PointSet y(std::move(e));
        const double dist = emd(x, y);
        for (std::size_t l = 0; l <= tree_depth(d); ++l) {
            const std::size_t sep = count_parallel(N, [&](std::size_t t) {
                const DataIndHash h(shape, tau, l, derive_key(seed, "c10", flips, l, t));
                return h.eval(x) != h.eval(y);
            });
            recs.push_back(frequency_at_most("emd=" + fmt(dist) + ".level=" + std::to_string(l), sep, N, dist / tau));
        }
    }
    return recs;
}

// ---------------------------------------------------------------- 11, 12, 13
ExperimentConfig planted_config(std::uint64_t seed) {
    ExperimentConfig cfg;
    cfg.n = 200;
    cfg.s = 3;
    cfg.d = 64;
    cfg.r = 4;
    cfg.p1 = 0.8;
    cfg.p2 = 0.2;
    cfg.seed = seed;
    cfg.generator.kind = GeneratorKind::planted;
    cfg.generator.clusters = 10;
    cfg.generator.radius = 2;
    cfg.generator.queries = 100;
    cfg.generator.far_margin = 2;
    return cfg;
}

std::vector<Record> glued_criterion(std::uint64_t seed) { return glued_sensitivity(planted_config(seed), 100); }

std::vector<Record> ann_criterion(std::uint64_t seed) { return ann_benchmark(planted_config(seed)); }

std::vector<Record> distortion_criterion(std::uint64_t seed) {
    ExperimentConfig cfg;
    cfg.n = 60;
    cfg.s = 3;
    cfg.d = 32;
    cfg.seed = seed;
    cfg.generator.clusters = 6;
    cfg.generator.radius = 2;
    DistortionOptions opt;
    opt.trials = 200;
    opt.m = 30;
    auto recs = distortion_comparison(cfg, opt);
    std::erase_if(recs, [](const Record& r) { return r.name != "distortion.sign_test_pvalue"; });
    return recs;
}

}  // namespace

bool CriterionResult::records_pass() const {
    return !records.empty() && std::all_of(records.begin(), records.end(), [](const Record& r) { return r.pass; });
}

const std::vector<Criterion>& acceptance_criteria() {
    static const std::vector<Criterion> all = {
        {1, "exact EMD equals brute force", 10, exact_oracle},
        {2, "grid hash collision law", 30, grid_hash_law},
        {3, "threshold map sensitivity", 120, threshold_sensitivity},
        {4, "quadtree non-contraction on Omega", 0, quadtree_noncontraction},
        {5, "representative uniformity under updates", 0, rep_uniformity},
        {6, "dynamic and static trees agree in law", 0, dynamic_static_equivalence},
        {7, "lazy unary sampling fidelity", 0, lazy_unary_fidelity},
        {8, "tree to l1 isometry", 0, tree_isometry},
        {9, "sample tree non-contraction", 0, sampletree_noncontraction},
        {10, "H(tau, l) separation bound", 0, dind_separation},
        {11, "glued LSH sensitivities", 600, glued_criterion},
        {12, "ANN end to end", 0, ann_criterion},
        {13, "sample tree beats data-independent distortion", 0, distortion_criterion},
    };
    return all;
}

CriterionResult run_criterion(const Criterion& c, std::uint64_t seed) {
    CriterionResult res;
    res.id = c.id;
    res.title = c.title;
    res.time_limit_s = c.time_limit_s;
    const auto start = std::chrono::steady_clock::now();
    try {
        res.records = c.run(derive_key(seed, "criterion", c.id));
    } catch (const std::exception& e) {
        res.records = {Record::check("exception", 1, Relation::at_most, 0, 0, 0, 0, e.what())};
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
}

std::string summary_line(const CriterionResult& r) {
    char buf[64];
    std::snprintf(buf, sizeof buf, " (%.1f s", r.seconds);
    std::string line = "criterion " + std::to_string(r.id) + (r.pass() ? " PASS " : " FAIL ") + r.title + buf;
    if (!r.within_time()) line += ", over " + fmt(r.time_limit_s) + " s";
    line += ")";
    for (const Record& rec : r.records)
        if (!rec.pass) line += " [failed: " + rec.name + "=" + fmt(rec.estimate) + "]";
    return line;
}

stats::StatsReport run_acceptance(std::uint64_t seed, const std::vector<int>& only, std::ostream& lines,
                                  std::vector<CriterionResult>* results) {
    stats::StatsReport rep;
    rep.suite = "selftest";
    rep.seed = seed;
    rep.config_digest = "builtin";
    for (const Criterion& c : acceptance_criteria()) {
        if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
        CriterionResult r = run_criterion(c, seed);
        lines << summary_line(r) << std::endl;
        for (Record rec : r.records) {
            rec.name = "c" + std::to_string(c.id) + "." + rec.name;
            rep.add(std::move(rec));
        }
        if (!r.within_time())
            rep.add(Record::check("c" + std::to_string(c.id) + ".within_time_limit", 0, Relation::at_least, 1, 0, 0, 1));
        if (results) results->push_back(std::move(r));
    }
    return rep;
}

}  // namespace emdlsh
