#include "emdlsh/harness/suites.hpp"

#include <algorithm>
#include <cmath>

#include "emdlsh/ann_index.hpp"
#include "emdlsh/dind_hash.hpp"
#include "emdlsh/emd.hpp"
#include "emdlsh/errors.hpp"
#include "emdlsh/glued_lsh.hpp"
#include "emdlsh/harness/generators.hpp"
#include "emdlsh/metric_reduction.hpp"
#include "emdlsh/parallel.hpp"
#include "emdlsh/sampletree.hpp"

namespace emdlsh {

using stats::Record;
using stats::Relation;

namespace {

constexpr double kSigmas = 3.0;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

stats::StatsReport make_report(const char* suite, const ExperimentConfig& cfg) {
    stats::StatsReport rep;
    rep.suite = suite;
    rep.seed = cfg.seed;
    rep.config_digest = cfg.digest();
    return rep;
}

// Hits over `trials` independent draws, drawn in parallel from per-draw seeds.
std::size_t count_hits(std::size_t trials, const std::function<bool(std::size_t)>& hit) {
    std::vector<char> out(trials);
    parallel_for(trials, [&](std::size_t t) { out[t] = hit(t) ? 1 : 0; });
    return static_cast<std::size_t>(std::count(out.begin(), out.end(), 1));
}

// A pair at exact l1 distance `flips` in hypercube mode or `flips` unit
// steps in grid mode, moving element 0 only.
PointSet move_first(const ExperimentConfig& cfg, const PointSet& x, std::size_t flips) {
    std::vector<Vector> e = x.elements();
    std::vector<double> v = e[0].coords();
    for (std::size_t j = 0; j < flips && j < v.size(); ++j) {
        if (cfg.mode == Mode::hypercube)
            v[j] = 1.0 - v[j];
        else
            v[j] = v[j] < static_cast<double>(cfg.delta) ? v[j] + 1 : v[j] - 1;
    }
    e[0] = Vector::make(cfg.mode, std::move(v), cfg.mode == Mode::grid ? cfg.delta : 1);
    return PointSet(std::move(e));
}

}  // namespace

stats::StatsReport run_collision_suite(const ExperimentConfig& cfg) {
    cfg.validate();
    auto rep = make_report("collisions", cfg);
    const std::size_t N = cfg.trials;

    // Grid hash on R^d: separation rate ||a - b||_1 / (d R).
    const double R = 10.0;
    const std::size_t gd = cfg.d;
    std::vector<double> zero(gd, 0.0);
    const Vector origin = Vector::real(zero);
    for (double dist : {0.0, 2.5, 6.0, 10.0}) {
        std::vector<double> b(gd, 0.0);
        b[0] = dist * 0.6;
        if (gd > 1) b[1] = dist * 0.4; else b[0] = dist;
        const Vector other = Vector::real(b);
        const std::size_t sep = count_hits(N, [&](std::size_t t) {
            CounterRng rng(cfg.seed, "collisions-grid", static_cast<std::uint64_t>(dist * 1000), t);
            const GridHash g = GridHash::sample(gd, R, rng);
            return grid_hash_eval(g, origin) != grid_hash_eval(g, other);
        });
        const double p = dist / (static_cast<double>(gd) * R);
        const double est = static_cast<double>(sep) / static_cast<double>(N);
        const double sigma = stats::binomial_sigma(p, static_cast<double>(N));
        rep.add(Record::check("grid_hash.dist=" + fmt(dist) + ".abs_error", std::fabs(est - p), Relation::at_most, 0.0,
                              kSigmas * sigma, sigma, N, "rate=" + fmt(est) + " law=" + fmt(p)));
    }

    if (cfg.mode == Mode::real) {
        rep.add(Record::check("dind.skipped", 0, Relation::at_most, 0, 0, 0, 0, "H(tau,l) needs an integer mode"));
        return rep;
    }

    // H(tau, l): Pr[h(x) != h(y)] <= EMD(x, y) / tau at every level.
    const TreeShape shape = cfg.mode == Mode::grid ? TreeShape::grid(cfg.d, cfg.delta) : TreeShape::hypercube(cfg.d);
    const Dataset data = gen_clustered(cfg, derive_key(cfg.seed, "collisions-data"));
    const PointSet& x = data[0];
    const std::size_t L = tree_depth(shape.effective_dim());
    const double tau = 4.0 * static_cast<double>(std::max<std::size_t>(cfg.s, 2));
    for (std::size_t flips : {std::size_t{0}, std::size_t{2}}) {
        const PointSet y = move_first(cfg, x, flips);
        const double dist = emd(x, y);
        for (std::size_t l = 0; l <= L; ++l) {
            const std::size_t sep = count_hits(N, [&](std::size_t t) {
                const DataIndHash h(shape, tau, l, derive_key(cfg.seed, "collisions-dind", flips, l, t));
                return h.eval(x) != h.eval(y);
            });
            const double bound = std::min(1.0, dist / tau);
            const double est = static_cast<double>(sep) / static_cast<double>(N);
            const double sigma = stats::binomial_sigma(bound, static_cast<double>(N));
            rep.add(Record::check("dind.emd=" + fmt(dist) + ".level=" + std::to_string(l) + ".separation", est,
                                  Relation::at_most, bound, kSigmas * sigma, sigma, N));
        }
    }

    if (cfg.mode != Mode::hypercube) return rep;
    // l1 grid hash on sample-tree embeddings: separation <= ||psi(x) - psi(y)||_1 / gamma.
    const SampleTreeDraw draw = build_sampletree(data, std::min<std::size_t>(cfg.n, 20), 0.05,
                                                 derive_key(cfg.seed, "collisions-sampletree"));
    const PointSet y = move_first(cfg, x, 1);
    const SparseVector ex = embed_l1(draw, x), ey = embed_l1(draw, y);
    const double l1 = l1_distance(ex, ey);
    const double gamma = std::max(1.0, 4.0 * l1);
    const std::size_t sep = count_hits(N, [&](std::size_t t) {
        const L1Lsh h(gamma, derive_key(cfg.seed, "collisions-l1lsh", t));
        return h.eval(ex) != h.eval(ey);
    });
    const std::size_t same = count_hits(N, [&](std::size_t t) {
        const L1Lsh h(gamma, derive_key(cfg.seed, "collisions-l1lsh-zero", t));
        return h.eval(ex) == h.eval(embed_l1(draw, x));
    });
    const double bound = std::min(1.0, l1 / gamma);
    const double sigma = stats::binomial_sigma(bound, static_cast<double>(N));
    rep.add(Record::check("l1lsh.separation", static_cast<double>(sep) / static_cast<double>(N), Relation::at_most,
                          bound, kSigmas * sigma, sigma, N, "l1=" + fmt(l1) + " gamma=" + fmt(gamma)));
    rep.add(Record::check("l1lsh.zero_distance.collision", static_cast<double>(same) / static_cast<double>(N),
                          Relation::at_least, 1.0, 0.0, 0.0, N));
    return rep;
}

std::vector<Record> distortion_comparison(const ExperimentConfig& cfg, const DistortionOptions& opt) {
    cfg.validate();
    if (cfg.mode != Mode::hypercube) throw ConfigError("distortion comparison requires hypercube mode");
    const Dataset data = gen_clustered(cfg, derive_key(cfg.seed, "distortion-data"));
    const std::size_t clusters = std::min(cfg.generator.clusters, cfg.n);
    const std::size_t m = opt.m ? opt.m : cfg.n;
    struct Trial {
        double st = 0, di = 0;
        bool valid = false, violation = false;
    };
    std::vector<Trial> out(opt.trials);
    parallel_for(opt.trials, [&](std::size_t t) {
        CounterRng rng(cfg.seed, "distortion-pair", t);
        // Two members of one cluster; identical pairs are excluded.
        const std::size_t c = rng.uniform_index(clusters);
        const std::size_t per = (cfg.n - c + clusters - 1) / clusters;
        if (per < 2) return;
        const std::size_t i = rng.uniform_index(per), j = (i + 1 + rng.uniform_index(per - 1)) % per;
        const PointSet& x = data[c + i * clusters];
        const PointSet& y = data[c + j * clusters];
        const double truth = emd(x, y);
        if (truth == 0.0) return;
        const auto draw = build_sampletree(data, m, opt.delta, derive_key(cfg.seed, "distortion-tree", t));
        const QuadTree indep = QuadTree::build(draw.tree.shape(), {}, draw.xi,
                                               TreeSeeds{draw.tree.seeds().levels, draw.tree.seeds().reps});
        const double st = l1_distance(embed_l1(draw.tree, x), embed_l1(draw.tree, y));
        const double di = l1_distance(embed_l1(indep, x), embed_l1(indep, y));
        out[t] = {st / truth, di / truth, true, st < truth * (1.0 - 1e-12)};
    });
    std::size_t valid = 0, violations = 0, wins = 0, losses = 0;
    double st_sum = 0, di_sum = 0;
    for (const Trial& tr : out) {
        if (!tr.valid) continue;
        ++valid;
        violations += tr.violation;
        st_sum += tr.st;
        di_sum += tr.di;
        wins += tr.st < tr.di;
        losses += tr.st > tr.di;
    }
    std::vector<Record> recs;
    if (valid == 0) {
        recs.push_back(Record::check("distortion.valid_pairs", 0, Relation::at_least, 1, 0, 0, 0));
        return recs;
    }
    const double vn = static_cast<double>(valid);
    const double viol = static_cast<double>(violations) / vn;
    const double vsig = stats::binomial_sigma(opt.delta, vn);
    recs.push_back(Record::check("distortion.contraction_violation", viol, Relation::at_most, opt.delta,
                                 kSigmas * vsig, vsig, valid));
    const std::string means = "mean_expansion_sampletree=" + fmt(st_sum / vn) +
                              " mean_expansion_independent=" + fmt(di_sum / vn);
    const double pval = stats::sign_test_pvalue(wins, losses);
    recs.push_back(Record::check("distortion.sign_test_pvalue", pval, Relation::at_most, opt.sign_test_alpha, 0.0,
                                 0.0, wins + losses,
                                 means + " wins=" + std::to_string(wins) + " losses=" + std::to_string(losses)));
    return recs;
}

stats::StatsReport run_distortion_suite(const ExperimentConfig& cfg) {
    auto rep = make_report("distortion", cfg);
    DistortionOptions opt;
    opt.trials = cfg.trials;
    for (auto& r : distortion_comparison(cfg, opt)) rep.add(std::move(r));
    return rep;
}

std::vector<Record> glued_sensitivity(const ExperimentConfig& cfg, std::size_t builds) {
    const PlantedBenchmark bench = gen_planted(cfg, derive_key(cfg.seed, "planted"));
    const GluedParams params = GluedParams::derive(cfg.r, cfg.p1, cfg.p2, cfg.s, cfg.d);
    const double cr = params.cr();
    struct Build {
        double close = 0, far = 0, raw = 0, star = 0;
    };
    std::vector<Build> out(builds);
    parallel_for(builds, [&](std::size_t b) {
        const GluedLsh h = GluedLsh::build(bench.data, params, derive_key(cfg.seed, "glued-build", b));
        CounterRng rng(cfg.seed, "glued-u", b);
        std::size_t close = 0, far = 0, raw = 0, star = 0;
        const std::size_t Q = bench.near_queries.size();
        for (std::size_t i = 0; i < Q; ++i) {
            const GluedBucket hq = h.eval(bench.near_queries[i]);
            star += hq.is_star();
            close += hq == h.eval(bench.data[bench.near_index[i]]);
            const PointSet& z = bench.far_queries[i % bench.far_queries.size()];
            const PointSet& u = bench.data[rng.uniform_index(bench.data.n())];
            const bool collide = h.eval(z) == h.eval(u);
            raw += collide;
            far += collide && emd(z, u) > cr;
        }
        const double q = static_cast<double>(Q);
        out[b] = {static_cast<double>(close) / q, static_cast<double>(far) / q, static_cast<double>(raw) / q,
                  static_cast<double>(star) / q};
    });
    double close = 0, far = 0, raw = 0, star = 0;
    for (const Build& b : out) {
        close += b.close;
        far += b.far;
        raw += b.raw;
        star += b.star;
    }
    const double B = static_cast<double>(builds);
    // Per-build rates are i.i.d. in [0, 1] with variance at most p (1 - p).
    const double s1 = stats::binomial_sigma(cfg.p1, B), s2 = stats::binomial_sigma(cfg.p2, B);
    const std::string scale = "cr=" + fmt(cr) + " tau=" + fmt(params.tau) + " gamma=" + fmt(params.gamma);
    std::vector<Record> recs;
    recs.push_back(Record::check("glued.close_collision", close / B, Relation::at_least, cfg.p1, kSigmas * s1, s1,
                                 builds, scale + " star_fraction=" + fmt(star / B)));
    recs.push_back(Record::check("glued.far_collision", far / B, Relation::at_most, cfg.p2, kSigmas * s2, s2, builds,
                                 "raw_collision_with_u=" + fmt(raw / B)));
    return recs;
}

std::vector<Record> ann_benchmark(const ExperimentConfig& cfg) {
    const PlantedBenchmark bench = gen_planted(cfg, derive_key(cfg.seed, "planted"));
    const AnnIndex index = AnnIndex::build(bench.data, cfg.r, cfg.p1, cfg.p2, derive_key(cfg.seed, "ann-build"));
    const double cr = index.cr();
    const std::size_t Q = bench.near_queries.size();
    struct Res {
        bool found = false, valid = true;
        QueryStats st;
    };
    std::vector<Res> near(Q), far(bench.far_queries.size());
    auto run = [&](const PointSet& q, Res& r) {
        const auto ans = index.query(q, &r.st);
        r.found = ans.has_value();
        if (ans) r.valid = emd_exact(bench.data[*ans], q).cost <= cr;
    };
    parallel_for(Q, [&](std::size_t i) { run(bench.near_queries[i], near[i]); });
    parallel_for(far.size(), [&](std::size_t i) { run(bench.far_queries[i], far[i]); });
    std::size_t found = 0, invalid = 0;
    double leaf = 0, dist = 0;
    for (const Res& r : near) {
        found += r.found;
        invalid += !r.valid;
        leaf += static_cast<double>(r.st.leaf_scan_evals);
        dist += static_cast<double>(r.st.distance_evals);
    }
    for (const Res& r : far) invalid += !r.valid;
    const auto& a = index.params();
    const double q = static_cast<double>(Q);
    const double sigma = stats::binomial_sigma(0.9, q);
    const double envelope = 4.0 * (static_cast<double>(a.k) +
                                   static_cast<double>(bench.data.n()) * std::pow(cfg.p2, static_cast<double>(a.k)));
    std::vector<Record> recs;
    recs.push_back(Record::check("ann.recall", static_cast<double>(found) / q, Relation::at_least, 0.9,
                                 kSigmas * sigma, sigma, Q,
                                 "k=" + std::to_string(a.k) + " trees=" + std::to_string(a.repetitions) +
                                     " cr=" + fmt(cr)));
    recs.push_back(Record::check("ann.invalid_answers", static_cast<double>(invalid), Relation::at_most, 0.0, 0.0, 0.0,
                                 Q + far.size()));
    recs.push_back(Record::check("ann.mean_leaf_scan_evals", leaf / q, Relation::at_most, envelope, 0.0, 0.0, Q,
                                 "mean_distance_evals=" + fmt(dist / q)));
    return recs;
}

stats::StatsReport run_ann_suite(const ExperimentConfig& cfg) {
    cfg.validate();
    auto rep = make_report("ann", cfg);
    for (auto& r : glued_sensitivity(cfg, cfg.trials)) rep.add(std::move(r));
    for (auto& r : ann_benchmark(cfg)) rep.add(std::move(r));
    return rep;
}

}  // namespace emdlsh
