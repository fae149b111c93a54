#include "emdlsh/glued_lsh.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "emdlsh/errors.hpp"
#include "emdlsh/random.hpp"

namespace emdlsh {

GluedParams GluedParams::derive(double r, double p1, double p2, std::size_t s, std::size_t d) {
    GluedParams g;
    g.r = r;
    g.p1 = p1;
    g.p2 = p2;
    g.s = s;
    g.d = d;
    if (!(p2 > 0.0 && p2 < p1 && p1 < 1.0)) throw ParameterError("need 0 < p2 < p1 < 1");
    if (s == 0 || d == 0) throw ParameterError("need s, d >= 1");
    if (!(r > static_cast<double>(s)))
        throw ParameterError("need r > s (r = " + std::to_string(r) + ", s = " + std::to_string(s) + ")");
    g.L = tree_depth(d);
    const double levels = static_cast<double>(g.L + 1);
    const double sd = static_cast<double>(s) * static_cast<double>(d);
    g.tau = 4.0 * levels * r / (1.0 - p1);
    g.alpha = (1.0 - p1) * p2 / 6.0;
    g.delta = p2 / 3.0;
    const double e2 = std::numbers::e * std::numbers::e;
    const double loglog = std::log(std::log(std::max(sd / g.alpha, e2)));
    g.lambda = 8.0 * std::log(sd / (g.delta * g.alpha)) * loglog * loglog;
    g.gamma = (g.lambda * std::log(20.0 * levels / (1.0 - p1)) + std::log(1.0 / (1.0 - p1))) * g.tau / levels;
    g.c = std::log(3.0 / p2) * g.gamma / r;
    g.m = sampletree_default_m(s, d, g.alpha);
    g.validate();
    return g;
}

void GluedParams::validate() const {
    if (!(p2 > 0.0 && p2 < p1 && p1 < 1.0)) throw ParameterError("need 0 < p2 < p1 < 1");
    if (s == 0 || d == 0 || m == 0) throw ParameterError("need s, d, m >= 1");
    if (!(r > static_cast<double>(s))) throw ParameterError("need r > s");
    if (L != tree_depth(d)) throw ParameterError("L must equal the tree depth for d");
    if (!(tau > 0 && alpha > 0 && delta > 0 && delta < 1 && gamma > 0 && c > 0))
        throw ParameterError("derived scales must be positive (and delta < 1)");
}

GluedLsh GluedLsh::build(std::span<const PointSet> mu, const GluedParams& params, std::uint64_t seed) {
    params.validate();
    if (mu.empty()) throw InvalidInput("glued hash needs a nonempty dataset");
    if (mu[0].mode() != Mode::hypercube) throw InvalidInput("glued hash works on hypercube datasets");
    if (mu[0].s() != params.s || mu[0].dim() != params.d)
        throw InvalidInput("dataset shape does not match the hash parameters");
    SampleTreeDraw star = build_sampletree(mu, params.m, params.delta, derive_key(seed, "glued-star-tree"));
    // The tree holds its own copy of omega_hat; the sample lists are not needed for hashing.
    star.omega = {};
    star.omega_hat = {};
    GluedLsh g(params, std::move(star), L1Lsh(params.gamma, derive_key(seed, "glued-star-lsh")));
    g.n_ = mu.size();
    g.shape_ = TreeShape::hypercube(params.d);
    g.levels_.reserve(params.L + 1);
    g.tables_.resize(params.L + 1);
    for (std::size_t l = 0; l <= params.L; ++l) {
        g.levels_.emplace_back(g.shape_, params.tau, l, derive_key(seed, "glued-level", l));
        for (const PointSet& u : mu) ++g.tables_[l][g.levels_[l].eval(u)];
    }
    return g;
}

std::size_t GluedLsh::level_count(std::size_t l, const BucketId& b) const {
    const auto& t = tables_.at(l);
    auto it = t.find(b);
    return it == t.end() ? 0 : it->second;
}

double GluedLsh::level_mass(std::size_t l, const BucketId& b) const {
    return static_cast<double>(level_count(l, b)) / static_cast<double>(n_);
}

std::vector<BucketId> GluedLsh::level_buckets(const PointSet& z) const {
    std::vector<BucketId> out;
    out.reserve(levels_.size());
    for (const auto& h : levels_) out.push_back(h.eval(z));
    return out;
}

GluedBucket GluedLsh::eval_from_levels(const PointSet& z, std::span<const BucketId> levels) const {
    const double limit = params_.p2 / 3.0;
    for (std::size_t l = 0; l < levels.size(); ++l)
        if (level_mass(l, levels[l]) <= limit) return {static_cast<int>(l), levels[l]};
    return {GluedBucket::kStar, sampletree_hash_eval(star_tree_, star_lsh_, z)};
}

GluedBucket GluedLsh::eval(const PointSet& z) const {
    const double limit = params_.p2 / 3.0;
    for (std::size_t l = 0; l < levels_.size(); ++l) {
        const BucketId b = levels_[l].eval(z);
        if (level_mass(l, b) <= limit) return {static_cast<int>(l), b};
    }
    return {GluedBucket::kStar, sampletree_hash_eval(star_tree_, star_lsh_, z)};
}

GluedLsh build_glued(const Dataset& mu, double r, double p1, double p2, std::uint64_t seed) {
    return GluedLsh::build(mu, GluedParams::derive(r, p1, p2, mu.s(), mu.dim()), seed);
}

GluedBucket glued_eval(const GluedLsh& gl, const PointSet& z) { return gl.eval(z); }

}  // namespace emdlsh
