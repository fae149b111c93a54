#include "emdlsh/ann_index.hpp"

#include <cmath>
#include <string>

#include "emdlsh/emd.hpp"
#include "emdlsh/errors.hpp"
#include "emdlsh/parallel.hpp"
#include "emdlsh/random.hpp"

namespace emdlsh {

namespace {
constexpr double kRepetitionConstant = 3.0;
constexpr double kMaxFailure = 0.1;
}  // namespace

AnnParams AnnParams::derive(std::size_t n, const GluedParams& glued) {
    if (n == 0) throw ParameterError("index needs n >= 1");
    glued.validate();
    AnnParams a;
    a.glued = glued;
    a.rho = std::log(1.0 / glued.p1) / std::log(1.0 / glued.p2);
    const double nd = static_cast<double>(n);
    a.k = n == 1 ? 0 : static_cast<std::size_t>(std::ceil(std::log(nd) / std::log(1.0 / glued.p2) - 1e-12));
    a.repetitions = static_cast<std::size_t>(std::ceil(kRepetitionConstant * std::pow(nd, a.rho) / glued.p1));
    if (n >= 2 && a.k == 0) a.k = 1;
    return a;
}

double AnnParams::failure_bound() const {
    return std::pow(1.0 - std::pow(glued.p1, static_cast<double>(k)), static_cast<double>(repetitions));
}

namespace {

void fix_depths(CoreNode& v, std::size_t depth) {
    v.depth = depth;
    for (auto& [b, c] : v.children) fix_depths(*c, depth + 1);
}

std::unique_ptr<CoreNode> preprocess(const Dataset& P, std::span<const std::size_t> subset, std::size_t k,
                                     const GluedParams& params, std::uint64_t seed) {
    if (subset.empty()) throw InvalidInput("core tree needs a nonempty residual set");
    auto node = std::make_unique<CoreNode>();
    CounterRng rng(seed, "core-point");
    node->point = subset[rng.uniform_index(subset.size())];
    node->residual_size = subset.size();
    if (k == 0 || subset.size() == 1) {
        node->leaf = true;
        node->data.assign(subset.begin(), subset.end());
        return node;
    }
    std::vector<PointSet> residual;
    residual.reserve(subset.size());
    for (std::size_t i : subset) residual.push_back(P[i]);
    node->hash = std::make_unique<GluedLsh>(GluedLsh::build(residual, params, derive_key(seed, "core-hash")));
    std::unordered_map<GluedBucket, std::vector<std::size_t>, GluedBucketHash> groups;
    std::vector<GluedBucket> order;
    for (std::size_t j = 0; j < subset.size(); ++j) {
        const GluedBucket b = node->hash->eval(residual[j]);
        auto [it, fresh] = groups.try_emplace(b);
        if (fresh) order.push_back(b);
        it->second.push_back(subset[j]);
    }
    for (const GluedBucket& b : order) {
        const std::uint64_t child_seed = derive_key(seed, "core-child", b.bucket.value.hi, b.bucket.value.lo,
                                                    static_cast<std::int64_t>(b.level));
        node->children.emplace(b, preprocess(P, groups[b], k - 1, params, child_seed));
    }
    return node;
}

}  // namespace

std::unique_ptr<CoreNode> core_preprocess(const Dataset& P, std::span<const std::size_t> subset, std::size_t k,
                                          const GluedParams& params, std::uint64_t seed) {
    auto root = preprocess(P, subset, k, params, seed);
    fix_depths(*root, 0);
    return root;
}

std::optional<std::size_t> core_query(const Dataset& P, const PointSet& q, const CoreNode& v, double cr,
                                      QueryStats* stats) {
    const CoreNode* cur = &v;
    for (;;) {
        if (stats) ++stats->distance_evals;
        if (emd(P[cur->point], q) <= cr) return cur->point;
        if (cur->leaf) {
            for (std::size_t i : cur->data) {
                if (stats) {
                    ++stats->distance_evals;
                    ++stats->leaf_scan_evals;
                }
                if (emd(P[i], q) <= cr) return i;
            }
            return std::nullopt;
        }
        if (stats) ++stats->hash_evals;
        auto it = cur->children.find(cur->hash->eval(q));
        if (it == cur->children.end()) return std::nullopt;
        cur = it->second.get();
    }
}

AnnIndex AnnIndex::build(Dataset P, double r, double p1, double p2, std::uint64_t seed) {
    const GluedParams g = GluedParams::derive(r, p1, p2, P.s(), P.dim());
    const AnnParams a = AnnParams::derive(P.n(), g);
    return build(std::move(P), a, seed);
}

AnnIndex AnnIndex::build(Dataset P, const AnnParams& params, std::uint64_t seed) {
    if (P.n() == 0) throw InvalidInput("index needs a nonempty dataset");
    if (params.repetitions == 0) throw ParameterError("index needs at least one repetition");
    if (params.failure_bound() > kMaxFailure)
        throw ParameterError("repetitions too few: (1 - p1^k)^reps = " + std::to_string(params.failure_bound()));
    AnnIndex idx;
    idx.P_ = std::move(P);
    idx.params_ = params;
    idx.trees_.resize(params.repetitions);
    std::vector<std::size_t> all(idx.P_.n());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    parallel_for(params.repetitions, [&](std::size_t t) {
        idx.trees_[t] = core_preprocess(idx.P_, all, params.k, params.glued, derive_key(seed, "ann-tree", t));
    });
    return idx;
}

std::optional<std::size_t> AnnIndex::query(const PointSet& q, QueryStats* stats) const {
    check_same_shape(P_[0], q);
    for (const auto& t : trees_) {
        if (stats) ++stats->trees_tried;
        if (auto hit = core_query(P_, q, *t, cr(), stats)) return hit;
    }
    return std::nullopt;
}

}  // namespace emdlsh
