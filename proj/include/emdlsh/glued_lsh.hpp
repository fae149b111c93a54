#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "emdlsh/digest.hpp"
#include "emdlsh/dind_hash.hpp"
#include "emdlsh/point_set.hpp"
#include "emdlsh/sampletree.hpp"

namespace emdlsh {

struct GluedParams {
    double r = 0.0;
    double p1 = 0.0;
    double p2 = 0.0;
    std::size_t s = 0;
    std::size_t d = 0;
    std::size_t L = 0;
    double tau = 0.0;
    double alpha = 0.0;
    double delta = 0.0;
    double lambda = 0.0;
    double gamma = 0.0;
    double c = 0.0;
    std::size_t m = 0;  // sample-tree size

    // tau = 4 (L+1) r / (1-p1), alpha = (1-p1) p2 / 6, delta = p2 / 3,
    // lambda = 8 ln(sd/(delta alpha)) (ln ln max(sd/alpha, e^2))^2,
    // gamma = (lambda ln(20 (L+1)/(1-p1)) + ln(1/(1-p1))) tau / (L+1),
    // c = ln(3/p2) gamma / r, m = ceil(16 ln(sd) / alpha).
    static GluedParams derive(double r, double p1, double p2, std::size_t s, std::size_t d);

    double cr() const noexcept { return c * r; }
    // Throws ParameterError unless 0 < p2 < p1 < 1 and every scale is positive.
    void validate() const;
};

struct GluedBucket {
    static constexpr int kStar = -1;

    int level = kStar;  // 0..L, or kStar for the sample-tree fallback
    BucketId bucket;

    bool is_star() const noexcept { return level == kStar; }
    friend bool operator==(const GluedBucket&, const GluedBucket&) = default;
};

struct GluedBucketHash {
    std::size_t operator()(const GluedBucket& g) const noexcept {
        return DigestHash{}(g.bucket) ^ static_cast<std::size_t>(static_cast<std::int64_t>(g.level) * 0x9e3779b97f4a7c15LL);
    }
};

// h(z) = (l(z), h_{l(z)}(z)) where l(z) is the first level whose bucket for z
// holds at most p2/3 of mu's mass, falling back to the sample-tree hash h_*.
class GluedLsh {
public:
    static GluedLsh build(std::span<const PointSet> mu, const GluedParams& params, std::uint64_t seed);
    static GluedLsh build(const Dataset& mu, const GluedParams& params, std::uint64_t seed) {
        return build(std::span<const PointSet>(mu.points()), params, seed);
    }

    const GluedParams& params() const noexcept { return params_; }
    std::size_t support_size() const noexcept { return n_; }
    const DataIndHash& level_hash(std::size_t l) const { return levels_.at(l); }
    // omega and omega_hat are released after the build; tree and sampled_points remain.
    const SampleTreeDraw& star_tree() const noexcept { return star_tree_; }
    const L1Lsh& star_lsh() const noexcept { return star_lsh_; }

    // mu-mass of a level-l bucket; 0 for buckets no support point hashes to.
    double level_mass(std::size_t l, const BucketId& b) const;
    std::size_t level_count(std::size_t l, const BucketId& b) const;
    const std::unordered_map<BucketId, std::size_t, DigestHash>& level_table(std::size_t l) const {
        return tables_.at(l);
    }

    std::vector<BucketId> level_buckets(const PointSet& z) const;
    GluedBucket eval(const PointSet& z) const;
    // Same as eval, given the per-level buckets of z.
    GluedBucket eval_from_levels(const PointSet& z, std::span<const BucketId> levels) const;

private:
    GluedLsh(GluedParams params, SampleTreeDraw star_tree, L1Lsh star_lsh)
        : params_(params), star_tree_(std::move(star_tree)), star_lsh_(star_lsh) {}

    GluedParams params_;
    std::size_t n_ = 0;
    TreeShape shape_;
    std::vector<DataIndHash> levels_;
    std::vector<std::unordered_map<BucketId, std::size_t, DigestHash>> tables_;
    SampleTreeDraw star_tree_;
    L1Lsh star_lsh_;
};

GluedLsh build_glued(const Dataset& mu, double r, double p1, double p2, std::uint64_t seed);
GluedBucket glued_eval(const GluedLsh& gl, const PointSet& z);

}  // namespace emdlsh
