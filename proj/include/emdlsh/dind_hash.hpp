#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "emdlsh/digest.hpp"
#include "emdlsh/point_set.hpp"
#include "emdlsh/projection.hpp"

namespace emdlsh {

// Data-independent hash at scale tau and level l. Elements are projected
// onto 2^l sampled coordinates; the bucket of x is the set of (pattern u,
// multiplicity k) such that at least k elements of x project to u and the
// keyed coin C_{u,k} ~ Ber(min(1, d / (tau 2^(l+1)))) came up heads.
class DataIndHash {
public:
    struct Entry {
        Digest128 pattern;
        std::uint32_t k = 0;

        friend bool operator==(const Entry&, const Entry&) = default;
        friend auto operator<=>(const Entry&, const Entry&) = default;
    };

    DataIndHash(const TreeShape& shape, double tau, std::size_t level, std::uint64_t seed);

    const TreeShape& shape() const noexcept { return shape_; }
    std::size_t level() const noexcept { return level_; }
    double tau() const noexcept { return tau_; }
    double bernoulli_rate() const noexcept { return rate_; }
    const LevelProjection& projection() const noexcept { return proj_; }

    bool coin(const Digest128& pattern, std::uint32_t k) const noexcept;
    // Sorted, at most s entries.
    std::vector<Entry> active_entries(const PointSet& x) const;
    BucketId eval(const PointSet& x) const;

private:
    TreeShape shape_;
    std::size_t level_;
    double tau_;
    double rate_;
    std::uint64_t coin_key_;
    LevelProjection proj_;
};

DataIndHash sample_dind_hash(const TreeShape& shape, double tau, std::size_t level, std::uint64_t seed);
BucketId dind_eval(const DataIndHash& h, const PointSet& x);

}  // namespace emdlsh
