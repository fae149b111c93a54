#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "emdlsh/digest.hpp"
#include "emdlsh/lazy_unary.hpp"
#include "emdlsh/point_set.hpp"
#include "emdlsh/random.hpp"

namespace emdlsh {

// Ground space of a tree or hash: hypercube {0,1}^dim, or grid [delta]^dim
// viewed through its unary encoding in {0,1}^(dim delta).
struct TreeShape {
    Mode mode = Mode::hypercube;
    std::size_t dim = 0;
    std::int64_t delta = 1;

    static TreeShape hypercube(std::size_t d) { return {Mode::hypercube, d, 1}; }
    static TreeShape grid(std::size_t d, std::int64_t delta) { return {Mode::grid, d, delta}; }
    static TreeShape of(const Vector& a);

    std::size_t effective_dim() const noexcept {
        return mode == Mode::grid ? dim * static_cast<std::size_t>(delta) : dim;
    }
    // Throws InvalidInput unless a lives in this space.
    void check(const Vector& a) const;

    friend bool operator==(const TreeShape&, const TreeShape&) = default;
};

// L = ceil(2 log2 d_eff).
std::size_t tree_depth(std::size_t effective_dim);

// The map phi_l of one tree level: 2^l coordinates of the (unary) cube
// sampled with replacement, or the identity at the last level. A vector's
// projected pattern is exposed as raw words and as a digest.
class LevelProjection {
public:
    enum class Kind { sampled, lazy_unary, identity };

    static LevelProjection sampled(std::size_t count, std::size_t d, CounterRng& rng);
    static LevelProjection lazy_unary(std::uint64_t count, const TreeShape& shape, std::uint64_t seed);
    static LevelProjection identity(const TreeShape& shape);
    // Level l of a tree over `shape`: identity if l == L, else 2^l samples.
    static LevelProjection for_level(const TreeShape& shape, std::size_t level, std::uint64_t level_seed);

    Kind kind() const noexcept { return kind_; }
    std::uint64_t sample_count() const noexcept { return count_; }
    // Sampled coordinates (Kind::sampled only).
    const std::vector<std::uint32_t>& coords() const noexcept { return coords_; }

    void pattern_words(const Vector& a, std::vector<std::uint64_t>& out) const;
    Digest128 pattern(const Vector& a) const;
    static Digest128 digest_words(const std::vector<std::uint64_t>& words);

private:
    Kind kind_ = Kind::identity;
    std::uint64_t count_ = 0;
    std::vector<std::uint32_t> coords_;
    std::size_t min_dim_ = 0;  // 1 + largest sampled coordinate
    std::shared_ptr<const LazyUnaryLevel> lazy_;
};

}  // namespace emdlsh
