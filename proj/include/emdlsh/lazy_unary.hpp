#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "emdlsh/point_set.hpp"
#include "emdlsh/random.hpp"

namespace emdlsh {

// Order embedding of a grid vector x in [1, delta]^d into {0,1}^(d delta):
// bit delta*t + (j-1) is 1 iff x[t] >= j.
Vector unary_encode(const Vector& x);

// One level's worth of `samples` coordinates drawn with replacement from
// the implicit unary cube {0,1}^(d delta), realized by deferred decisions.
// Only the number of samples per block and, inside a block, the number at
// positions <= c for thresholds c already queried are ever fixed. A query's
// pattern is the per-block count vector, which induces the same partition
// of [delta]^d as reading the sampled unary bits. Realized counts are never
// revised, so earlier answers stay consistent.
class LazyUnaryLevel {
public:
    LazyUnaryLevel(std::uint64_t samples, std::size_t d, std::int64_t delta, std::uint64_t seed);
    LazyUnaryLevel(const LazyUnaryLevel& other);
    LazyUnaryLevel& operator=(const LazyUnaryLevel& other);
    LazyUnaryLevel(LazyUnaryLevel&&) noexcept = default;
    LazyUnaryLevel& operator=(LazyUnaryLevel&&) noexcept = default;

    std::uint64_t samples() const noexcept { return samples_; }
    std::size_t dim() const noexcept { return d_; }
    std::int64_t delta() const noexcept { return delta_; }

    // a[t] = number of block-t samples at positions <= x[t]. Thread-safe.
    std::vector<std::uint64_t> counts(const Vector& x) const;
    // Number of distinct thresholds realized so far across all blocks.
    std::size_t realized_cuts() const;

private:
    struct State {
        std::vector<std::map<std::int64_t, std::uint64_t>> cuts;  // per block: c -> #samples <= c
        CounterRng rng;
        mutable std::mutex mu;
    };

    std::uint64_t samples_;
    std::size_t d_;
    std::int64_t delta_;
    std::unique_ptr<State> state_;
};

}  // namespace emdlsh
