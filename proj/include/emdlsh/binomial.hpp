#pragma once

#include <cstdint>

#include "emdlsh/random.hpp"

namespace emdlsh {

// Exact Binomial(n, q) draw. Small means use geometric gap skipping;
// larger means use inversion by outward search from the mode, so the
// expected cost is O(1 + min(nq, sqrt(nq(1-q)))).
std::uint64_t sample_binomial(std::uint64_t n, double q, CounterRng& rng);

}  // namespace emdlsh
