#include "emdlsh/binomial.hpp"

#include <cmath>

#include "emdlsh/errors.hpp"

namespace emdlsh {

namespace {

constexpr double kSkipMeanLimit = 16.0;

std::uint64_t by_gap_skipping(std::uint64_t n, double q, CounterRng& rng) {
    const double log_fail = std::log1p(-q);
    std::uint64_t successes = 0;
    double pos = 0.0;  // index of the last success, 1-based
    const double limit = static_cast<double>(n);
    for (;;) {
        pos += std::floor(std::log(rng.uniform_open()) / log_fail) + 1.0;
        if (pos > limit) return successes;
        ++successes;
    }
}

std::uint64_t by_mode_search(std::uint64_t n, double q, CounterRng& rng) {
    const double nd = static_cast<double>(n);
    const double ratio = q / (1.0 - q);
    const auto mode = static_cast<std::uint64_t>(std::floor((nd + 1.0) * q));
    const double md = static_cast<double>(mode);
    const double p_mode = std::exp(std::lgamma(nd + 1.0) - std::lgamma(md + 1.0) - std::lgamma(nd - md + 1.0) +
                                   md * std::log(q) + (nd - md) * std::log1p(-q));
    for (;;) {
        double u = rng.uniform01() - p_mode;
        if (u < 0.0) return mode;
        std::uint64_t lo = mode, hi = mode;
        double p_lo = p_mode, p_hi = p_mode;
        bool lo_open = lo > 0, hi_open = hi < n;
        while (lo_open || hi_open) {
            if (hi_open) {
                p_hi *= static_cast<double>(n - hi) / static_cast<double>(hi + 1) * ratio;
                ++hi;
                u -= p_hi;
                if (u < 0.0) return hi;
                hi_open = hi < n && p_hi > 0.0;
            }
            if (lo_open) {
                p_lo *= static_cast<double>(lo) / (static_cast<double>(n - lo + 1) * ratio);
                --lo;
                u -= p_lo;
                if (u < 0.0) return lo;
                lo_open = lo > 0 && p_lo > 0.0;
            }
        }
        // Rounding left a sliver of unassigned mass; redraw.
    }
}

}  // namespace

std::uint64_t sample_binomial(std::uint64_t n, double q, CounterRng& rng) {
    if (!(q >= 0.0 && q <= 1.0)) throw ParameterError("binomial probability must lie in [0, 1]");
    if (n == 0 || q == 0.0) return 0;
    if (q == 1.0) return n;
    if (q > 0.5) return n - sample_binomial(n, 1.0 - q, rng);
    if (static_cast<double>(n) * q < kSkipMeanLimit) return by_gap_skipping(n, q, rng);
    return by_mode_search(n, q, rng);
}

}  // namespace emdlsh
