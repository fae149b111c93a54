#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string_view>

#include "emdlsh/digest.hpp"

namespace emdlsh {

constexpr std::uint64_t label_hash(std::string_view s) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Key of an independent named substream: derive_key(seed, "label", i, j, ...).
template <class... Ix>
constexpr std::uint64_t derive_key(std::uint64_t seed, std::string_view label, Ix... ix) noexcept {
    DigestBuilder b(seed);
    b.add(label_hash(label));
    (b.add(static_cast<std::uint64_t>(ix)), ...);
    return b.finish().hi;
}

// Keyed pseudorandom function family: word, unit double, bit.
template <class... Ix>
constexpr std::uint64_t prf64(std::uint64_t key, Ix... ix) noexcept {
    DigestBuilder b(key);
    (b.add(static_cast<std::uint64_t>(ix)), ...);
    return b.finish().lo;
}

constexpr double unit_from_bits(std::uint64_t w) noexcept {
    return static_cast<double>(w >> 11) * 0x1.0p-53;
}

template <class... Ix>
constexpr double prf_unit(std::uint64_t key, Ix... ix) noexcept {
    return unit_from_bits(prf64(key, ix...));
}

// Counter-based generator: output i is a keyed mix of i. Substreams with
// different keys are independent for all practical purposes, and a
// generator can be reconstructed anywhere from (key, counter).
class CounterRng {
public:
    using result_type = std::uint64_t;

    constexpr explicit CounterRng(std::uint64_t key = 0) noexcept : key_(mix64(key ^ 0x6a09e667f3bcc909ULL)) {}
    template <class... Ix>
    constexpr CounterRng(std::uint64_t seed, std::string_view label, Ix... ix) noexcept
        : CounterRng(derive_key(seed, label, ix...)) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()() noexcept {
        return mix64(mix64(key_ + (ctr_++) * 0x9e3779b97f4a7c15ULL) ^ key_);
    }

    constexpr std::uint64_t counter() const noexcept { return ctr_; }

    // Unbiased integer in [0, n), n >= 1 (Lemire's multiply-shift rejection).
    std::uint64_t uniform_index(std::uint64_t n) noexcept {
        __uint128_t m = static_cast<__uint128_t>((*this)()) * n;
        auto low = static_cast<std::uint64_t>(m);
        if (low < n) {
            const std::uint64_t threshold = (0 - n) % n;
            while (low < threshold) {
                m = static_cast<__uint128_t>((*this)()) * n;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    // Uniform in [0, 1) with 53 random bits.
    double uniform01() noexcept { return unit_from_bits((*this)()); }
    // Uniform in (0, 1).
    double uniform_open() noexcept {
        double u;
        do u = uniform01();
        while (u == 0.0);
        return u;
    }
    double uniform(double a, double b) noexcept { return a + (b - a) * uniform01(); }
    bool bernoulli(double p) noexcept { return uniform01() < p; }
    double exponential() noexcept { return -std::log(uniform_open()); }

private:
    std::uint64_t key_;
    std::uint64_t ctr_ = 0;
};

}  // namespace emdlsh
