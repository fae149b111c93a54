#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>

namespace emdlsh {

// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t rotl64(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
}

struct Digest128 {
    std::uint64_t hi = 0;
    std::uint64_t lo = 0;

    friend constexpr bool operator==(const Digest128&, const Digest128&) = default;
    friend constexpr auto operator<=>(const Digest128&, const Digest128&) = default;
};

// Streaming 128-bit digest over 64-bit words. Two independently keyed lanes,
// each a chain of splitmix finalizers, cross-mixed at the end. Not
// cryptographic; collisions are ~2^-64 per pair of distinct inputs in practice.
class DigestBuilder {
public:
    constexpr explicit DigestBuilder(std::uint64_t key = 0) noexcept
        : a_(mix64(key ^ 0x243f6a8885a308d3ULL)), b_(mix64(key + 0x13198a2e03707344ULL)) {}

    constexpr DigestBuilder& add(std::uint64_t v) noexcept {
        ++n_;
        a_ = mix64(a_ ^ v ^ (n_ * 0x9e3779b97f4a7c15ULL));
        b_ = mix64(rotl64(b_, 29) + v + (n_ * 0xd6e8feb86659fd93ULL));
        return *this;
    }
    constexpr DigestBuilder& add(const Digest128& d) noexcept { return add(d.hi).add(d.lo); }
    DigestBuilder& add_double(double v) noexcept {
        if (v == 0.0) v = 0.0;  // fold -0 into +0
        return add(std::bit_cast<std::uint64_t>(v));
    }

    constexpr Digest128 finish() const noexcept {
        const std::uint64_t h = mix64(a_ ^ rotl64(b_, 17) ^ n_);
        const std::uint64_t l = mix64(b_ ^ rotl64(a_, 41) ^ ~n_);
        return {h, l};
    }

private:
    std::uint64_t a_;
    std::uint64_t b_;
    std::uint64_t n_ = 0;
};

// Opaque hash output; equality is collision.
struct BucketId {
    Digest128 value;

    friend constexpr bool operator==(const BucketId&, const BucketId&) = default;
    friend constexpr auto operator<=>(const BucketId&, const BucketId&) = default;
};

struct DigestHash {
    std::size_t operator()(const Digest128& d) const noexcept {
        return static_cast<std::size_t>(d.lo ^ rotl64(d.hi, 31));
    }
    std::size_t operator()(const BucketId& b) const noexcept { return (*this)(b.value); }
};

}  // namespace emdlsh
