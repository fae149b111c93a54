#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "emdlsh/point_set.hpp"
#include "emdlsh/random.hpp"

namespace emdlsh {

// Randomly shifted one-dimensional grid on a random axis:
// g(a) = ceil((a[axis] + offset) / cell_width).
struct GridHash {
    std::size_t axis = 0;
    double offset = 0.0;
    double cell_width = 1.0;

    static GridHash sample(std::size_t d, double cell_width, CounterRng& rng);
};

std::int64_t grid_hash_eval(const GridHash& g, const Vector& a);

// Shared random linear map from (R^d, l_p) into (R^d', l_1), p in (1, 2].
// Entries are i.i.d. symmetric p-stable, scaled so that the expected l1
// image distance equals the l_p input distance.
class LpToL1Map {
public:
    LpToL1Map(std::size_t d, double p, double eps, std::uint64_t seed);

    std::size_t input_dim() const noexcept { return d_; }
    std::size_t output_dim() const noexcept { return out_; }
    double p() const noexcept { return p_; }
    Vector apply(const Vector& a) const;

private:
    std::size_t d_;
    std::size_t out_;
    double p_;
    std::vector<double> m_;  // out_ x d_, row-major, scale folded in
};

// d' = ceil(d ln(1/eps) / eps^2).
std::size_t lp_to_l1_dim(std::size_t d, double eps);

// p = 1 passes the input through unchanged.
std::vector<PointSet> lp_to_l1(std::span<const PointSet> dataset, double p, double eps, std::uint64_t seed);

// Default accuracy knob for the output dimension t; see sample_threshold_map.
inline constexpr double kThresholdEps = 1.0;

// t = ceil(64 (s c / eps)^2 ln(2 s^2 / delta)).
std::size_t threshold_bits(std::size_t s, double c, double delta, double eps = kThresholdEps);

// f(a) = (chi_1(g_1(a)), ..., chi_t(g_t(a))) where g_i concatenates d grid
// hashes of width R = c tau and chi_i is a keyed random bit of the cell tuple.
// Near pairs (EMD <= tau) land within r = t / (1.99 c) and far pairs
// (EMD >= c tau) beyond c r / 3, each with probability >= 1 - delta.
class ThresholdMap {
public:
    ThresholdMap(std::size_t s, std::size_t d, double c, double tau, double delta, std::uint64_t seed,
                 double eps = kThresholdEps);

    std::size_t t() const noexcept { return t_; }
    std::size_t input_dim() const noexcept { return d_; }
    double R() const noexcept { return R_; }
    double r() const noexcept { return r_; }
    double c() const noexcept { return c_; }
    double tau() const noexcept { return tau_; }
    std::uint64_t seed() const noexcept { return seed_; }

    GridHash grid(std::size_t bit, std::size_t k) const;
    // Digest of the d-fold cell tuple g_i(a).
    Digest128 cell_digest(std::size_t bit, const Vector& a) const;
    bool bit(std::size_t i, const Vector& a) const;
    Vector apply(const Vector& a) const;

private:
    void check_input(const Vector& a) const;

    std::size_t d_;
    std::size_t t_;
    double c_;
    double tau_;
    double R_;
    double r_;
    std::uint64_t seed_;
    std::uint64_t chi_key_;
    std::vector<std::uint32_t> axes_;  // t x d
    std::vector<double> offsets_;      // t x d
};

ThresholdMap sample_threshold_map(std::size_t s, std::size_t d, double c, double tau, double delta,
                                  std::uint64_t seed, double eps = kThresholdEps);
PointSet threshold_map_apply(const ThresholdMap& f, const PointSet& x);

}  // namespace emdlsh
