#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "emdlsh/point_set.hpp"

namespace emdlsh {

// l_p distance, p in [1, 2]. Integer modes accept only p = 1.
double ground_distance(const Vector& a, const Vector& b, double p = 1.0);
// Exact l1 distance for integer modes.
std::int64_t l1_distance_int(const Vector& a, const Vector& b);

struct Matching {
    // Element i of x is matched to element permutation[i] of y.
    std::vector<std::size_t> permutation;
    double cost = 0.0;
};

// Min-cost perfect matching by shortest augmenting paths with potentials,
// O(s^3). Integer-mode costs are computed in int64 and are exact.
Matching emd_exact(const PointSet& x, const PointSet& y, double p = 1.0);
double emd(const PointSet& x, const PointSet& y, double p = 1.0);

inline constexpr std::size_t kBruteforceMaxS = 8;
// Minimum over all s! permutations; throws OracleSizeError for s > 8.
double emd_bruteforce(const PointSet& x, const PointSet& y, double p = 1.0);

// Dense assignment on an n x n row-major cost matrix; returns the
// column assigned to each row.
std::vector<std::size_t> solve_assignment(std::span<const std::int64_t> cost, std::size_t n);
std::vector<std::size_t> solve_assignment(std::span<const double> cost, std::size_t n);

double chamfer(const PointSet& x, std::span<const Vector> omega, double p = 1.0);

// Repeatedly match the globally closest unmatched pair, ties to the lowest (i, j).
double greedy_matching_cost(const PointSet& x, const PointSet& y, double p = 1.0);

}  // namespace emdlsh
