#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "emdlsh/point_set.hpp"
#include "emdlsh/random.hpp"

namespace testsupport {

using emdlsh::CounterRng;
using emdlsh::PointSet;
using emdlsh::Vector;

inline Vector bits(std::initializer_list<int> b) {
    std::vector<double> v(b.begin(), b.end());
    return Vector::hypercube(std::move(v));
}

inline Vector random_bits(std::size_t d, CounterRng& rng) {
    std::vector<double> v(d);
    for (auto& x : v) x = static_cast<double>(rng.uniform_index(2));
    return Vector::hypercube(std::move(v));
}

inline Vector random_grid(std::size_t d, std::int64_t delta, CounterRng& rng) {
    std::vector<double> v(d);
    for (auto& x : v) x = static_cast<double>(1 + rng.uniform_index(static_cast<std::uint64_t>(delta)));
    return Vector::grid(std::move(v), delta);
}

inline Vector random_real(std::size_t d, CounterRng& rng) {
    std::vector<double> v(d);
    for (auto& x : v) x = rng.uniform(-1.0, 1.0);
    return Vector::real(std::move(v));
}

inline PointSet random_set(std::size_t s, std::size_t d, CounterRng& rng) {
    std::vector<Vector> e;
    for (std::size_t i = 0; i < s; ++i) e.push_back(random_bits(d, rng));
    return PointSet(std::move(e));
}

// Flip `count` distinct coordinates of element `which`.
inline Vector flip_some(const Vector& a, std::size_t count, CounterRng& rng) {
    Vector out = a;
    std::vector<std::size_t> idx(a.dim());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j = i + rng.uniform_index(idx.size() - i);
        std::swap(idx[i], idx[j]);
        out = out.flipped(idx[i]);
    }
    return out;
}

inline double binomial_sigma(double p, double n) { return std::sqrt(p * (1.0 - p) / n); }

}  // namespace testsupport
