#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "emdlsh/digest.hpp"
#include "emdlsh/point_set.hpp"
#include "emdlsh/quadtree.hpp"

namespace emdlsh {

// Each element together with its d single-bit flips, deduplicated, in
// first-seen order.
std::vector<Vector> nbr(std::span<const Vector> omega);

// xi = ceil(4 ln(m s d / delta)).
double sampletree_xi(std::size_t m, std::size_t s, std::size_t d, double delta);
// m = ceil(16 ln(s d) / alpha), at least 1.
std::size_t sampletree_default_m(std::size_t s, std::size_t d, double alpha);

struct SampleTreeDraw {
    QuadTree tree;
    std::vector<Vector> omega;      // elements of the m sampled points, with repeats
    std::vector<Vector> omega_hat;  // nbr(omega)
    std::vector<std::size_t> sampled_points;  // indices into the dataset
    std::size_t m = 0;
    double xi = 0.0;
    double delta = 0.0;
};

// m i.i.d. uniform draws from mu, then a quadtree on nbr(Omega).
SampleTreeDraw build_sampletree(std::span<const PointSet> mu, std::size_t m, double delta, std::uint64_t seed);
inline SampleTreeDraw build_sampletree(const Dataset& mu, std::size_t m, double delta, std::uint64_t seed) {
    return build_sampletree(std::span<const PointSet>(mu.points()), m, delta, seed);
}

// Sparse nonnegative vector keyed by edge id (the child node key).
struct SparseVector {
    std::vector<std::pair<Digest128, double>> entries;  // sorted by key, values > 0

    std::size_t nnz() const noexcept { return entries.size(); }
    double value(const Digest128& key) const;
};

double l1_distance(const SparseVector& a, const SparseVector& b);

// psi(x)[e] = w(e) * #{elements of x whose path uses e}. The l1 distance of
// two embeddings is the EMD over the tree metric.
SparseVector embed_l1(const QuadTree& tree, const PointSet& x);
inline SparseVector embed_l1(const SampleTreeDraw& draw, const PointSet& x) { return embed_l1(draw.tree, x); }

// Per coordinate e: cell floor((v_e + b_e) / gamma) with a keyed offset
// b_e in [0, gamma). The bucket is the set of (e, cell) with a nonzero cell;
// absent coordinates have value 0 and cell 0, so they never enter it.
class L1Lsh {
public:
    L1Lsh(double gamma, std::uint64_t seed);

    double gamma() const noexcept { return gamma_; }
    double offset(const Digest128& coordinate) const noexcept;
    BucketId eval(const SparseVector& v) const;

private:
    double gamma_;
    std::uint64_t offset_key_;
};

L1Lsh sample_l1_lsh(double gamma, std::uint64_t seed);
BucketId l1_lsh_eval(const L1Lsh& lsh, const SparseVector& v);
BucketId sampletree_hash_eval(const SampleTreeDraw& draw, const L1Lsh& lsh, const PointSet& x);

}  // namespace emdlsh
