#include "emdlsh/sampletree.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "emdlsh/errors.hpp"
#include "emdlsh/random.hpp"

namespace emdlsh {

namespace {

constexpr std::uint64_t kL1BucketTag = 0x6c316c7368ULL;

struct VectorHash {
    std::size_t operator()(const Vector& v) const noexcept {
        DigestBuilder b(v.dim());
        for (double c : v.coords()) b.add_double(c);
        return static_cast<std::size_t>(b.finish().lo);
    }
};

}  // namespace

std::vector<Vector> nbr(std::span<const Vector> omega) {
    std::vector<Vector> out;
    std::unordered_set<Vector, VectorHash> seen;
    auto push = [&](Vector v) {
        if (seen.insert(v).second) out.push_back(std::move(v));
    };
    std::unordered_set<Vector, VectorHash> centers;
    for (const Vector& a : omega) {
        if (a.mode() != Mode::hypercube) throw InvalidInput("neighborhood augmentation needs hypercube vectors");
        if (!out.empty()) check_same_space(out[0], a);
        // A repeated center adds nothing new.
        if (!centers.insert(a).second) continue;
        push(a);
        for (std::size_t i = 0; i < a.dim(); ++i) push(a.flipped(i));
    }
    return out;
}

double sampletree_xi(std::size_t m, std::size_t s, std::size_t d, double delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw ParameterError("sample tree needs delta in (0, 1)");
    const double msd = static_cast<double>(m) * static_cast<double>(s) * static_cast<double>(d);
    return std::max(1.0, std::ceil(4.0 * std::log(msd / delta)));
}

std::size_t sampletree_default_m(std::size_t s, std::size_t d, double alpha) {
    if (!(alpha > 0.0)) throw ParameterError("sample size needs alpha > 0");
    const double sd = static_cast<double>(s) * static_cast<double>(d);
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(16.0 * std::log(sd) / alpha)));
}

SampleTreeDraw build_sampletree(std::span<const PointSet> mu, std::size_t m, double delta, std::uint64_t seed) {
    if (mu.empty()) throw InvalidInput("sample tree needs a nonempty dataset");
    if (m == 0) throw ParameterError("sample tree needs m >= 1");
    if (mu[0].mode() != Mode::hypercube) throw InvalidInput("sample tree needs a hypercube dataset");
    CounterRng rng(seed, "sampletree-draws");
    std::vector<std::size_t> picks(m);
    std::vector<Vector> omega;
    omega.reserve(m * mu[0].s());
    for (std::size_t i = 0; i < m; ++i) {
        picks[i] = static_cast<std::size_t>(rng.uniform_index(mu.size()));
        for (const Vector& a : mu[picks[i]]) omega.push_back(a);
    }
    auto omega_hat = nbr(omega);
    const double xi = sampletree_xi(m, mu[0].s(), mu[0].dim(), delta);
    QuadTree tree = QuadTree::build(TreeShape::hypercube(mu[0].dim()), omega_hat, xi, derive_key(seed, "sampletree-tree"));
    return SampleTreeDraw{std::move(tree), std::move(omega), std::move(omega_hat), std::move(picks), m, xi, delta};
}

double SparseVector::value(const Digest128& key) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), key,
                               [](const auto& e, const Digest128& k) { return e.first < k; });
    return it != entries.end() && it->first == key ? it->second : 0.0;
}

double l1_distance(const SparseVector& a, const SparseVector& b) {
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.entries.size() || j < b.entries.size()) {
        if (j == b.entries.size() || (i < a.entries.size() && a.entries[i].first < b.entries[j].first)) {
            d += a.entries[i++].second;
        } else if (i == a.entries.size() || b.entries[j].first < a.entries[i].first) {
            d += b.entries[j++].second;
        } else {
            d += std::fabs(a.entries[i++].second - b.entries[j++].second);
        }
    }
    return d;
}

SparseVector embed_l1(const QuadTree& tree, const PointSet& x) {
    std::unordered_map<Digest128, double, DigestHash> acc;
    for (const Vector& a : x) {
        const WeightedPath wp = tree.weighted_path(a);
        for (std::size_t l = 0; l < wp.weights.size(); ++l) acc[wp.nodes[l + 1].key] += wp.weights[l];
    }
    SparseVector v;
    v.entries.reserve(acc.size());
    for (const auto& [k, w] : acc)
        if (w > 0.0) v.entries.emplace_back(k, w);
    std::sort(v.entries.begin(), v.entries.end());
    return v;
}

L1Lsh::L1Lsh(double gamma, std::uint64_t seed) : gamma_(gamma), offset_key_(derive_key(seed, "l1-offsets")) {
    if (!(gamma > 0.0)) throw ParameterError("l1 hash needs gamma > 0");
}

double L1Lsh::offset(const Digest128& coordinate) const noexcept {
    return prf_unit(offset_key_, coordinate.hi, coordinate.lo) * gamma_;
}

BucketId L1Lsh::eval(const SparseVector& v) const {
    DigestBuilder b(kL1BucketTag);
    for (const auto& [key, value] : v.entries) {
        const auto cell = static_cast<std::int64_t>(std::floor((value + offset(key)) / gamma_));
        if (cell != 0) b.add(key).add(static_cast<std::uint64_t>(cell));
    }
    return {b.finish()};
}

L1Lsh sample_l1_lsh(double gamma, std::uint64_t seed) { return L1Lsh(gamma, seed); }

BucketId l1_lsh_eval(const L1Lsh& lsh, const SparseVector& v) { return lsh.eval(v); }

BucketId sampletree_hash_eval(const SampleTreeDraw& draw, const L1Lsh& lsh, const PointSet& x) {
    return lsh.eval(embed_l1(draw, x));
}

}  // namespace emdlsh
