#include "emdlsh/projection.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "emdlsh/errors.hpp"

namespace emdlsh {

namespace {
constexpr std::uint64_t kPatternTag = 0x70617474ULL;
}

TreeShape TreeShape::of(const Vector& a) {
    if (a.mode() == Mode::real) throw InvalidInput("trees need hypercube or grid vectors");
    return {a.mode(), a.dim(), a.mode() == Mode::grid ? a.delta() : 1};
}

void TreeShape::check(const Vector& a) const {
    if (a.mode() != mode)
        throw InvalidInput("expected a " + std::string(mode_name(mode)) + " vector, got " +
                           std::string(mode_name(a.mode())));
    if (a.dim() != dim)
        throw InvalidInput("expected dimension " + std::to_string(dim) + ", got " + std::to_string(a.dim()));
    if (mode == Mode::grid && a.delta() != delta)
        throw InvalidInput("expected grid side " + std::to_string(delta) + ", got " + std::to_string(a.delta()));
}

std::size_t tree_depth(std::size_t effective_dim) {
    if (effective_dim == 0) throw ParameterError("tree depth needs dimension >= 1");
    if (effective_dim == 1) return 0;
    // ceil(2 log2 d) = ceil(log2 d^2), computed exactly on integers.
    if (effective_dim >= (std::uint64_t{1} << 31)) throw ParameterError("dimension too large for a tree");
    const std::uint64_t sq = static_cast<std::uint64_t>(effective_dim) * effective_dim;
    std::size_t l = 0;
    while ((std::uint64_t{1} << l) < sq) ++l;
    return l;
}

LevelProjection LevelProjection::sampled(std::size_t count, std::size_t d, CounterRng& rng) {
    if (d == 0) throw ParameterError("projection needs d >= 1");
    LevelProjection p;
    p.kind_ = Kind::sampled;
    p.count_ = count;
    p.coords_.resize(count);
    for (auto& c : p.coords_) {
        c = static_cast<std::uint32_t>(rng.uniform_index(d));
        p.min_dim_ = std::max<std::size_t>(p.min_dim_, c + 1);
    }
    return p;
}

LevelProjection LevelProjection::lazy_unary(std::uint64_t count, const TreeShape& shape, std::uint64_t seed) {
    LevelProjection p;
    p.kind_ = Kind::lazy_unary;
    p.count_ = count;
    p.lazy_ = std::make_shared<const LazyUnaryLevel>(count, shape.dim, shape.delta, seed);
    return p;
}

LevelProjection LevelProjection::identity(const TreeShape& shape) {
    LevelProjection p;
    p.kind_ = Kind::identity;
    p.count_ = shape.effective_dim();
    return p;
}

LevelProjection LevelProjection::for_level(const TreeShape& shape, std::size_t level, std::uint64_t level_seed) {
    const std::size_t L = tree_depth(shape.effective_dim());
    if (level > L) throw ParameterError("level " + std::to_string(level) + " exceeds tree depth " + std::to_string(L));
    if (level == L) return identity(shape);
    const std::uint64_t count = std::uint64_t{1} << level;
    if (shape.mode == Mode::grid) return lazy_unary(count, shape, derive_key(level_seed, "lazy-level", level));
    CounterRng rng(level_seed, "level", level);
    return sampled(static_cast<std::size_t>(count), shape.dim, rng);
}

void LevelProjection::pattern_words(const Vector& a, std::vector<std::uint64_t>& out) const {
    out.clear();
    switch (kind_) {
        case Kind::sampled: {
            if (a.dim() < min_dim_) throw InvalidInput("projection coordinate outside the vector");
            out.assign((coords_.size() + 63) / 64, 0);
            const double* x = a.coords().data();
            for (std::size_t i = 0; i < coords_.size(); ++i)
                out[i >> 6] |= static_cast<std::uint64_t>(x[coords_[i]] != 0.0) << (i & 63);
            return;
        }
        case Kind::lazy_unary: out = lazy_->counts(a); return;
        case Kind::identity: {
            if (a.mode() == Mode::hypercube) {
                out.assign((a.dim() + 63) / 64, 0);
                for (std::size_t i = 0; i < a.dim(); ++i)
                    if (a[i] != 0.0) out[i >> 6] |= std::uint64_t{1} << (i & 63);
            } else {
                out.resize(a.dim());
                for (std::size_t i = 0; i < a.dim(); ++i) out[i] = std::bit_cast<std::uint64_t>(a[i]);
            }
            return;
        }
    }
}

Digest128 LevelProjection::pattern(const Vector& a) const {
    thread_local std::vector<std::uint64_t> words;
    pattern_words(a, words);
    return digest_words(words);
}

Digest128 LevelProjection::digest_words(const std::vector<std::uint64_t>& words) {
    DigestBuilder b(kPatternTag);
    b.add(words.size());
    for (std::uint64_t w : words) b.add(w);
    return b.finish();
}

}  // namespace emdlsh
