#include "emdlsh/dind_hash.hpp"

#include <algorithm>
#include <cmath>

#include "emdlsh/errors.hpp"
#include "emdlsh/random.hpp"

namespace emdlsh {

namespace {
constexpr std::uint64_t kBucketTag = 0x64696e64ULL;
}

DataIndHash::DataIndHash(const TreeShape& shape, double tau, std::size_t level, std::uint64_t seed)
    : shape_(shape), level_(level), tau_(tau) {
    if (!(tau > 0.0)) throw ParameterError("data-independent hash needs tau > 0");
    if (shape.mode == Mode::real) throw InvalidInput("data-independent hash needs hypercube or grid vectors");
    const std::size_t L = tree_depth(shape.effective_dim());
    if (level > L) throw ParameterError("hash level exceeds the tree depth L");
    const double d = static_cast<double>(shape.effective_dim());
    rate_ = std::min(1.0, d / (tau * std::ldexp(1.0, static_cast<int>(level) + 1)));
    coin_key_ = derive_key(seed, "dind-coins");
    proj_ = LevelProjection::for_level(shape, level, derive_key(seed, "dind-levels"));
}

bool DataIndHash::coin(const Digest128& pattern, std::uint32_t k) const noexcept {
    return prf_unit(coin_key_, pattern.hi, pattern.lo, k) < rate_;
}

std::vector<DataIndHash::Entry> DataIndHash::active_entries(const PointSet& x) const {
    std::vector<Digest128> pats;
    pats.reserve(x.s());
    for (const Vector& a : x) {
        shape_.check(a);
        pats.push_back(proj_.pattern(a));
    }
    std::sort(pats.begin(), pats.end());
    std::vector<Entry> out;
    for (std::size_t i = 0; i < pats.size();) {
        std::size_t j = i;
        while (j < pats.size() && pats[j] == pats[i]) ++j;
        for (std::uint32_t k = 1; k <= j - i; ++k)
            if (coin(pats[i], k)) out.push_back({pats[i], k});
        i = j;
    }
    return out;  // sorted: patterns ascending, k ascending within a pattern
}

BucketId DataIndHash::eval(const PointSet& x) const {
    const auto entries = active_entries(x);
    DigestBuilder b(kBucketTag);
    b.add(entries.size());
    for (const Entry& e : entries) b.add(e.pattern).add(e.k);
    return {b.finish()};
}

DataIndHash sample_dind_hash(const TreeShape& shape, double tau, std::size_t level, std::uint64_t seed) {
    return DataIndHash(shape, tau, level, seed);
}

BucketId dind_eval(const DataIndHash& h, const PointSet& x) { return h.eval(x); }

}  // namespace emdlsh
