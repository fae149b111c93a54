#include "emdlsh/lazy_unary.hpp"

#include <string>

#include "emdlsh/binomial.hpp"
#include "emdlsh/errors.hpp"

namespace emdlsh {

Vector unary_encode(const Vector& x) {
    if (x.mode() != Mode::grid) throw InvalidInput("unary encoding needs a grid vector");
    const auto delta = static_cast<std::size_t>(x.delta());
    std::vector<double> bits(x.dim() * delta, 0.0);
    for (std::size_t t = 0; t < x.dim(); ++t) {
        const auto v = static_cast<std::size_t>(x[t]);
        for (std::size_t j = 1; j <= v; ++j) bits[t * delta + (j - 1)] = 1.0;
    }
    return Vector::hypercube(std::move(bits));
}

LazyUnaryLevel::LazyUnaryLevel(std::uint64_t samples, std::size_t d, std::int64_t delta, std::uint64_t seed)
    : samples_(samples), d_(d), delta_(delta), state_(std::make_unique<State>()) {
    if (d == 0 || delta < 1) throw ParameterError("lazy unary level needs d >= 1 and delta >= 1");
    state_->rng = CounterRng(seed, "lazy-unary");
    state_->cuts.resize(d);
    std::uint64_t left = samples;
    for (std::size_t t = 0; t < d; ++t) {
        const double share = 1.0 / static_cast<double>(d - t);
        const std::uint64_t here = t + 1 == d ? left : sample_binomial(left, share, state_->rng);
        left -= here;
        state_->cuts[t].emplace(0, 0);
        state_->cuts[t].emplace(delta, here);
    }
}

LazyUnaryLevel::LazyUnaryLevel(const LazyUnaryLevel& other)
    : samples_(other.samples_), d_(other.d_), delta_(other.delta_), state_(std::make_unique<State>()) {
    std::lock_guard lock(other.state_->mu);
    state_->cuts = other.state_->cuts;
    state_->rng = other.state_->rng;
}

LazyUnaryLevel& LazyUnaryLevel::operator=(const LazyUnaryLevel& other) {
    if (this != &other) {
        LazyUnaryLevel copy(other);
        *this = std::move(copy);
    }
    return *this;
}

std::vector<std::uint64_t> LazyUnaryLevel::counts(const Vector& x) const {
    if (x.dim() != d_) throw InvalidInput("lazy unary level: dimension mismatch");
    for (std::size_t t = 0; t < d_; ++t) {
        const double v = x[t];
        if (v < 1.0 || v > static_cast<double>(delta_) || v != static_cast<double>(static_cast<std::int64_t>(v)))
            throw InvalidInput("grid coordinate outside [1, " + std::to_string(delta_) + "]");
    }
    std::vector<std::uint64_t> out(d_);
    std::lock_guard lock(state_->mu);
    for (std::size_t t = 0; t < d_; ++t) {
        auto& cuts = state_->cuts[t];
        const auto c = static_cast<std::int64_t>(x[t]);
        auto hi = cuts.lower_bound(c);
        if (hi->first == c) {
            out[t] = hi->second;
            continue;
        }
        auto lo = std::prev(hi);
        const std::uint64_t inside = hi->second - lo->second;
        const double frac = static_cast<double>(c - lo->first) / static_cast<double>(hi->first - lo->first);
        const std::uint64_t below = lo->second + sample_binomial(inside, frac, state_->rng);
        cuts.emplace_hint(hi, c, below);
        out[t] = below;
    }
    return out;
}

std::size_t LazyUnaryLevel::realized_cuts() const {
    std::lock_guard lock(state_->mu);
    std::size_t n = 0;
    for (const auto& m : state_->cuts) n += m.size() - 2;
    return n;
}

}  // namespace emdlsh
