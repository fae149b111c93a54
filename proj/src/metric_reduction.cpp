#include "emdlsh/metric_reduction.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "emdlsh/errors.hpp"

namespace emdlsh {

GridHash GridHash::sample(std::size_t d, double cell_width, CounterRng& rng) {
    if (d == 0) throw ParameterError("grid hash needs d >= 1");
    if (!(cell_width > 0.0)) throw ParameterError("grid cell width must be positive");
    GridHash g;
    g.axis = static_cast<std::size_t>(rng.uniform_index(d));
    g.offset = rng.uniform01() * cell_width;
    g.cell_width = cell_width;
    return g;
}

std::int64_t grid_hash_eval(const GridHash& g, const Vector& a) {
    if (g.axis >= a.dim()) throw InvalidInput("grid hash axis outside the vector's dimension");
    return static_cast<std::int64_t>(std::ceil((a[g.axis] + g.offset) / g.cell_width));
}

std::size_t lp_to_l1_dim(std::size_t d, double eps) {
    return static_cast<std::size_t>(std::ceil(static_cast<double>(d) * std::log(1.0 / eps) / (eps * eps)));
}

namespace {

// Chambers-Mallows-Stuck draw of a standard symmetric alpha-stable variable.
double symmetric_stable(double alpha, CounterRng& rng) {
    const double v = std::numbers::pi * (rng.uniform_open() - 0.5);
    const double w = rng.exponential();
    if (alpha == 1.0) return std::tan(v);
    return std::sin(alpha * v) / std::pow(std::cos(v), 1.0 / alpha) *
           std::pow(std::cos(v - alpha * v) / w, (1.0 - alpha) / alpha);
}

}  // namespace

LpToL1Map::LpToL1Map(std::size_t d, double p, double eps, std::uint64_t seed) : d_(d), p_(p) {
    if (!(p > 1.0 && p <= 2.0)) throw InvalidInput("l_p to l_1 map needs p in (1, 2]");
    if (!(eps > 0.0 && eps < 1.0)) throw InvalidInput("l_p to l_1 map needs eps in (0, 1)");
    if (d == 0) throw InvalidInput("l_p to l_1 map needs d >= 1");
    out_ = lp_to_l1_dim(d, eps);
    const double mean_abs = 2.0 * std::tgamma(1.0 - 1.0 / p) / std::numbers::pi;
    const double scale = 1.0 / (static_cast<double>(out_) * mean_abs);
    CounterRng rng(seed, "lp-to-l1");
    m_.resize(out_ * d_);
    for (double& e : m_) e = symmetric_stable(p, rng) * scale;
}

Vector LpToL1Map::apply(const Vector& a) const {
    if (a.dim() != d_) throw InvalidInput("l_p to l_1 map: dimension mismatch");
    std::vector<double> y(out_, 0.0);
    for (std::size_t j = 0; j < out_; ++j) {
        const double* row = &m_[j * d_];
        double acc = 0.0;
        for (std::size_t k = 0; k < d_; ++k) acc += row[k] * a[k];
        y[j] = acc;
    }
    return Vector::real(std::move(y));
}

std::vector<PointSet> lp_to_l1(std::span<const PointSet> dataset, double p, double eps, std::uint64_t seed) {
    if (p == 1.0) return {dataset.begin(), dataset.end()};
    if (dataset.empty()) {
        LpToL1Map check(1, p, eps, seed);  // still validates p and eps
        return {};
    }
    const LpToL1Map map(dataset[0].dim(), p, eps, seed);
    std::vector<PointSet> out;
    out.reserve(dataset.size());
    for (const PointSet& x : dataset) {
        std::vector<Vector> elems;
        elems.reserve(x.s());
        for (const Vector& a : x) elems.push_back(map.apply(a));
        out.emplace_back(std::move(elems));
    }
    return out;
}

std::size_t threshold_bits(std::size_t s, double c, double delta, double eps) {
    const double sc = static_cast<double>(s) * c / eps;
    const double s2 = static_cast<double>(s) * static_cast<double>(s);
    return static_cast<std::size_t>(std::ceil(64.0 * sc * sc * std::log(2.0 * s2 / delta)));
}

ThresholdMap::ThresholdMap(std::size_t s, std::size_t d, double c, double tau, double delta, std::uint64_t seed,
                           double eps)
    : d_(d), c_(c), tau_(tau), seed_(seed) {
    if (!(c > 3.0)) throw ParameterError("threshold map needs approximation c > 3");
    if (!(delta > 0.0 && delta < 1.0)) throw ParameterError("threshold map needs delta in (0, 1)");
    if (!(tau > 0.0)) throw ParameterError("threshold map needs tau > 0");
    if (!(eps > 0.0)) throw ParameterError("threshold map needs eps > 0");
    if (s == 0 || d == 0) throw ParameterError("threshold map needs s, d >= 1");
    t_ = threshold_bits(s, c, delta, eps);
    R_ = c * tau;
    r_ = static_cast<double>(t_) / (1.99 * c);
    chi_key_ = derive_key(seed, "threshold-chi");
    CounterRng rng(seed, "threshold-grids");
    axes_.resize(t_ * d_);
    offsets_.resize(t_ * d_);
    for (std::size_t i = 0; i < t_ * d_; ++i) {
        const GridHash g = GridHash::sample(d_, R_, rng);
        axes_[i] = static_cast<std::uint32_t>(g.axis);
        offsets_[i] = g.offset;
    }
}

GridHash ThresholdMap::grid(std::size_t bit, std::size_t k) const {
    if (bit >= t_ || k >= d_) throw InvalidInput("threshold map grid index out of range");
    return {axes_[bit * d_ + k], offsets_[bit * d_ + k], R_};
}

void ThresholdMap::check_input(const Vector& a) const {
    if (a.dim() != d_)
        throw InvalidInput("threshold map: expected dimension " + std::to_string(d_) + ", got " +
                           std::to_string(a.dim()));
}

Digest128 ThresholdMap::cell_digest(std::size_t bit, const Vector& a) const {
    check_input(a);
    DigestBuilder b(chi_key_);
    b.add(bit);
    const std::size_t base = bit * d_;
    for (std::size_t k = 0; k < d_; ++k) {
        const double cell = std::ceil((a[axes_[base + k]] + offsets_[base + k]) / R_);
        b.add(static_cast<std::uint64_t>(static_cast<std::int64_t>(cell)));
    }
    return b.finish();
}

bool ThresholdMap::bit(std::size_t i, const Vector& a) const {
    if (i >= t_) throw InvalidInput("threshold map bit index out of range");
    return (cell_digest(i, a).lo & 1U) != 0;
}

Vector ThresholdMap::apply(const Vector& a) const {
    check_input(a);
    std::vector<double> bits(t_);
    for (std::size_t i = 0; i < t_; ++i) bits[i] = (cell_digest(i, a).lo & 1U) ? 1.0 : 0.0;
    return Vector::hypercube(std::move(bits));
}

ThresholdMap sample_threshold_map(std::size_t s, std::size_t d, double c, double tau, double delta,
                                  std::uint64_t seed, double eps) {
    return ThresholdMap(s, d, c, tau, delta, seed, eps);
}

PointSet threshold_map_apply(const ThresholdMap& f, const PointSet& x) {
    std::vector<Vector> out;
    out.reserve(x.s());
    for (const Vector& a : x) out.push_back(f.apply(a));
    return PointSet(std::move(out));
}

}  // namespace emdlsh
