#include "emdlsh/point_set.hpp"

#include <cmath>
#include <string>

#include "emdlsh/errors.hpp"

namespace emdlsh {

std::string_view mode_name(Mode m) noexcept {
    switch (m) {
        case Mode::hypercube: return "hypercube";
        case Mode::grid: return "grid";
        case Mode::real: return "real";
    }
    return "?";
}

Mode parse_mode(std::string_view name) {
    if (name == "hypercube") return Mode::hypercube;
    if (name == "grid") return Mode::grid;
    if (name == "real") return Mode::real;
    throw InvalidInput("unknown mode '" + std::string(name) + "' (expected hypercube, grid or real)");
}

Vector Vector::hypercube(std::vector<double> bits) {
    for (double b : bits)
        if (b != 0.0 && b != 1.0) throw InvalidInput("hypercube coordinate must be 0 or 1");
    return Vector(Mode::hypercube, std::move(bits), 1);
}

Vector Vector::grid(std::vector<double> values, std::int64_t delta) {
    if (delta < 1) throw InvalidInput("grid side must be >= 1");
    for (double v : values)
        if (v != std::floor(v) || v < 1.0 || v > static_cast<double>(delta))
            throw InvalidInput("grid coordinate outside [1, " + std::to_string(delta) + "]");
    return Vector(Mode::grid, std::move(values), delta);
}

Vector Vector::real(std::vector<double> values) {
    for (double v : values)
        if (!std::isfinite(v)) throw InvalidInput("real coordinate must be finite");
    return Vector(Mode::real, std::move(values), 0);
}

Vector Vector::make(Mode mode, std::vector<double> values, std::int64_t delta) {
    switch (mode) {
        case Mode::hypercube: return hypercube(std::move(values));
        case Mode::grid: return grid(std::move(values), delta);
        case Mode::real: return real(std::move(values));
    }
    throw InvalidInput("bad mode");
}

Vector Vector::flipped(std::size_t i) const {
    if (mode_ != Mode::hypercube) throw InvalidInput("bit flip requires hypercube mode");
    if (i >= coords_.size()) throw InvalidInput("flip index out of range");
    Vector out = *this;
    out.coords_[i] = 1.0 - out.coords_[i];
    return out;
}

void check_same_space(const Vector& a, const Vector& b) {
    if (a.dim() != b.dim())
        throw InvalidInput("dimension mismatch: " + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
    if (a.mode() != b.mode())
        throw InvalidInput("mode mismatch: " + std::string(mode_name(a.mode())) + " vs " +
                           std::string(mode_name(b.mode())));
    if (a.delta() != b.delta()) throw InvalidInput("grid side mismatch");
}

PointSet::PointSet(std::vector<Vector> elements) : elems_(std::move(elements)) {
    if (elems_.empty()) throw InvalidInput("a point set needs at least one element");
    if (elems_[0].dim() == 0) throw InvalidInput("vectors need dimension >= 1");
    for (std::size_t i = 1; i < elems_.size(); ++i) check_same_space(elems_[0], elems_[i]);
}

void check_same_shape(const PointSet& x, const PointSet& y) {
    if (x.s() != y.s())
        throw InvalidInput("set size mismatch: " + std::to_string(x.s()) + " vs " + std::to_string(y.s()));
    if (x.s() == 0) throw InvalidInput("empty point set");
    check_same_space(x[0], y[0]);
}

Dataset::Dataset(std::vector<PointSet> points) : points_(std::move(points)) {
    if (points_.empty()) throw InvalidInput("a dataset needs at least one point");
    for (std::size_t i = 1; i < points_.size(); ++i) check_same_shape(points_[0], points_[i]);
}

}  // namespace emdlsh
