#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace emdlsh {

enum class Mode { hypercube, grid, real };

std::string_view mode_name(Mode m) noexcept;
// Throws InvalidInput on an unknown name.
Mode parse_mode(std::string_view name);

// One ground-space element. Coordinates are stored as doubles in every mode;
// hypercube coordinates are exactly 0/1 and grid coordinates are integers in
// [1, delta].
class Vector {
public:
    Vector() = default;

    static Vector hypercube(std::vector<double> bits);
    static Vector grid(std::vector<double> values, std::int64_t delta);
    static Vector real(std::vector<double> values);
    static Vector make(Mode mode, std::vector<double> values, std::int64_t delta = 1);

    Mode mode() const noexcept { return mode_; }
    std::size_t dim() const noexcept { return coords_.size(); }
    // Grid side length; 1 in hypercube mode, 0 in real mode.
    std::int64_t delta() const noexcept { return delta_; }
    double operator[](std::size_t i) const noexcept { return coords_[i]; }
    const std::vector<double>& coords() const noexcept { return coords_; }
    bool bit(std::size_t i) const noexcept { return coords_[i] != 0.0; }

    // Hypercube only: copy with coordinate i flipped.
    Vector flipped(std::size_t i) const;

    friend bool operator==(const Vector&, const Vector&) = default;

private:
    Vector(Mode mode, std::vector<double> coords, std::int64_t delta)
        : mode_(mode), delta_(delta), coords_(std::move(coords)) {}

    Mode mode_ = Mode::hypercube;
    std::int64_t delta_ = 1;
    std::vector<double> coords_;
};

// Throws InvalidInput unless a and b share dimension, mode and grid side.
void check_same_space(const Vector& a, const Vector& b);

// A multiset of exactly s() elements sharing one dimension and mode.
class PointSet {
public:
    PointSet() = default;
    explicit PointSet(std::vector<Vector> elements);

    std::size_t s() const noexcept { return elems_.size(); }
    std::size_t dim() const noexcept { return elems_.empty() ? 0 : elems_[0].dim(); }
    Mode mode() const noexcept { return elems_.empty() ? Mode::hypercube : elems_[0].mode(); }
    std::int64_t delta() const noexcept { return elems_.empty() ? 1 : elems_[0].delta(); }

    const Vector& operator[](std::size_t i) const noexcept { return elems_[i]; }
    const std::vector<Vector>& elements() const noexcept { return elems_; }
    auto begin() const noexcept { return elems_.begin(); }
    auto end() const noexcept { return elems_.end(); }

    friend bool operator==(const PointSet&, const PointSet&) = default;

private:
    std::vector<Vector> elems_;
};

void check_same_shape(const PointSet& x, const PointSet& y);

// The distribution mu: uniform over n >= 1 stored PointSets of one shape.
class Dataset {
public:
    Dataset() = default;
    explicit Dataset(std::vector<PointSet> points);

    std::size_t n() const noexcept { return points_.size(); }
    std::size_t s() const noexcept { return points_.empty() ? 0 : points_[0].s(); }
    std::size_t dim() const noexcept { return points_.empty() ? 0 : points_[0].dim(); }
    Mode mode() const noexcept { return points_.empty() ? Mode::hypercube : points_[0].mode(); }
    std::int64_t delta() const noexcept { return points_.empty() ? 1 : points_[0].delta(); }

    const PointSet& operator[](std::size_t i) const noexcept { return points_[i]; }
    const std::vector<PointSet>& points() const noexcept { return points_; }

    friend bool operator==(const Dataset&, const Dataset&) = default;

private:
    std::vector<PointSet> points_;
};

}  // namespace emdlsh
