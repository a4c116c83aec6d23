#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace frontlab {

/// Uniform grid on a flat torus: periods L_a, n_a points per axis,
/// spacing h_a = L_a / n_a.  Index arithmetic wraps modulo n_a on every axis.
class PeriodicCell {
public:
    PeriodicCell(int dim, std::vector<double> periods, std::vector<int> resolution);

    int dim() const { return dim_; }
    double period(int axis) const { return periods_[axis]; }
    int extent(int axis) const { return extents_[axis]; }
    double spacing(int axis) const { return spacings_[axis]; }
    const std::vector<double>& periods() const { return periods_; }
    const std::vector<int>& extents() const { return extents_; }

    std::size_t num_points() const { return num_points_; }
    /// Volume of one grid cell (prod h_a).
    double point_volume() const { return point_volume_; }
    /// Volume of the periodicity cell (prod L_a).
    double volume() const { return volume_; }

    std::size_t stride(int axis) const { return strides_[axis]; }

    /// Flat index from a multi-index; entries may be out of range and wrap.
    std::size_t flat(const std::vector<int>& mi) const;
    std::vector<int> multi(std::size_t p) const;

    /// Coordinate of grid point p along one axis.
    double coord(std::size_t p, int axis) const {
        return spacings_[axis] * static_cast<double>(axis_index(p, axis));
    }
    std::vector<double> coords(std::size_t p) const;

    int axis_index(std::size_t p, int axis) const {
        return static_cast<int>((p / strides_[axis]) % static_cast<std::size_t>(extents_[axis]));
    }

    /// Periodic neighbor: shift point p by `steps` grid cells along `axis`.
    std::size_t shift(std::size_t p, int axis, int steps) const;

    bool same_grid(const PeriodicCell& other) const;

private:
    int dim_;
    std::vector<double> periods_;
    std::vector<int> extents_;
    std::vector<double> spacings_;
    std::vector<std::size_t> strides_;
    std::size_t num_points_;
    double point_volume_;
    double volume_;
};

using CellPtr = std::shared_ptr<const PeriodicCell>;

/// Construct a periodic cell, validating dimensions and positivity.
CellPtr build_cell(int dim, std::vector<double> periods, std::vector<int> resolution);

} // namespace frontlab
