#include "frontlab/grid.hpp"

#include <stdexcept>
#include <string>

namespace frontlab {

PeriodicCell::PeriodicCell(int dim, std::vector<double> periods, std::vector<int> resolution)
    : dim_(dim), periods_(std::move(periods)), extents_(std::move(resolution)) {
    if (dim_ < 1)
        throw std::invalid_argument("PeriodicCell: dimension must be >= 1, got " + std::to_string(dim_));
    if (static_cast<int>(periods_.size()) != dim_ || static_cast<int>(extents_.size()) != dim_)
        throw std::invalid_argument("PeriodicCell: periods/resolution length must equal dimension");
    for (int a = 0; a < dim_; ++a) {
        if (!(periods_[a] > 0.0))
            throw std::invalid_argument("PeriodicCell: period must be positive on axis " + std::to_string(a));
        if (extents_[a] < 2)
            throw std::invalid_argument("PeriodicCell: need at least 2 points per axis, axis " + std::to_string(a));
    }
    spacings_.resize(dim_);
    for (int a = 0; a < dim_; ++a) spacings_[a] = periods_[a] / extents_[a];

    strides_.assign(dim_, 1);
    for (int a = dim_ - 2; a >= 0; --a)
        strides_[a] = strides_[a + 1] * static_cast<std::size_t>(extents_[a + 1]);
    num_points_ = strides_[0] * static_cast<std::size_t>(extents_[0]);

    point_volume_ = 1.0;
    volume_ = 1.0;
    for (int a = 0; a < dim_; ++a) {
        point_volume_ *= spacings_[a];
        volume_ *= periods_[a];
    }
}

std::size_t PeriodicCell::flat(const std::vector<int>& mi) const {
    std::size_t p = 0;
    for (int a = 0; a < dim_; ++a) {
        int n = extents_[a];
        int i = mi[a] % n;
        if (i < 0) i += n;
        p += static_cast<std::size_t>(i) * strides_[a];
    }
    return p;
}

std::vector<int> PeriodicCell::multi(std::size_t p) const {
    std::vector<int> mi(dim_);
    for (int a = 0; a < dim_; ++a) mi[a] = axis_index(p, a);
    return mi;
}

std::vector<double> PeriodicCell::coords(std::size_t p) const {
    std::vector<double> x(dim_);
    for (int a = 0; a < dim_; ++a) x[a] = coord(p, a);
    return x;
}

std::size_t PeriodicCell::shift(std::size_t p, int axis, int steps) const {
    int n = extents_[axis];
    int i = axis_index(p, axis);
    int j = (i + steps) % n;
    if (j < 0) j += n;
    std::ptrdiff_t d = static_cast<std::ptrdiff_t>(j) - static_cast<std::ptrdiff_t>(i);
    return static_cast<std::size_t>(static_cast<std::ptrdiff_t>(p) +
                                    d * static_cast<std::ptrdiff_t>(strides_[axis]));
}

bool PeriodicCell::same_grid(const PeriodicCell& other) const {
    return dim_ == other.dim_ && extents_ == other.extents_ && periods_ == other.periods_;
}

CellPtr build_cell(int dim, std::vector<double> periods, std::vector<int> resolution) {
    return std::make_shared<const PeriodicCell>(dim, std::move(periods), std::move(resolution));
}

} // namespace frontlab
