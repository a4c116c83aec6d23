#include "frontlab/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace frontlab {

DiffusionSpec::DiffusionSpec(CellPtr cell, Mode mode) : cell_(std::move(cell)), mode_(mode) {}

DiffusionSpec DiffusionSpec::identity(CellPtr cell, double scale) {
    if (!(scale > 0.0)) throw std::invalid_argument("DiffusionSpec: scale must be positive");
    DiffusionSpec d(std::move(cell), Mode::Identity);
    d.scale_ = scale;
    d.alpha1_ = d.alpha2_ = scale;
    return d;
}

DiffusionSpec DiffusionSpec::constant(CellPtr cell, std::vector<double> matrix) {
    const int n = cell->dim();
    if (static_cast<int>(matrix.size()) != n * n)
        throw std::invalid_argument("DiffusionSpec: matrix size must be N*N");
    DiffusionSpec d(std::move(cell), Mode::Constant);
    d.data_ = std::move(matrix);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j)
            if (d.data_[i * n + j] != d.data_[j * n + i])
                throw std::invalid_argument("DiffusionSpec: matrix must be exactly symmetric");
    d.diagonal_ = true;
    for (int i = 0; i < n && d.diagonal_; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && d.data_[i * n + j] != 0.0) { d.diagonal_ = false; break; }
    d.compute_bounds();
    return d;
}

DiffusionSpec DiffusionSpec::from_sampler(
    CellPtr cell, const std::function<std::vector<double>(const std::vector<double>&)>& sampler) {
    const int n = cell->dim();
    const std::size_t np = cell->num_points();
    DiffusionSpec d(cell, Mode::Varying);
    d.data_.resize(np * n * n);
    for (std::size_t p = 0; p < np; ++p) {
        std::vector<double> m = sampler(cell->coords(p));
        if (static_cast<int>(m.size()) != n * n)
            throw std::invalid_argument("DiffusionSpec: sampler must return N*N entries");
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < i; ++j)
                if (m[i * n + j] != m[j * n + i])
                    throw std::invalid_argument("DiffusionSpec: sampled matrix not symmetric at point " +
                                                std::to_string(p));
        std::copy(m.begin(), m.end(), d.data_.begin() + p * n * n);
    }
    d.diagonal_ = true;
    for (std::size_t p = 0; p < np && d.diagonal_; ++p)
        for (int i = 0; i < n && d.diagonal_; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j && d.data_[p * n * n + i * n + j] != 0.0) { d.diagonal_ = false; break; }
    d.compute_bounds();
    return d;
}

double DiffusionSpec::entry(std::size_t p, int i, int j) const {
    const int n = cell_->dim();
    switch (mode_) {
        case Mode::Identity: return i == j ? scale_ : 0.0;
        case Mode::Constant: return data_[i * n + j];
        case Mode::Varying: return data_[p * n * n + i * n + j];
    }
    return 0.0;
}

double DiffusionSpec::row_dot(std::size_t p, int i, const std::vector<double>& v) const {
    const int n = cell_->dim();
    if (mode_ == Mode::Identity) return scale_ * v[i];
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += entry(p, i, j) * v[j];
    return s;
}

double DiffusionSpec::quad(std::size_t p, const std::vector<double>& xi) const {
    const int n = cell_->dim();
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += xi[i] * row_dot(p, i, xi);
    return s;
}

void DiffusionSpec::compute_bounds() {
    const int n = cell_->dim();
    if (mode_ == Mode::Identity) { alpha1_ = alpha2_ = scale_; return; }
    double lo = 0.0, hi = 0.0;
    bool first = true;
    const std::size_t count = (mode_ == Mode::Constant) ? 1 : cell_->num_points();
    std::vector<double> m(n * n);
    for (std::size_t p = 0; p < count; ++p) {
        const double* src = data_.data() + (mode_ == Mode::Constant ? 0 : p * n * n);
        std::copy(src, src + n * n, m.begin());
        std::vector<double> ev = symmetric_eigenvalues(m, n);
        if (first) { lo = ev.front(); hi = ev.back(); first = false; }
        else {
            lo = std::min(lo, ev.front());
            hi = std::max(hi, ev.back());
        }
    }
    if (!(lo > 0.0))
        throw std::invalid_argument("DiffusionSpec: matrix not uniformly elliptic (min eigenvalue " +
                                    std::to_string(lo) + ")");
    alpha1_ = lo;
    alpha2_ = hi;
}

std::vector<double> symmetric_eigenvalues(std::vector<double> a, int n) {
    // cyclic Jacobi; n is small (<= spatial dimension)
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += a[i * n + j] * a[i * n + j];
        if (off < 1e-30) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = a[p * n + q];
                if (std::fabs(apq) < 1e-300) continue;
                double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (int k = 0; k < n; ++k) {
                    double akp = a[k * n + p], akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = a[p * n + k], aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> ev(n);
    for (int i = 0; i < n; ++i) ev[i] = a[i * n + i];
    std::sort(ev.begin(), ev.end());
    return ev;
}

NonlinearitySpec NonlinearitySpec::constant(CellPtr cell, double value, std::string name) {
    if (!(value > 0.0)) throw std::invalid_argument("NonlinearitySpec: zeta must be positive");
    return NonlinearitySpec{ScalarField(std::move(cell), value), std::move(name)};
}

NonlinearitySpec NonlinearitySpec::from_field(ScalarField z, std::string name) {
    if (min_value(z) <= 0.0)
        throw std::invalid_argument("NonlinearitySpec: zeta must be strictly positive everywhere");
    return NonlinearitySpec{std::move(z), std::move(name)};
}

} // namespace frontlab
