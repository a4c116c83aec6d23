#include "frontlab/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace frontlab {

ScalarField sample_scalar(const CellPtr& cell,
                          const std::function<double(const std::vector<double>&)>& f) {
    ScalarField out(cell);
    std::vector<double> x(cell->dim());
    for (std::size_t p = 0; p < out.size(); ++p) {
        for (int a = 0; a < cell->dim(); ++a) x[a] = cell->coord(p, a);
        out[p] = f(x);
    }
    return out;
}

ScalarField central_derivative(const ScalarField& f, int axis) {
    const PeriodicCell& c = *f.cell;
    ScalarField out(f.cell);
    const double inv2h = 1.0 / (2.0 * c.spacing(axis));
    for (std::size_t p = 0; p < f.size(); ++p) {
        std::size_t pp = c.shift(p, axis, +1);
        std::size_t pm = c.shift(p, axis, -1);
        out[p] = (f[pp] - f[pm]) * inv2h;
    }
    return out;
}

ScalarField divergence_central(const VectorField& q) {
    const PeriodicCell& c = *q.cell;
    ScalarField out(q.cell);
    for (int a = 0; a < c.dim(); ++a) {
        const double inv2h = 1.0 / (2.0 * c.spacing(a));
        const std::vector<double>& qa = q.comp[a];
        for (std::size_t p = 0; p < out.size(); ++p) {
            std::size_t pp = c.shift(p, a, +1);
            std::size_t pm = c.shift(p, a, -1);
            out[p] += (qa[pp] - qa[pm]) * inv2h;
        }
    }
    return out;
}

double max_abs_divergence(const VectorField& q) {
    ScalarField d = divergence_central(q);
    return max_abs(d);
}

ScalarField advective_derivative(const VectorField& q, const ScalarField& w) {
    const PeriodicCell& c = *q.cell;
    ScalarField out(q.cell);
    for (int a = 0; a < c.dim(); ++a) {
        const double inv2h = 1.0 / (2.0 * c.spacing(a));
        const std::vector<double>& qa = q.comp[a];
        for (std::size_t p = 0; p < out.size(); ++p) {
            std::size_t pp = c.shift(p, a, +1);
            std::size_t pm = c.shift(p, a, -1);
            out[p] += qa[p] * (w[pp] - w[pm]) * inv2h;
        }
    }
    return out;
}

double max_abs_advective_derivative(const VectorField& q, const ScalarField& w) {
    ScalarField d = advective_derivative(q, w);
    return max_abs(d);
}

double mean(const ScalarField& f) {
    double s = 0.0;
    for (double v : f.values) s += v;
    return s / static_cast<double>(f.size());
}

double max_abs(const ScalarField& f) {
    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::fabs(v));
    return m;
}

double min_value(const ScalarField& f) {
    double m = f.values.empty() ? 0.0 : f.values[0];
    for (double v : f.values) m = std::min(m, v);
    return m;
}

double max_abs_component(const VectorField& q) {
    double m = 0.0;
    for (const auto& c : q.comp)
        for (double v : c) m = std::max(m, std::fabs(v));
    return m;
}

std::vector<double> component_averages(const VectorField& q) {
    std::vector<double> avg(q.dim(), 0.0);
    for (int a = 0; a < q.dim(); ++a) {
        double s = 0.0;
        for (double v : q.comp[a]) s += v;
        avg[a] = s / static_cast<double>(q.size());
    }
    return avg;
}

double inner(const ScalarField& f, const ScalarField& g) {
    if (!f.cell->same_grid(*g.cell)) throw std::invalid_argument("inner: fields on different grids");
    double s = 0.0;
    for (std::size_t p = 0; p < f.size(); ++p) s += f[p] * g[p];
    return s * f.cell->point_volume();
}

double integrate(const ScalarField& f) {
    double s = 0.0;
    for (double v : f.values) s += v;
    return s * f.cell->point_volume();
}

namespace {

// Shared multilinear kernel: base indices, weights and corner enumeration.
struct InterpStencil {
    int dim;
    int base[8 + 1];     // base grid index per axis (dim <= 8 supported)
    double frac[8 + 1];  // fractional offset per axis
};

InterpStencil locate(const PeriodicCell& c, const double* x) {
    InterpStencil st;
    st.dim = c.dim();
    for (int a = 0; a < c.dim(); ++a) {
        double h = c.spacing(a);
        double t = x[a] / h;
        double fl = std::floor(t);
        st.frac[a] = t - fl;
        long long i = static_cast<long long>(fl);
        long long n = c.extent(a);
        i %= n;
        if (i < 0) i += n;
        st.base[a] = static_cast<int>(i);
    }
    return st;
}

template <typename Accessor>
double multilinear(const PeriodicCell& c, const InterpStencil& st, Accessor value) {
    const int dim = st.dim;
    const unsigned corners = 1u << dim;
    double acc = 0.0;
    std::vector<int> mi(dim);
    for (unsigned m = 0; m < corners; ++m) {
        double wgt = 1.0;
        for (int a = 0; a < dim; ++a) {
            bool hi = (m >> a) & 1u;
            wgt *= hi ? st.frac[a] : (1.0 - st.frac[a]);
            mi[a] = st.base[a] + (hi ? 1 : 0);
        }
        if (wgt == 0.0) continue;
        acc += wgt * value(c.flat(mi));
    }
    return acc;
}

} // namespace

double interpolate(const ScalarField& f, const double* x) {
    InterpStencil st = locate(*f.cell, x);
    return multilinear(*f.cell, st, [&](std::size_t p) { return f[p]; });
}

void interpolate(const VectorField& q, const double* x, double* out) {
    InterpStencil st = locate(*q.cell, x);
    for (int a = 0; a < q.dim(); ++a)
        out[a] = multilinear(*q.cell, st, [&](std::size_t p) { return q.comp[a][p]; });
}

} // namespace frontlab
