#include "frontlab/flow.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace frontlab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double bump(double s) { // smooth, compactly supported on (-1,1), bump(0)=1
    double s2 = s * s;
    if (s2 >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - s2));
}

// Shear profile as a function of the full coordinate vector.
std::function<double(const std::vector<double>&)> shear_profile_fn(const FlowSpec& spec,
                                                                   const PeriodicCell& cell) {
    const int cross = (spec.axis + 1) % cell.dim(); // first cross axis
    const double L = cell.period(cross);
    if (spec.shear_profile == "sin") {
        const int m = spec.harmonic;
        return [cross, L, m](const std::vector<double>& x) {
            return std::sin(kTwoPi * m * x[cross] / L);
        };
    }
    if (spec.shear_profile == "two_bump") {
        // sign-balanced pair of mollifier bumps at L/4 and 3L/4
        const double r = L / 8.0;
        return [cross, L, r](const std::vector<double>& x) {
            double t = x[cross];
            return bump((t - 0.25 * L) / r) - bump((t - 0.75 * L) / r);
        };
    }
    if (spec.shear_profile == "custom") {
        if (!spec.custom_profile) throw std::invalid_argument("make_flow: custom shear profile missing");
        auto f = spec.custom_profile;
        int axis = spec.axis;
        int dim = cell.dim();
        return [f, axis, dim](const std::vector<double>& x) {
            std::vector<double> crossv;
            crossv.reserve(dim - 1);
            for (int a = 0; a < dim; ++a)
                if (a != axis) crossv.push_back(x[a]);
            return f(crossv);
        };
    }
    throw std::invalid_argument("make_flow: unknown shear profile '" + spec.shear_profile + "'");
}

VectorField make_shear(const FlowSpec& spec, const CellPtr& cell) {
    VectorField q(cell);
    auto prof = shear_profile_fn(spec, *cell);
    const int axis = spec.axis;
    std::vector<double> x(cell->dim());
    for (std::size_t p = 0; p < q.size(); ++p) {
        for (int a = 0; a < cell->dim(); ++a) x[a] = cell->coord(p, a);
        q.comp[axis][p] = prof(x);
    }
    q.divergence_free_flag = true;
    q.divergence_tolerance = 1e-10; // q_axis does not depend on x_axis: exact
    q.zero_average_flag = true;
    const int dim = cell->dim();
    q.analytic = [prof, axis, dim](const double* xin, double* out) {
        std::vector<double> xv(xin, xin + dim);
        for (int a = 0; a < dim; ++a) out[a] = 0.0;
        out[axis] = prof(xv);
    };
    return q;
}

VectorField make_cellular(const FlowSpec& spec, const CellPtr& cell) {
    if (cell->dim() != 2) throw std::invalid_argument("make_flow: cellular flow requires N = 2");
    const double L1 = cell->period(0), L2 = cell->period(1);
    const double amp = spec.amplitude;
    // phi sampled on the grid; q = discrete perpendicular gradient, which makes
    // the central-difference divergence vanish identically.
    ScalarField phi = sample_scalar(cell, [&](const std::vector<double>& x) {
        return cellular_stream_function(amp, cell->periods(), x[0], x[1]);
    });
    VectorField q(cell);
    ScalarField d1 = central_derivative(phi, 0);
    ScalarField d2 = central_derivative(phi, 1);
    for (std::size_t p = 0; p < q.size(); ++p) {
        q.comp[0][p] = -d2[p];
        q.comp[1][p] = d1[p];
    }
    q.divergence_free_flag = true;
    q.divergence_tolerance = 1e-12;
    q.zero_average_flag = true;
    q.analytic = [amp, L1, L2](const double* x, double* out) {
        out[0] = -amp * std::sin(kTwoPi * x[0] / L1) * std::cos(kTwoPi * x[1] / L2);
        out[1] = amp * (L2 / L1) * std::cos(kTwoPi * x[0] / L1) * std::sin(kTwoPi * x[1] / L2);
    };
    return q;
}

VectorField make_two_cylinder(const FlowSpec& spec, const CellPtr& cell) {
    const int dim = cell->dim();
    if (dim < 3) throw std::invalid_argument("make_flow: two_cylinder requires N >= 3");
    TwoCylinderGeometry geo = two_cylinder_geometry(spec, *cell);
    std::function<double(double)> prof = spec.axial_profile;
    if (!prof) prof = [](double t) { return 1.0 - t * t; };
    if (std::fabs(prof(1.0)) > 1e-12 * std::max(1.0, std::fabs(spec.vmax)))
        throw std::invalid_argument("make_flow: axial profile must vanish at the cylinder boundary");

    VectorField q(cell);
    q.labels.assign(cell->num_points(), RegionLabel::Exterior);
    const int axis = geo.axis;
    const double R = geo.radius, vmax = spec.vmax;
    std::vector<double> x(dim);
    for (std::size_t p = 0; p < q.size(); ++p) {
        for (int a = 0; a < dim; ++a) x[a] = cell->coord(p, a);
        double r1 = cross_radius(*cell, x, geo.center1, axis);
        double r2 = cross_radius(*cell, x, geo.center2, axis);
        if (r1 < R) {
            q.comp[axis][p] = vmax * prof(r1 / R);
            q.labels[p] = RegionLabel::V1;
        } else if (r2 < R) {
            // reflected, negated copy so the total average is zero
            q.comp[axis][p] = -vmax * prof(r2 / R);
            q.labels[p] = RegionLabel::V2;
        }
    }
    q.divergence_free_flag = true;
    q.divergence_tolerance = 1e-10;
    q.zero_average_flag = true;
    auto c1 = geo.center1, c2 = geo.center2;
    auto cellp = cell;
    q.analytic = [cellp, c1, c2, axis, R, vmax, prof, dim](const double* xin, double* out) {
        std::vector<double> xv(xin, xin + dim);
        for (int a = 0; a < dim; ++a) out[a] = 0.0;
        double r1 = cross_radius(*cellp, xv, c1, axis);
        double r2 = cross_radius(*cellp, xv, c2, axis);
        if (r1 < R) out[axis] = vmax * prof(r1 / R);
        else if (r2 < R) out[axis] = -vmax * prof(r2 / R);
    };
    return q;
}

VectorField make_custom(const FlowSpec& spec, const CellPtr& cell) {
    if (!spec.custom_field) throw std::invalid_argument("make_flow: custom field callback missing");
    VectorField q(cell);
    std::vector<double> x(cell->dim()), v(cell->dim());
    for (std::size_t p = 0; p < q.size(); ++p) {
        for (int a = 0; a < cell->dim(); ++a) x[a] = cell->coord(p, a);
        spec.custom_field(x, v);
        for (int a = 0; a < cell->dim(); ++a) q.comp[a][p] = v[a];
    }
    if (!spec.custom_labels.empty()) {
        if (spec.custom_labels.size() != cell->num_points())
            throw std::invalid_argument("make_flow: custom label count mismatch");
        q.labels = spec.custom_labels;
    }
    auto f = spec.custom_field;
    int dim = cell->dim();
    q.analytic = [f, dim](const double* xin, double* out) {
        std::vector<double> xv(xin, xin + dim), v(dim);
        f(xv, v);
        for (int a = 0; a < dim; ++a) out[a] = v[a];
    };
    return q;
}

} // namespace

double cellular_stream_function(double amplitude, const std::vector<double>& periods,
                                double x1, double x2) {
    return amplitude * periods[1] / kTwoPi * std::sin(kTwoPi * x1 / periods[0]) *
           std::sin(kTwoPi * x2 / periods[1]);
}

TwoCylinderGeometry two_cylinder_geometry(const FlowSpec& spec, const PeriodicCell& cell) {
    const int dim = cell.dim();
    const int axis = spec.axis;
    if (axis < 0 || axis >= dim) throw std::invalid_argument("two_cylinder: bad axis");
    if (!(spec.radius > 0.0) || spec.gap < 0.0)
        throw std::invalid_argument("two_cylinder: need radius > 0 and gap >= 0");
    // separation axis: the last axis distinct from the cylinder axis
    int sep = dim - 1;
    if (sep == axis) sep = dim - 2;
    TwoCylinderGeometry geo;
    geo.axis = axis;
    geo.radius = spec.radius;
    geo.gap = spec.gap;
    geo.center1.assign(dim, 0.0);
    geo.center2.assign(dim, 0.0);
    for (int a = 0; a < dim; ++a) {
        if (a == axis) continue;
        double mid = 0.5 * cell.period(a);
        geo.center1[a] = mid;
        geo.center2[a] = mid;
        if (a == sep) {
            double off = spec.radius + 0.5 * spec.gap;
            geo.center1[a] = mid + off;
            geo.center2[a] = mid - off;
        }
    }
    // both cylinders must fit inside the cell
    for (int a = 0; a < dim; ++a) {
        if (a == axis) continue;
        for (const auto* c : {&geo.center1, &geo.center2}) {
            double lo = (*c)[a] - spec.radius, hi = (*c)[a] + spec.radius;
            if (lo < 0.0 || hi > cell.period(a))
                throw std::invalid_argument("two_cylinder: cylinders overflow the cell on axis " +
                                            std::to_string(a));
        }
    }
    return geo;
}

double cross_radius(const PeriodicCell& cell, const std::vector<double>& x,
                    const std::vector<double>& center, int axis) {
    double s = 0.0;
    for (int a = 0; a < cell.dim(); ++a) {
        if (a == axis) continue;
        double d = x[a] - center[a];
        // nearest periodic image
        double L = cell.period(a);
        d -= L * std::round(d / L);
        s += d * d;
    }
    return std::sqrt(s);
}

VectorField make_flow(const FlowSpec& spec, const CellPtr& cell) {
    switch (spec.kind) {
        case FlowKind::Shear: return make_shear(spec, cell);
        case FlowKind::Cellular: return make_cellular(spec, cell);
        case FlowKind::TwoCylinder: return make_two_cylinder(spec, cell);
        case FlowKind::Custom: return make_custom(spec, cell);
    }
    throw std::invalid_argument("make_flow: unknown flow kind");
}

} // namespace frontlab
