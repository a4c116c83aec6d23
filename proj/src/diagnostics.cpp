#include "frontlab/diagnostics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace frontlab {

std::vector<double> check_zero_average(const VectorField& q) {
    return component_averages(q);
}

double slice_integral(const VectorField& q, const ScalarField& w, int axis, int index) {
    const PeriodicCell& c = *q.cell;
    double transverse_dv = c.point_volume() / c.spacing(axis);
    double s = 0.0;
    for (std::size_t p = 0; p < q.size(); ++p) {
        if (c.axis_index(p, axis) != index) continue;
        s += q.comp[axis][p] * w[p] * w[p];
    }
    return s * transverse_dv;
}

SliceIdentity slice_identity(const VectorField& q, const ScalarField& w, int axis,
                             double tol_factor) {
    if (!q.cell->same_grid(*w.cell))
        throw std::invalid_argument("slice_identity: q and w on different grids");

    // first-integral precheck: reject w with a large advective derivative
    double residual = max_abs_advective_derivative(q, w);
    double qmax = max_abs_component(q);
    double gmax = 0.0;
    for (int a = 0; a < q.dim(); ++a) gmax = std::max(gmax, max_abs(central_derivative(w, a)));
    double tol = tol_factor * std::max(qmax * gmax, 1e-14);
    if (residual > tol) {
        std::ostringstream msg;
        msg << "slice_identity: w is not a first integral of q (max |q.grad w| = " << residual
            << ", tolerance " << tol << ")";
        throw std::invalid_argument(msg.str());
    }

    SliceIdentity out;
    out.fi_residual = residual;
    double lhs = 0.0;
    for (std::size_t p = 0; p < q.size(); ++p) lhs += q.comp[axis][p] * w[p] * w[p];
    out.lhs = lhs * q.cell->point_volume();
    out.rhs = q.cell->period(axis) * slice_integral(q, w, axis, 0);
    return out;
}

} // namespace frontlab
