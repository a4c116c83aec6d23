#pragma once

#include "frontlab/field.hpp"

namespace frontlab {

/// Per-component cell averages of a flow; a conforming flow reports all of
/// them near zero.
std::vector<double> check_zero_average(const VectorField& q);

struct SliceIdentity {
    double lhs;         // integral of (q.e_i) w^2 over the cell
    double rhs;         // L_i times the same integrand summed over the slice x_i = 0
    double fi_residual; // max |q . grad w| seen during the precheck
};

/// Compare the cell integral of (q.e_i) w^2 with L_i times its slice integral.
/// Rejects w when it fails the first-integral tolerance
/// (max |q.grad w| > tol_factor * max|q| * max|grad w|).
SliceIdentity slice_identity(const VectorField& q, const ScalarField& w, int axis,
                             double tol_factor = 1e-6);

/// Sum of (q.e_axis) w^2 over the slice x_axis = index, times the transverse
/// point volume.
double slice_integral(const VectorField& q, const ScalarField& w, int axis, int index);

} // namespace frontlab
