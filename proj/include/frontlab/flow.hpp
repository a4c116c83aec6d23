#pragma once

#include <functional>
#include <string>
#include <vector>

#include "frontlab/field.hpp"
#include "frontlab/grid.hpp"

namespace frontlab {

enum class FlowKind { Shear, Cellular, TwoCylinder, Custom };

/// Declarative description of a built-in incompressible flow.
struct FlowSpec {
    FlowKind kind = FlowKind::Shear;

    /// Flow axis (direction of q for shear / cylinder alignment).
    int axis = 0;

    // shear parameters: profile of the cross variables
    std::string shear_profile = "sin"; // "sin" | "two_bump" | "custom"
    int harmonic = 1;
    std::function<double(const std::vector<double>&)> custom_profile; // takes cross coords

    // cellular parameters (2D only)
    double amplitude = 1.0;

    // two_cylinder parameters
    double radius = 0.2;
    double gap = 0.1;       // boundary distance h >= 0 between the two cylinders
    double vmax = 1.0;
    std::function<double(double)> axial_profile; // v(r/R), default 1 - t^2, must vanish at t=1

    // custom field
    std::function<void(const std::vector<double>&, std::vector<double>&)> custom_field;
    std::vector<RegionLabel> custom_labels;
};

/// Sample a flow on the cell.  Built-ins come with divergence-free and
/// zero-average flags set, partition labels (two_cylinder) and an analytic
/// off-grid evaluator attached.
VectorField make_flow(const FlowSpec& spec, const CellPtr& cell);

/// Stream function of the built-in cellular flow (2D).
double cellular_stream_function(double amplitude, const std::vector<double>& periods,
                                double x1, double x2);

/// Geometry of the two_cylinder construction (shared with the reduced
/// variational paths): cylinders along `axis`, cross-sections are balls of
/// radius R in the remaining axes, separated along the last axis.
struct TwoCylinderGeometry {
    int axis;
    double radius;
    double gap;
    std::vector<double> center1; // cross-space center of D1 (full N coords, axis entry unused)
    std::vector<double> center2;
};
TwoCylinderGeometry two_cylinder_geometry(const FlowSpec& spec, const PeriodicCell& cell);

/// Cross-sectional distance from the cylinder axis.
double cross_radius(const PeriodicCell& cell, const std::vector<double>& x,
                    const std::vector<double>& center, int axis);

} // namespace frontlab
