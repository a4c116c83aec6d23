#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "frontlab/grid.hpp"

namespace frontlab {

enum class RegionLabel : std::uint8_t { Exterior = 0, V1 = 1, V2 = 2 };

/// One value per grid point.  Immutable by convention after construction.
struct ScalarField {
    CellPtr cell;
    std::vector<double> values;

    ScalarField() = default;
    explicit ScalarField(CellPtr c, double fill = 0.0)
        : cell(std::move(c)), values(cell->num_points(), fill) {}
    ScalarField(CellPtr c, std::vector<double> v) : cell(std::move(c)), values(std::move(v)) {}

    double& operator[](std::size_t p) { return values[p]; }
    double operator[](std::size_t p) const { return values[p]; }
    std::size_t size() const { return values.size(); }
};

/// Sample a scalar function of the grid coordinates.
ScalarField sample_scalar(const CellPtr& cell,
                          const std::function<double(const std::vector<double>&)>& f);

/// N values per grid point, stored component-major.
struct VectorField {
    CellPtr cell;
    std::vector<std::vector<double>> comp; // comp[a][p]

    // diagnostics attached by the flow builder
    bool divergence_free_flag = false;
    double divergence_tolerance = 0.0;
    bool zero_average_flag = false;
    std::vector<RegionLabel> labels;                                   // empty unless a partition applies
    std::function<void(const double*, double*)> analytic;              // optional off-grid evaluator

    VectorField() = default;
    explicit VectorField(CellPtr c)
        : cell(std::move(c)), comp(cell->dim(), std::vector<double>(cell->num_points(), 0.0)) {}

    int dim() const { return cell->dim(); }
    std::size_t size() const { return cell->num_points(); }
    bool has_labels() const { return !labels.empty(); }
};

// ---- grid calculus (second-order central differences, periodic wrap) ----

ScalarField central_derivative(const ScalarField& f, int axis);
ScalarField divergence_central(const VectorField& q);
/// max_p |div q|(p)
double max_abs_divergence(const VectorField& q);
/// q . grad w with central differences
ScalarField advective_derivative(const VectorField& q, const ScalarField& w);
double max_abs_advective_derivative(const VectorField& q, const ScalarField& w);

double mean(const ScalarField& f);
double max_abs(const ScalarField& f);
double min_value(const ScalarField& f);
double max_abs_component(const VectorField& q);
/// Per-component cell averages (plain grid means).
std::vector<double> component_averages(const VectorField& q);

/// Grid inner product sum_p f g * dV.
double inner(const ScalarField& f, const ScalarField& g);
/// Integral over the cell: sum_p f * dV.
double integrate(const ScalarField& f);

/// Periodic multilinear interpolation of a scalar field at an arbitrary point.
double interpolate(const ScalarField& f, const double* x);
/// Periodic multilinear interpolation of a vector field.
void interpolate(const VectorField& q, const double* x, double* out);

} // namespace frontlab
