#pragma once

#include <functional>
#include <vector>

#include "frontlab/field.hpp"
#include "frontlab/grid.hpp"

namespace frontlab {

/// Symmetric N x N diffusivity per grid point with ellipticity bounds
/// alpha1 <= xi.A xi / |xi|^2 <= alpha2 computed at construction.
class DiffusionSpec {
public:
    static DiffusionSpec identity(CellPtr cell, double scale = 1.0);
    /// Constant matrix (row-major N x N, must be symmetric).
    static DiffusionSpec constant(CellPtr cell, std::vector<double> matrix);
    /// Spatially varying matrix sampled from a callback.
    static DiffusionSpec from_sampler(
        CellPtr cell,
        const std::function<std::vector<double>(const std::vector<double>&)>& sampler);

    const CellPtr& cell() const { return cell_; }
    double entry(std::size_t p, int i, int j) const;
    /// True when A_ij == 0 for i != j at every point.
    bool is_diagonal() const { return diagonal_; }
    bool is_constant() const { return mode_ != Mode::Varying; }
    double alpha1() const { return alpha1_; }
    double alpha2() const { return alpha2_; }

    /// Row i of A(p) applied to a direction vector.
    double row_dot(std::size_t p, int i, const std::vector<double>& v) const;
    /// xi . A(p) xi
    double quad(std::size_t p, const std::vector<double>& xi) const;

private:
    enum class Mode { Identity, Constant, Varying };
    DiffusionSpec(CellPtr cell, Mode mode);
    void compute_bounds();

    CellPtr cell_;
    Mode mode_;
    double scale_ = 1.0;
    bool diagonal_ = true;
    std::vector<double> data_; // N*N for Constant, npoints*N*N for Varying
    double alpha1_ = 1.0, alpha2_ = 1.0;
};

/// Eigenvalues of a small symmetric matrix (cyclic Jacobi), ascending.
std::vector<double> symmetric_eigenvalues(std::vector<double> matrix, int n);

/// KPP linearization coefficient zeta = f_u(.,0); must be positive everywhere.
struct NonlinearitySpec {
    ScalarField zeta;
    std::string description;

    static NonlinearitySpec constant(CellPtr cell, double value, std::string name = "");
    static NonlinearitySpec from_field(ScalarField z, std::string name = "");
};

} // namespace frontlab
