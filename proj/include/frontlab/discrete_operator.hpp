#pragma once

#include <optional>
#include <vector>

#include "frontlab/diffusion.hpp"
#include "frontlab/field.hpp"

namespace frontlab {

enum class AdvectionScheme { Central, Upwind };

/// Inputs for the linearized operator
///   L psi = div(A grad psi) - 2 lambda e.A grad psi + M q.grad psi
///           + [lambda^2 e.Ae - lambda div(Ae) - lambda M q.e + zeta] psi
/// acting on periodic scalar fields.
struct OperatorSpec {
    CellPtr cell;
    DiffusionSpec diffusion;
    VectorField advection;  // q (amplitude applied separately)
    double amplitude = 0.0; // M >= 0
    ScalarField zeta;
    std::vector<double> direction; // unit vector e
    double lambda = 1.0;           // wave number, > 0 (0 allowed for diagnostics)
    AdvectionScheme scheme = AdvectionScheme::Central;
};

/// Applicable linear map with cached diagonal and norm bound.
/// Immutable after assembly; apply is pure and reentrant.
class LinearMap {
public:
    ScalarField apply(const ScalarField& psi) const;
    void apply(const std::vector<double>& in, std::vector<double>& out) const;

    const CellPtr& cell() const { return cell_; }
    const std::vector<double>& diagonal() const { return diag_; }
    /// Upper bound on the max row sum of absolute coefficients.
    double norm_bound() const { return norm_bound_; }
    double max_bracket() const { return max_bracket_; }
    /// True when every off-diagonal coupling is nonnegative (positivity
    /// structure needed by the eigen-solver's positive resolvent).
    bool positive_offdiagonal() const { return positive_offdiag_; }
    AdvectionScheme scheme() const { return scheme_; }

    double lambda() const { return lambda_; }
    double amplitude() const { return amplitude_; }
    double alpha2() const { return alpha2_; }
    double max_abs_q() const { return max_abs_q_; }
    double max_abs_div_ae() const { return max_abs_div_ae_; }
    double max_zeta() const { return max_zeta_; }

private:
    friend LinearMap assemble(const OperatorSpec&);
    CellPtr cell_;
    AdvectionScheme scheme_;
    bool diagonal_diffusion_ = true;
    // staggered diffusion coefficients per axis: aplus_[a][p] = A_aa(p+h/2)/h_a^2
    std::vector<std::vector<double>> aplus_;
    // first-order velocity u_a = M q_a - 2 lambda (A e)_a
    std::vector<std::vector<double>> vel_;
    // cross-diffusion coefficients A_ab sampled per point (only when A has
    // off-diagonal entries)
    std::vector<std::vector<double>> cross_; // indexed [a*N+b][p], a<b
    std::vector<double> bracket_;
    std::vector<double> diag_;
    double norm_bound_ = 0.0, max_bracket_ = 0.0;
    bool positive_offdiag_ = false;
    double lambda_ = 0.0, amplitude_ = 0.0, alpha2_ = 0.0;
    double max_abs_q_ = 0.0, max_abs_div_ae_ = 0.0, max_zeta_ = 0.0;
};

LinearMap assemble(const OperatorSpec& spec);

} // namespace frontlab
