#pragma once

#include <optional>
#include <vector>

#include "frontlab/discrete_operator.hpp"
#include "frontlab/field.hpp"

namespace frontlab {

/// Principal eigenvalue k with positive eigenfunction (normalized to max = 1).
struct EigenResult {
    double k = 0.0;
    ScalarField eigenfunction;
    int iterations = 0;       // resolvent applications
    double residual = 0.0;    // ||L phi - k phi||_inf / ||phi||_inf
    bool converged = false;
    std::vector<double> history; // eigenvalue estimate per cycle
};

struct EigenOptions {
    double tol = 1e-8;
    int max_iter = 10000;
    int krylov_dim = 24;
    double inner_tol = 1e-11;        // relative residual of each resolvent solve
    std::optional<double> shift;     // sigma override
    std::optional<ScalarField> start;
};

/// Shift that keeps (sigma Id - L) an M-matrix under the upwind scheme:
/// lambda^2 alpha2 + lambda (max|div(Ae)| + M max|q|) + max zeta + 1.
double default_shift(const LinearMap& map);

/// Iterative solve of (sigma Id - L) x = rhs to a relative residual tolerance
/// (BiCGStab with diagonal preconditioning).  Throws on breakdown or budget
/// exhaustion.
ScalarField solve_shifted(const LinearMap& map, double sigma, const ScalarField& rhs,
                          double tol = 1e-10, int max_iter = 100000);

/// Principal eigenvalue via Krylov-accelerated inverse iteration on the
/// shifted resolvent.  Returns converged=false with the diagnostic history if
/// the iteration budget runs out; throws if the eigenfunction loses
/// positivity (scheme/resolution violation).
EigenResult principal_eigenvalue(const LinearMap& map, const EigenOptions& opts = {});

} // namespace frontlab
