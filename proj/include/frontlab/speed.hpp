#pragma once

#include <optional>
#include <vector>

#include "frontlab/diffusion.hpp"
#include "frontlab/discrete_operator.hpp"
#include "frontlab/eigensolver.hpp"

namespace frontlab {

/// One point of the minimal-speed curve: c* = min_{lambda>0} k(lambda)/lambda.
struct SpeedPoint {
    double amplitude = 0.0;
    double lambda_star = 0.0;
    double k = 0.0;
    double c_star = 0.0;
    AdvectionScheme scheme = AdvectionScheme::Central;
    std::vector<int> resolution;
    bool bracket_interior = true;
    int eigen_solves = 0;
};

struct SpeedCurve {
    std::vector<SpeedPoint> points;
};

struct LimitEstimate {
    double estimate = 0.0;   // lim c*(M)/M
    double raw_last = 0.0;   // last-point c*/M
    double richardson = 0.0; // two-point extrapolation assuming an O(1/M) correction
    std::vector<double> successive_diffs;
    bool monotone = true;
};

struct SpeedOptions {
    double lambda_lo = 1e-3;
    double lambda_hi = 1e2;
    int coarse_points = 25;
    double rel_tol = 1e-6; // golden-section relative tolerance on lambda
    EigenOptions eigen;
    int workers = 1;
    std::optional<AdvectionScheme> scheme; // default: central when positivity holds, else upwind
};

/// Minimal KPP speed in direction e at advection amplitude M: full coarse
/// log-grid scan over lambda followed by golden-section refinement.
SpeedPoint minimal_speed(const CellPtr& cell, const DiffusionSpec& A, const VectorField& q,
                         const ScalarField& zeta, const std::vector<double>& e, double amplitude,
                         const SpeedOptions& opts = {});

/// One SpeedPoint per amplitude (strictly increasing Ms).  A failed point
/// aborts the sweep; the partial curve is carried in the exception-free
/// return when `partial` is set.
SpeedCurve amplitude_sweep(const CellPtr& cell, const DiffusionSpec& A, const VectorField& q,
                           const ScalarField& zeta, const std::vector<double>& e,
                           const std::vector<double>& amplitudes, const SpeedOptions& opts = {});

/// Final c*/M plus a Richardson-style extrapolation assuming a 1/M correction.
LimitEstimate estimate_linear_limit(const SpeedCurve& curve, double diff_tol = 1e-3);

} // namespace frontlab
