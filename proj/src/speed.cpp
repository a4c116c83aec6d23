#include "frontlab/speed.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>

#include "frontlab/parallel.hpp"

namespace frontlab {

namespace {

struct KEvaluator {
    const CellPtr& cell;
    const DiffusionSpec& A;
    const VectorField& q;
    const ScalarField& zeta;
    const std::vector<double>& e;
    double amplitude;
    AdvectionScheme scheme;
    const EigenOptions& eigen_opts;
    mutable std::atomic<int> solves{0};

    double operator()(double lambda, const ScalarField* warm = nullptr) const {
        return solve(lambda, warm).k;
    }

    EigenResult solve(double lambda, const ScalarField* warm = nullptr) const {
        OperatorSpec spec{cell, A, q, amplitude, zeta, e, lambda, scheme};
        LinearMap map = assemble(spec);
        EigenOptions opts = eigen_opts;
        if (warm) opts.start = *warm;
        EigenResult r = principal_eigenvalue(map, opts);
        ++solves;
        if (!r.converged)
            throw std::runtime_error("minimal_speed: eigenvalue solve did not converge at lambda = " +
                                     std::to_string(lambda));
        return r;
    }
};

AdvectionScheme pick_scheme(const CellPtr& cell, const DiffusionSpec& A, const VectorField& q,
                            const ScalarField& zeta, const std::vector<double>& e, double amplitude,
                            double lambda_hint) {
    OperatorSpec spec{cell, A, q, amplitude, zeta, e, lambda_hint, AdvectionScheme::Central};
    LinearMap probe = assemble(spec);
    return probe.positive_offdiagonal() ? AdvectionScheme::Central : AdvectionScheme::Upwind;
}

struct ScanResult {
    std::vector<double> lambdas, ks;
    int best = -1;
};

ScanResult coarse_scan(const KEvaluator& ev, double lo, double hi, int count, int workers) {
    ScanResult scan;
    scan.lambdas.resize(count);
    scan.ks.resize(count);
    double ratio = std::log(hi / lo);
    for (int i = 0; i < count; ++i)
        scan.lambdas[i] = lo * std::exp(ratio * i / (count - 1));
    parallel_for(count, workers, [&](std::size_t i) { scan.ks[i] = ev(scan.lambdas[i]); });
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < count; ++i) {
        double c = scan.ks[i] / scan.lambdas[i];
        if (c < best) {
            best = c;
            scan.best = i;
        }
    }
    return scan;
}

} // namespace

SpeedPoint minimal_speed(const CellPtr& cell, const DiffusionSpec& A, const VectorField& q,
                         const ScalarField& zeta, const std::vector<double>& e, double amplitude,
                         const SpeedOptions& opts) {
    if (amplitude < 0.0) throw std::invalid_argument("minimal_speed: amplitude must be >= 0");

    AdvectionScheme scheme =
        opts.scheme.value_or(pick_scheme(cell, A, q, zeta, e, amplitude, 1.0));
    KEvaluator ev{cell, A, q, zeta, e, amplitude, scheme, opts.eigen};

    double lo = opts.lambda_lo, hi = opts.lambda_hi;
    ScanResult scan = coarse_scan(ev, lo, hi, opts.coarse_points, opts.workers);
    bool interior = scan.best > 0 && scan.best < opts.coarse_points - 1;
    if (!interior) {
        // widen once, then flag
        lo = opts.lambda_lo * 0.1;
        hi = opts.lambda_hi * 10.0;
        scan = coarse_scan(ev, lo, hi, opts.coarse_points, opts.workers);
        interior = scan.best > 0 && scan.best < opts.coarse_points - 1;
    }

    // golden-section refinement between the neighbors of the coarse minimum
    int ib = scan.best;
    double a = scan.lambdas[std::max(0, ib - 1)];
    double b = scan.lambdas[std::min(opts.coarse_points - 1, ib + 1)];
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - gr * (b - a);
    double x2 = a + gr * (b - a);
    ScalarField warm; // reuse the latest eigenfunction along the refinement
    auto eval_c = [&](double lam) {
        EigenResult r = ev.solve(lam, warm.cell ? &warm : nullptr);
        warm = r.eigenfunction;
        return r.k / lam;
    };
    double f1 = eval_c(x1);
    double f2 = eval_c(x2);
    while ((b - a) > opts.rel_tol * std::max(1e-30, std::fabs(a) + std::fabs(b)) * 0.5) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = eval_c(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = eval_c(x2);
        }
    }
    double lam_star = f1 <= f2 ? x1 : x2;
    double c_star = std::min(f1, f2);
    // minimality on the scanned set: never report worse than the coarse grid
    double coarse_c = scan.ks[ib] / scan.lambdas[ib];
    if (coarse_c < c_star) {
        c_star = coarse_c;
        lam_star = scan.lambdas[ib];
    }

    SpeedPoint pt;
    pt.amplitude = amplitude;
    pt.lambda_star = lam_star;
    pt.c_star = c_star;
    pt.k = c_star * lam_star;
    pt.scheme = scheme;
    pt.resolution = cell->extents();
    pt.bracket_interior = interior;
    pt.eigen_solves = ev.solves.load();
    return pt;
}

SpeedCurve amplitude_sweep(const CellPtr& cell, const DiffusionSpec& A, const VectorField& q,
                           const ScalarField& zeta, const std::vector<double>& e,
                           const std::vector<double>& amplitudes, const SpeedOptions& opts) {
    for (std::size_t i = 1; i < amplitudes.size(); ++i)
        if (!(amplitudes[i] > amplitudes[i - 1]))
            throw std::invalid_argument("amplitude_sweep: amplitudes must be strictly increasing");
    for (double m : amplitudes)
        if (m < 0.0) throw std::invalid_argument("amplitude_sweep: amplitudes must be >= 0");
    SpeedCurve curve;
    for (double m : amplitudes)
        curve.points.push_back(minimal_speed(cell, A, q, zeta, e, m, opts));
    return curve;
}

LimitEstimate estimate_linear_limit(const SpeedCurve& curve, double diff_tol) {
    const auto& pts = curve.points;
    if (pts.size() < 3)
        throw std::invalid_argument("estimate_linear_limit: need at least 3 sweep points");
    std::vector<double> s(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (pts[i].amplitude <= 0.0)
            throw std::invalid_argument("estimate_linear_limit: amplitudes must be positive");
        s[i] = pts[i].c_star / pts[i].amplitude;
    }
    LimitEstimate est;
    est.raw_last = s.back();
    for (std::size_t i = 1; i < s.size(); ++i) est.successive_diffs.push_back(s[i] - s[i - 1]);
    bool increasing = true, decreasing = true;
    for (double d : est.successive_diffs) {
        if (d < 0) increasing = false;
        if (d > 0) decreasing = false;
    }
    est.monotone = increasing || decreasing;

    // two-point fit of s(M) = a + C/M through the last two points
    std::size_t nn = pts.size();
    double m1 = pts[nn - 2].amplitude, m2 = pts[nn - 1].amplitude;
    double c = (s[nn - 2] - s[nn - 1]) / (1.0 / m1 - 1.0 / m2);
    est.richardson = s[nn - 1] - c / m2;
    est.estimate = std::fabs(est.successive_diffs.back()) <= diff_tol * std::max(1.0, std::fabs(s.back()))
                       ? est.raw_last
                       : est.richardson;
    return est;
}

} // namespace frontlab
