#include "frontlab/eigensolver.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace frontlab {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

double norm_inf(const std::vector<double>& a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::fabs(v));
    return m;
}

void axpy(double alpha, const std::vector<double>& x, std::vector<double>& y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

struct ShiftedOp {
    const LinearMap& map;
    double sigma;
    mutable std::vector<double> tmp;
    void operator()(const std::vector<double>& in, std::vector<double>& out) const {
        map.apply(in, out);
        for (std::size_t i = 0; i < in.size(); ++i) out[i] = sigma * in[i] - out[i];
    }
};

// BiCGStab with Jacobi preconditioning on (sigma I - L).
void bicgstab(const ShiftedOp& op, const std::vector<double>& precond_inv,
              const std::vector<double>& rhs, std::vector<double>& x, double tol, int max_iter,
              int* used_iters) {
    const std::size_t n = rhs.size();
    double bnorm = norm2(rhs);
    if (bnorm == 0.0) {
        x.assign(n, 0.0);
        if (used_iters) *used_iters = 0;
        return;
    }
    std::vector<double> r(n), r0(n), p(n, 0.0), v(n, 0.0), s(n), t(n), y(n), z(n), ax(n);
    if (x.size() != n) x.assign(n, 0.0);
    op(x, ax);
    for (std::size_t i = 0; i < n; ++i) r[i] = rhs[i] - ax[i];
    r0 = r;
    double rho = 1.0, alpha = 1.0, omega = 1.0;
    int it = 0;
    for (; it < max_iter; ++it) {
        if (norm2(r) <= tol * bnorm) break;
        double rho_new = dot(r0, r);
        if (std::fabs(rho_new) < 1e-300) { // restart with current residual
            r0 = r;
            rho_new = dot(r0, r);
            if (std::fabs(rho_new) < 1e-300) break;
            p.assign(n, 0.0);
            v.assign(n, 0.0);
            rho = 1.0;
            alpha = 1.0;
            omega = 1.0;
        }
        double beta = (rho_new / rho) * (alpha / omega);
        for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * (p[i] - omega * v[i]);
        for (std::size_t i = 0; i < n; ++i) y[i] = precond_inv[i] * p[i];
        op(y, v);
        double r0v = dot(r0, v);
        if (std::fabs(r0v) < 1e-300) break;
        alpha = rho_new / r0v;
        for (std::size_t i = 0; i < n; ++i) s[i] = r[i] - alpha * v[i];
        if (norm2(s) <= tol * bnorm) {
            axpy(alpha, y, x);
            r = s;
            ++it;
            break;
        }
        for (std::size_t i = 0; i < n; ++i) z[i] = precond_inv[i] * s[i];
        op(z, t);
        double tt = dot(t, t);
        if (tt < 1e-300) break;
        omega = dot(t, s) / tt;
        for (std::size_t i = 0; i < n; ++i) x[i] += alpha * y[i] + omega * z[i];
        for (std::size_t i = 0; i < n; ++i) r[i] = s[i] - omega * t[i];
        rho = rho_new;
        if (omega == 0.0) break;
    }
    if (used_iters) *used_iters = it;
    // final residual check
    op(x, ax);
    for (std::size_t i = 0; i < n; ++i) ax[i] = rhs[i] - ax[i];
    if (norm2(ax) > 10.0 * tol * bnorm)
        throw std::runtime_error("solve_shifted: BiCGStab failed to reach the residual tolerance");
}

std::vector<double> jacobi_preconditioner(const LinearMap& map, double sigma) {
    const std::vector<double>& d = map.diagonal();
    std::vector<double> inv(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        double dd = sigma - d[i];
        inv[i] = std::fabs(dd) > 1e-14 ? 1.0 / dd : 1.0;
    }
    return inv;
}

} // namespace

double default_shift(const LinearMap& map) {
    double lam = map.lambda();
    return lam * lam * map.alpha2() +
           lam * (map.max_abs_div_ae() + map.amplitude() * map.max_abs_q()) + map.max_zeta() + 1.0;
}

ScalarField solve_shifted(const LinearMap& map, double sigma, const ScalarField& rhs, double tol,
                          int max_iter) {
    if (!rhs.cell->same_grid(*map.cell()))
        throw std::invalid_argument("solve_shifted: rhs on a different cell");
    ShiftedOp op{map, sigma, {}};
    std::vector<double> pre = jacobi_preconditioner(map, sigma);
    ScalarField x(map.cell());
    bicgstab(op, pre, rhs.values, x.values, tol, max_iter, nullptr);
    return x;
}

EigenResult principal_eigenvalue(const LinearMap& map, const EigenOptions& opts) {
    const std::size_t n = map.cell()->num_points();
    const double sigma = opts.shift.value_or(default_shift(map));
    if (sigma <= map.max_bracket())
        throw std::invalid_argument("principal_eigenvalue: shift below the operator bracket bound");

    ShiftedOp op{map, sigma, {}};
    std::vector<double> pre = jacobi_preconditioner(map, sigma);

    std::vector<double> x(n, 1.0);
    if (opts.start) {
        if (!opts.start->cell->same_grid(*map.cell()))
            throw std::invalid_argument("principal_eigenvalue: start vector on a different cell");
        x = opts.start->values;
        double nx = norm2(x);
        if (nx == 0.0) x.assign(n, 1.0);
    }

    EigenResult res;
    res.eigenfunction = ScalarField(map.cell());

    const int m = std::max(2, opts.krylov_dim);
    std::vector<std::vector<double>> V;
    Eigen::MatrixXd H;
    std::vector<double> w(n), lx(n);
    double k_prev = std::numeric_limits<double>::quiet_NaN();
    int total_solves = 0;

    auto finish = [&](double k, double resid, bool ok) {
        double mx = 0.0;
        for (double v : x) mx = std::max(mx, v);
        if (ok) {
            if (mx <= 0.0)
                throw std::runtime_error(
                    "principal_eigenvalue: eigenfunction lost positivity; switch to the upwind "
                    "scheme or refine the grid");
            double scale = 1.0 / mx;
            for (std::size_t i = 0; i < n; ++i) res.eigenfunction[i] = x[i] * scale;
            if (min_value(res.eigenfunction) <= 0.0)
                throw std::runtime_error(
                    "principal_eigenvalue: eigenfunction lost positivity; switch to the upwind "
                    "scheme or refine the grid");
        } else {
            for (std::size_t i = 0; i < n; ++i) res.eigenfunction[i] = x[i];
        }
        res.k = k;
        res.residual = resid;
        res.converged = ok;
        res.iterations = total_solves;
        return res;
    };

    while (true) {
        // Arnoldi factorization of the resolvent (sigma I - L)^{-1}, with a
        // Ritz + exact-residual convergence check after every step.
        V.assign(1, x);
        double nx = norm2(V[0]);
        for (double& v : V[0]) v /= nx;
        H = Eigen::MatrixXd::Zero(m + 1, m);
        for (int j = 0; j < m; ++j) {
            w.assign(n, 0.0);
            bicgstab(op, pre, V[j], w, opts.inner_tol, 200000, nullptr);
            ++total_solves;
            for (int pass = 0; pass < 2; ++pass) { // MGS with one reorthogonalization
                for (int i = 0; i <= j; ++i) {
                    double h = dot(V[i], w);
                    axpy(-h, V[i], w);
                    H(i, j) += h;
                }
            }
            double beta = norm2(w);
            bool invariant = beta < 1e-13 * std::max(1.0, std::fabs(H(j, j)));
            const int built = j + 1;

            // dominant Ritz pair of the leading Hessenberg block
            Eigen::MatrixXd Hm = H.topLeftCorner(built, built);
            Eigen::EigenSolver<Eigen::MatrixXd> es(Hm);
            int best = 0;
            double best_mod = -1.0;
            for (int i = 0; i < built; ++i) {
                double mod = std::abs(es.eigenvalues()[i]);
                if (mod > best_mod) {
                    best_mod = mod;
                    best = i;
                }
            }
            Eigen::VectorXcd y = es.eigenvectors().col(best);
            x.assign(n, 0.0);
            for (int i = 0; i < built; ++i) axpy(y[i].real(), V[i], x);
            double sgn = 0.0;
            for (double v : x) sgn += v;
            if (sgn < 0.0)
                for (double& v : x) v = -v;
            double nrm = norm2(x);
            if (nrm < 1e-300) throw std::runtime_error("principal_eigenvalue: degenerate Ritz vector");
            for (double& v : x) v /= nrm;

            // Rayleigh estimate through one exact application of L
            map.apply(x, lx);
            double k = dot(x, lx);
            double rnum = 0.0;
            for (std::size_t i = 0; i < n; ++i) rnum = std::max(rnum, std::fabs(lx[i] - k * x[i]));
            double resid = rnum / norm_inf(x);
            res.history.push_back(k);

            bool stag =
                !std::isnan(k_prev) && std::fabs(k - k_prev) <= opts.tol * std::max(1.0, std::fabs(k));
            k_prev = k;
            if (resid <= 0.01 * opts.tol) return finish(k, resid, true);
            if (resid <= opts.tol && (stag || invariant)) return finish(k, resid, true);
            if (total_solves >= opts.max_iter) return finish(k, resid, false);
            if (invariant) break; // exact invariant subspace but not converged: restart

            H(j + 1, j) = beta;
            V.push_back(w);
            for (double& v : V.back()) v /= beta;
        }
    }
}

} // namespace frontlab
