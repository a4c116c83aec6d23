#include "frontlab/discrete_operator.hpp"

#include <cmath>
#include <stdexcept>

namespace frontlab {

LinearMap assemble(const OperatorSpec& spec) {
    const CellPtr& cell = spec.cell;
    const int dim = cell->dim();
    const std::size_t np = cell->num_points();
    if (!cell->same_grid(*spec.advection.cell) || !cell->same_grid(*spec.zeta.cell) ||
        !cell->same_grid(*spec.diffusion.cell()))
        throw std::invalid_argument("assemble: all fields must live on the same cell");
    if (static_cast<int>(spec.direction.size()) != dim)
        throw std::invalid_argument("assemble: direction length mismatch");
    if (spec.lambda < 0.0) throw std::invalid_argument("assemble: lambda must be nonnegative");
    if (spec.amplitude < 0.0) throw std::invalid_argument("assemble: amplitude must be nonnegative");
    double enorm = 0.0;
    for (double v : spec.direction) enorm += v * v;
    enorm = std::sqrt(enorm);
    if (std::fabs(enorm - 1.0) > 1e-12)
        throw std::invalid_argument("assemble: direction must be a unit vector");

    const DiffusionSpec& A = spec.diffusion;
    const std::vector<double>& e = spec.direction;
    const double lam = spec.lambda;
    const double M = spec.amplitude;

    LinearMap map;
    map.cell_ = cell;
    map.scheme_ = spec.scheme;
    map.diagonal_diffusion_ = A.is_diagonal();
    map.lambda_ = lam;
    map.amplitude_ = M;
    map.alpha2_ = A.alpha2();
    map.max_abs_q_ = max_abs_component(spec.advection);
    map.max_zeta_ = max_abs(spec.zeta);

    // A e as a vector field, and its central divergence
    VectorField ae(cell);
    for (std::size_t p = 0; p < np; ++p)
        for (int a = 0; a < dim; ++a) ae.comp[a][p] = A.row_dot(p, a, e);
    ScalarField div_ae = divergence_central(ae);
    map.max_abs_div_ae_ = max_abs(div_ae);

    // staggered diagonal diffusion coefficients
    map.aplus_.assign(dim, std::vector<double>(np));
    for (int a = 0; a < dim; ++a) {
        const double invh2 = 1.0 / (cell->spacing(a) * cell->spacing(a));
        for (std::size_t p = 0; p < np; ++p) {
            std::size_t pp = cell->shift(p, a, +1);
            map.aplus_[a][p] = 0.5 * (A.entry(p, a, a) + A.entry(pp, a, a)) * invh2;
        }
    }

    // cross-diffusion storage
    if (!A.is_diagonal()) {
        map.cross_.assign(dim * dim, {});
        for (int a = 0; a < dim; ++a)
            for (int b = 0; b < dim; ++b) {
                if (a == b) continue;
                auto& slot = map.cross_[a * dim + b];
                slot.resize(np);
                for (std::size_t p = 0; p < np; ++p) slot[p] = A.entry(p, a, b);
            }
    }

    // combined first-order velocity: M q - 2 lambda A e
    map.vel_.assign(dim, std::vector<double>(np));
    for (int a = 0; a < dim; ++a)
        for (std::size_t p = 0; p < np; ++p)
            map.vel_[a][p] = M * spec.advection.comp[a][p] - 2.0 * lam * ae.comp[a][p];

    // zeroth-order bracket
    map.bracket_.resize(np);
    double maxb = -1e300;
    for (std::size_t p = 0; p < np; ++p) {
        double eae = A.quad(p, e);
        double qe = 0.0;
        for (int a = 0; a < dim; ++a) qe += spec.advection.comp[a][p] * e[a];
        map.bracket_[p] = lam * lam * eae - lam * div_ae[p] - lam * M * qe + spec.zeta[p];
        maxb = std::max(maxb, map.bracket_[p]);
    }
    map.max_bracket_ = maxb;

    // cached diagonal, positivity check and row-sum norm bound
    map.diag_.resize(np);
    bool positive = A.is_diagonal();
    double norm_bound = 0.0;
    for (std::size_t p = 0; p < np; ++p) {
        double d = map.bracket_[p];
        double offdiag = 0.0;
        for (int a = 0; a < dim; ++a) {
            double h = cell->spacing(a);
            double ap = map.aplus_[a][p];
            double am = map.aplus_[a][cell->shift(p, a, -1)];
            d -= ap + am;
            double u = map.vel_[a][p];
            if (spec.scheme == AdvectionScheme::Upwind) {
                d -= std::fabs(u) / h;
                offdiag += ap + am + std::fabs(u) / h;
            } else {
                double cp = ap + u / (2.0 * h);
                double cm = am - u / (2.0 * h);
                if (positive && (cp < 0.0 || cm < 0.0)) positive = false;
                offdiag += std::fabs(cp) + std::fabs(cm);
            }
        }
        if (!A.is_diagonal()) {
            for (int a = 0; a < dim; ++a)
                for (int b = 0; b < dim; ++b) {
                    if (a == b) continue;
                    double bound = 0.0;
                    for (int s : {-1, +1}) {
                        std::size_t pa = cell->shift(p, a, s);
                        bound += std::fabs(map.cross_[a * dim + b][pa]);
                    }
                    offdiag += bound / (2.0 * cell->spacing(a) * cell->spacing(b));
                }
        }
        map.diag_[p] = d;
        norm_bound = std::max(norm_bound, std::fabs(d) + offdiag);
    }
    map.positive_offdiag_ = positive;
    map.norm_bound_ = norm_bound;
    return map;
}

void LinearMap::apply(const std::vector<double>& in, std::vector<double>& out) const {
    const PeriodicCell& c = *cell_;
    const int dim = c.dim();
    const std::size_t np = c.num_points();
    if (in.size() != np) throw std::invalid_argument("LinearMap::apply: size mismatch");
    out.assign(np, 0.0);

    for (std::size_t p = 0; p < np; ++p) out[p] = bracket_[p] * in[p];

    for (int a = 0; a < dim; ++a) {
        const double h = c.spacing(a);
        const double inv2h = 1.0 / (2.0 * h);
        const std::vector<double>& ap = aplus_[a];
        const std::vector<double>& u = vel_[a];
        for (std::size_t p = 0; p < np; ++p) {
            std::size_t pp = c.shift(p, a, +1);
            std::size_t pm = c.shift(p, a, -1);
            // conservative diffusion flux across the two faces
            out[p] += ap[p] * (in[pp] - in[p]) - ap[pm] * (in[p] - in[pm]);
            if (scheme_ == AdvectionScheme::Upwind) {
                out[p] += u[p] > 0.0 ? u[p] * (in[pp] - in[p]) / h
                                     : u[p] * (in[p] - in[pm]) / h;
            } else {
                out[p] += u[p] * (in[pp] - in[pm]) * inv2h;
            }
        }
    }

    if (!diagonal_diffusion_) {
        // sum_{a != b} D_a^c (A_ab D_b^c psi)
        std::vector<std::vector<double>> grads(dim, std::vector<double>(np));
        for (int b = 0; b < dim; ++b) {
            const double inv2h = 1.0 / (2.0 * c.spacing(b));
            for (std::size_t p = 0; p < np; ++p)
                grads[b][p] = (in[c.shift(p, b, +1)] - in[c.shift(p, b, -1)]) * inv2h;
        }
        std::vector<double> flux(np);
        for (int a = 0; a < dim; ++a) {
            std::fill(flux.begin(), flux.end(), 0.0);
            bool any = false;
            for (int b = 0; b < dim; ++b) {
                if (a == b) continue;
                const auto& ab = cross_[a * dim + b];
                if (ab.empty()) continue;
                any = true;
                for (std::size_t p = 0; p < np; ++p) flux[p] += ab[p] * grads[b][p];
            }
            if (!any) continue;
            const double inv2h = 1.0 / (2.0 * c.spacing(a));
            for (std::size_t p = 0; p < np; ++p)
                out[p] += (flux[c.shift(p, a, +1)] - flux[c.shift(p, a, -1)]) * inv2h;
        }
    }
}

ScalarField LinearMap::apply(const ScalarField& psi) const {
    if (!psi.cell->same_grid(*cell_))
        throw std::invalid_argument("LinearMap::apply: field on a different cell");
    ScalarField out(cell_);
    apply(psi.values, out.values);
    return out;
}

} // namespace frontlab
