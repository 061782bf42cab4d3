#include "aer/smoothing.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace aer {

namespace {

struct System {
    SparseMatrix data;    // (1/N) S'S
    SparseMatrix penalty; // Dxx' W Dxx + Dyy' W Dyy
    Eigen::VectorXd rhs;  // (1/N) S' u
    double N;
};

// Column n is the periodic image of column 0; its sample is averaged with column 0's.
double sample(const Field2D& u, int i, int j) {
    return i == 0 ? 0.5 * (u(0, j) + u(u.grid().n(), j)) : u(i, j);
}

System build(const Grid2D& g, const Field2D& u, RowBlock b) {
    const int n = g.n();
    const int dim = n * b.rows();
    System s;
    s.N = static_cast<double>(dim);
    Eigen::VectorXd w = block_weights(g, b);
    SparseMatrix dxx = op_dxx(g, b), dyy = op_dyy(g, b);
    SparseMatrix W(dim, dim);
    W.reserve(Eigen::VectorXi::Constant(dim, 1));
    for (int q = 0; q < dim; ++q) W.insert(q, q) = w[q];
    s.penalty = SparseMatrix(dxx.transpose() * W * dxx) + SparseMatrix(dyy.transpose() * W * dyy);
    s.data = SparseMatrix(dim, dim);
    s.data.reserve(Eigen::VectorXi::Constant(dim, 1));
    s.rhs = Eigen::VectorXd::Zero(dim);
    for (int j = b.j_begin; j <= b.j_end; ++j)
        for (int i = 0; i < n; ++i) {
            int q = (j - b.j_begin) * n + i;
            s.data.insert(q, q) = 1.0 / s.N;
            s.rhs[q] = sample(u, i, j) / s.N;
        }
    return s;
}

double misfit_of(const Grid2D& g, const Field2D& u, RowBlock b, const Eigen::VectorXd& v) {
    const int n = g.n();
    double acc = 0.0;
    for (int j = b.j_begin; j <= b.j_end; ++j)
        for (int i = 0; i < n; ++i) {
            double d = v[(j - b.j_begin) * n + i] - sample(u, i, j);
            acc += d * d;
        }
    return acc / (static_cast<double>(n) * b.rows());
}

SmoothingSolve solve(const Grid2D& g, const Field2D& u, RowBlock b, const System& sys, double eps, double cg_tol,
                     const Eigen::VectorXd* warm, bool check_monotone) {
    SparseMatrix A = sys.data + eps * sys.penalty;
    Eigen::VectorXd v = warm ? *warm : Eigen::VectorXd(sys.rhs * sys.N);
    CgMonitor mon;
    double last = std::numeric_limits<double>::infinity();
    if (check_monotone) {
        mon = [&](int it, double obj) {
            double slack = 1e-12 * std::max(1.0, std::abs(last));
            if (obj > last + slack) {
                std::ostringstream os;
                os << "CG objective increased at iteration " << it << " (" << last << " -> " << obj << ")";
                throw NumericalError(os.str());
            }
            last = obj;
        };
    }
    CgResult r = conjugate_gradient(A, sys.rhs, v, cg_tol, 0, mon);
    if (!r.usable()) {
        std::ostringstream os;
        os << "CG did not converge for eps = " << eps << " (relative residual " << r.rel_residual << " after " << r.iterations
           << " iterations)";
        throw NumericalError(os.str());
    }
    return {v, misfit_of(g, u, b, v), r.iterations};
}

void check_rows(const Grid2D& g, RowBlock b) {
    if (b.rows() < 3) {
        std::ostringstream os;
        os << "region rows " << b.j_begin << ".." << b.j_end << " has fewer than 3 rows";
        throw ConfigError(os.str());
    }
    if (b.j_begin < 0 || b.j_end > g.m()) throw ConfigError("region outside grid");
}

}  // namespace

SmoothingSolve smooth_fixed(const Grid2D& g, const Field2D& u, RowBlock b, double eps, double cg_tol, const Eigen::VectorXd* warm,
                            bool check_monotone) {
    check_rows(g, b);
    System sys = build(g, u, b);
    return solve(g, u, b, sys, eps, cg_tol, warm, check_monotone);
}

double discrepancy_target(const Observation& obs, RowBlock b, SmoothingRule rule) {
    const double d2 = obs.delta * obs.delta;
    if (rule == SmoothingRule::delta4) return d2 * d2;
    double acc = 0.0;
    for (int j = b.j_begin; j <= b.j_end; ++j)
        for (int i = 0; i < obs.grid.n(); ++i) {
            double v = sample(obs.u_delta, i, j);
            acc += v * v;
        }
    double mean = acc / (static_cast<double>(obs.grid.n()) * b.rows());
    return obs.noise == NoiseKind::uniform ? d2 * mean / 3.0 : d2 * mean;
}

RegionSmoothing smooth_region(const Observation& obs, Side side, const SmoothingOptions& opt) {
    const Grid2D& g = obs.grid;
    obs.mask.validate(g);
    RowBlock b = obs.region(side);
    check_rows(g, b);
    System sys = build(g, obs.u_delta, b);

    RegionSmoothing out;
    out.side = side;
    out.rows = b;
    SmoothingSolve best;

    if (opt.rule == SmoothingRule::fixed || obs.delta == 0.0) {
        double eps = std::pow(10.0, opt.log10_lo);
        if (opt.rule == SmoothingRule::fixed)
            eps = opt.fixed_eps > 0 ? opt.fixed_eps : std::max(obs.delta * obs.delta, 1e-12);
        best = solve(g, obs.u_delta, b, sys, eps, opt.cg_tol, nullptr, opt.check_monotone);
        out.eps = eps;
        out.cg_iterations = best.cg_iterations;
    } else {
        const double target = discrepancy_target(obs, b, opt.rule);
        out.target = target;
        double lo = opt.log10_lo, hi = opt.log10_hi;
        best = solve(g, obs.u_delta, b, sys, std::pow(10.0, lo), opt.cg_tol, nullptr, opt.check_monotone);
        out.cg_iterations += best.cg_iterations;
        if (best.misfit > target * (1 + opt.tolerance)) {
            std::ostringstream os;
            os << "discrepancy level unreachable in region " << to_string(side) << ": misfit " << best.misfit << " at eps = 1e"
               << lo << " already exceeds target " << target << " (bracket [1e" << lo << ", 1e" << hi << "])";
            throw NumericalError(os.str());
        }
        double eps = std::pow(10.0, lo);
        bool hit = std::abs(best.misfit / target - 1) <= opt.tolerance;
        Eigen::VectorXd warm = best.v;
        while (!hit && out.bisections < opt.max_bisections) {
            double mid = 0.5 * (lo + hi);
            SmoothingSolve s = solve(g, obs.u_delta, b, sys, std::pow(10.0, mid), opt.cg_tol, &warm, opt.check_monotone);
            ++out.bisections;
            out.cg_iterations += s.cg_iterations;
            warm = s.v;
            if (std::abs(s.misfit / target - 1) <= opt.tolerance) {
                best = s;
                eps = std::pow(10.0, mid);
                hit = true;
            } else if (s.misfit < target) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        if (!hit) {
            std::ostringstream os;
            os << "discrepancy level unreachable in region " << to_string(side) << ": target " << target << " not met within "
               << opt.tolerance << " after " << out.bisections << " bisections (final bracket [1e" << lo << ", 1e" << hi << "])";
            throw NumericalError(os.str());
        }
        out.eps = eps;
    }
    out.misfit = best.misfit;
    out.v = best.v;
    out.vx = op_dx(g, b) * out.v;
    out.vy = op_dy(g, b) * out.v;
    return out;
}

SmoothingResult smooth_regions(const Observation& obs, const SmoothingOptions& opt) {
    return {smooth_region(obs, Side::minus, opt), smooth_region(obs, Side::plus, opt)};
}

std::vector<double> region_values(const Grid2D& g, const RegionSmoothing& r, const Eigen::VectorXd& v) {
    const int n = g.n();
    std::vector<double> out(static_cast<std::size_t>(g.nx()) * r.rows.rows());
    for (int jj = 0; jj < r.rows.rows(); ++jj) {
        for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(jj) * g.nx() + i] = v[jj * n + i];
        out[static_cast<std::size_t>(jj) * g.nx() + n] = v[jj * n];
    }
    return out;
}

const char* to_string(SmoothingRule r) {
    switch (r) {
        case SmoothingRule::delta4: return "delta4";
        case SmoothingRule::noise_level: return "noise_level";
        case SmoothingRule::fixed: return "fixed";
    }
    return "?";
}

}  // namespace aer
