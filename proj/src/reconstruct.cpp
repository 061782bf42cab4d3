#include "aer/reconstruct.hpp"

#include <sstream>

namespace aer {

Field2D pre_approximate_source(double k, const Field2D& u, const Field2D& ux, const Field2D& uy) {
    Field2D g(u.grid());
    for (std::size_t q = 0; q < g.values().size(); ++q)
        g.values()[q] = u.values()[q] * (k * ux.values()[q] + uy.values()[q]);
    return g;
}

Field2D pre_approximate_source(double k, const Grid2D& grid, const SmoothingResult& sm) {
    Field2D g(grid, 0.0);
    const int n = grid.n();
    for (const RegionSmoothing* r : {&sm.lower, &sm.upper})
        for (int j = r->rows.j_begin; j <= r->rows.j_end; ++j) {
            for (int i = 0; i < n; ++i) {
                int q = (j - r->rows.j_begin) * n + i;
                g(i, j) = r->v[q] * (k * r->vx[q] + r->vy[q]);
            }
            g(n, j) = g(0, j);
        }
    return g;
}

std::vector<bool> retained_rows(const Grid2D& grid, const RegionMask& mask) {
    mask.validate(grid);
    std::vector<bool> keep(grid.ny());
    for (int j = 0; j <= grid.m(); ++j) keep[j] = mask.retained(j);
    return keep;
}

ReconstructionResult reconstruct_source(const Field2D& g, const RegionMask& mask, double eps, double cg_tol) {
    return reconstruct_source(g, retained_rows(g.grid(), mask), eps, cg_tol);
}

ReconstructionResult reconstruct_source(const Field2D& gf, const std::vector<bool>& keep, double eps, double cg_tol) {
    const Grid2D& g = gf.grid();
    if (static_cast<int>(keep.size()) != g.ny()) throw ConfigError("retained-row flags do not match grid");
    bool any = false;
    for (bool k : keep) any = any || k;
    if (!any) throw ConfigError("empty retained set");
    if (!gf.all_finite()) throw NumericalError("non-finite product data");
    if (!(eps > 0)) eps = 1e-12;

    const int n = g.n(), m = g.m();
    const int dim = n * (m + 1);
    RowBlock all{0, m};
    Eigen::VectorXd w = block_weights(g, all);
    SparseMatrix fdx = op_fdx(g, all), fdy = op_fdy(g, all);
    const double edge_w = g.d1() * g.d2();

    SparseMatrix D(dim, dim), W(dim, dim);
    D.reserve(Eigen::VectorXi::Constant(dim, 1));
    W.reserve(Eigen::VectorXi::Constant(dim, 1));
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(dim);
    for (int j = 0; j <= m; ++j)
        for (int i = 0; i < n; ++i) {
            int q = j * n + i;
            W.insert(q, q) = w[q];
            if (!keep[j]) continue;
            D.insert(q, q) = i == 0 ? 2.0 : 1.0;
            rhs[q] = gf(i, j) + (i == 0 ? gf(n, j) : 0.0);
        }
    SparseMatrix A = D + eps * (W + SparseMatrix(fdx.transpose() * W * fdx) + edge_w * SparseMatrix(fdy.transpose() * fdy));

    Eigen::VectorXd f = Eigen::VectorXd::Zero(dim);
    for (int j = 0; j <= m; ++j)
        if (keep[j])
            for (int i = 0; i < n; ++i) f[j * n + i] = gf(i, j);
    CgResult cg = conjugate_gradient(A, rhs, f, cg_tol, 50 * dim);
    if (!cg.usable()) {
        std::ostringstream os;
        os << "CG did not converge in reconstruction (relative residual " << cg.rel_residual << ")";
        throw NumericalError(os.str());
    }
    ReconstructionResult res;
    res.eps = eps;
    res.cg_iterations = cg.iterations;
    res.f_delta = Field2D(g);
    scatter_block(res.f_delta, all, f);
    for (int j = 0; j <= m; ++j)
        if (keep[j])
            for (int i = 0; i <= n; ++i) {
                double d = res.f_delta(i, j) - gf(i, j);
                res.residual += d * d;
            }
    return res;
}

}  // namespace aer
