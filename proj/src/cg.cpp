#include "aer/cg.hpp"

#include <cmath>

namespace aer {

bool CgResult::usable() const { return converged || (stagnated && rel_residual <= kCgFloor); }

CgResult conjugate_gradient(const SparseMatrix& A, const Eigen::VectorXd& b, Eigen::VectorXd& x, double tol, int max_iter,
                            const CgMonitor& monitor) {
    const Eigen::Index n = b.size();
    if (x.size() != n) x = Eigen::VectorXd::Zero(n);
    if (max_iter <= 0) max_iter = static_cast<int>(10 * n);
    Eigen::VectorXd dinv = A.diagonal().cwiseInverse();
    CgResult res;
    const double bnorm = b.norm();
    if (bnorm == 0.0) {
        x.setZero();
        res.converged = true;
        return res;
    }
    Eigen::VectorXd r = b - A * x;
    Eigen::VectorXd z = dinv.cwiseProduct(r);
    Eigen::VectorXd p = z, Ap(n);
    double rz = r.dot(z);
    res.rel_residual = r.norm() / bnorm;
    if (res.rel_residual <= tol) {
        res.converged = true;
        return res;
    }
    double last_true = res.rel_residual;
    for (int it = 1; it <= max_iter; ++it) {
        Ap.noalias() = A * p;
        double alpha = rz / p.dot(Ap);
        x.noalias() += alpha * p;
        r.noalias() -= alpha * Ap;
        res.iterations = it;
        res.rel_residual = r.norm() / bnorm;
        if (monitor) monitor(it, -0.5 * (b.dot(x) + x.dot(r)));
        if (res.rel_residual <= tol) {
            // The recursive residual drifts on ill-conditioned systems; confirm with the true one
            // and restart from it if they disagree.
            r = b - A * x;
            res.rel_residual = r.norm() / bnorm;
            if (res.rel_residual <= tol) {
                res.converged = true;
                break;
            }
            // No progress since the last restart: rounding floor reached.
            if (res.rel_residual > 0.5 * last_true) {
                res.stagnated = true;
                break;
            }
            last_true = res.rel_residual;
            z = dinv.cwiseProduct(r);
            rz = r.dot(z);
            p = z;
            continue;
        }
        z = dinv.cwiseProduct(r);
        double rz_new = r.dot(z);
        p = z + (rz_new / rz) * p;
        rz = rz_new;
    }
    return res;
}

}  // namespace aer
