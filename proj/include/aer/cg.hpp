#pragma once

#include "aer/grid.hpp"

#include <functional>

namespace aer {

struct CgResult {
    int iterations = 0;
    double rel_residual = 0.0;
    bool converged = false;
    bool stagnated = false;  // true residual stopped improving above tol

    // Converged, or stuck at the rounding floor but still below kCgFloor.
    bool usable() const;
};

inline constexpr double kCgFloor = 1e-8;

// Called after every iteration with the objective 0.5 x'Ax - b'x.
// Convergence is declared on the true residual b - Ax, not the recursive one.
using CgMonitor = std::function<void(int iteration, double objective)>;

// Jacobi-preconditioned conjugate gradient for SPD A, starting from x.
// max_iter = 0 picks 10 * dim.
CgResult conjugate_gradient(const SparseMatrix& A, const Eigen::VectorXd& b, Eigen::VectorXd& x, double tol = 1e-10,
                            int max_iter = 0, const CgMonitor& monitor = {});

}  // namespace aer
