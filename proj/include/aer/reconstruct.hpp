#pragma once

#include "aer/grid.hpp"
#include "aer/smoothing.hpp"

#include <optional>
#include <vector>

namespace aer {

struct ReconstructionResult {
    Field2D f_delta;
    double eps = 0.0;
    std::optional<double> rel_error;
    double residual = 0.0;
    int cg_iterations = 0;
};

// g = u (k u_x + u_y) pointwise.
Field2D pre_approximate_source(double k, const Field2D& u, const Field2D& ux, const Field2D& uy);

// Product data on the retained rows built from the two smoothed regions; band rows are 0.
Field2D pre_approximate_source(double k, const Grid2D& grid, const SmoothingResult& sm);

// H1-penalised least squares fit of g over the retained rows, solved on the whole grid.
// eps <= 0 selects the floor 1e-12.
ReconstructionResult reconstruct_source(const Field2D& g, const std::vector<bool>& retained_rows, double eps,
                                        double cg_tol = 1e-10);
ReconstructionResult reconstruct_source(const Field2D& g, const RegionMask& mask, double eps, double cg_tol = 1e-10);

std::vector<bool> retained_rows(const Grid2D& grid, const RegionMask& mask);

}  // namespace aer
