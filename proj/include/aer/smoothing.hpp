#pragma once

#include "aer/cg.hpp"
#include "aer/grid.hpp"
#include "aer/noise.hpp"
#include "aer/problem.hpp"

#include <cstdint>
#include <optional>

namespace aer {

struct Observation {
    Grid2D grid;
    double t0 = 0.0;
    Field2D u_delta;
    double delta = 0.0;
    std::uint64_t seed = 0;
    NoiseKind noise = NoiseKind::uniform;
    RegionMask mask;
    std::optional<Field2D> ux_delta, uy_delta;

    RowBlock region(Side side) const {
        return side == Side::minus ? RowBlock{0, mask.j_lo} : RowBlock{mask.j_hi, grid.m()};
    }
};

// How the smoothing weight is chosen:
//  delta4       mean-square misfit = delta^4
//  noise_level  mean-square misfit = expected noise power, delta^2 <u^2>/3 (uniform)
//               or delta^2 <u^2> (gaussian)
//  fixed        eps = fixed_eps, no search
enum class SmoothingRule { delta4, noise_level, fixed };

struct SmoothingOptions {
    SmoothingRule rule = SmoothingRule::noise_level;
    double tolerance = 0.01;
    double log10_lo = -14.0;
    double log10_hi = 2.0;
    int max_bisections = 60;
    double cg_tol = 1e-10;
    double fixed_eps = -1.0;  // <= 0: delta^2, floored at 1e-12
    bool check_monotone = false;  // assert the CG objective never increases
};

struct RegionSmoothing {
    Side side = Side::minus;
    RowBlock rows;
    double eps = 0.0;
    double misfit = 0.0;
    double target = 0.0;
    int bisections = 0;
    int cg_iterations = 0;
    // Periodic unknowns (n per row, row-major) and their grid derivatives.
    Eigen::VectorXd v, vx, vy;
};

struct SmoothingResult {
    RegionSmoothing lower, upper;
};

// Mean-square misfit of a solution of the smoothing problem for a fixed weight.
struct SmoothingSolve {
    Eigen::VectorXd v;
    double misfit;
    int cg_iterations;
};
SmoothingSolve smooth_fixed(const Grid2D& grid, const Field2D& data, RowBlock rows, double eps, double cg_tol = 1e-10,
                            const Eigen::VectorXd* warm = nullptr, bool check_monotone = false);

double discrepancy_target(const Observation& obs, RowBlock rows, SmoothingRule rule);

RegionSmoothing smooth_region(const Observation& obs, Side region, const SmoothingOptions& opt = {});
SmoothingResult smooth_regions(const Observation& obs, const SmoothingOptions& opt = {});

// Region values as a field restricted to its rows: (n + 1) x rows, row-major.
std::vector<double> region_values(const Grid2D& grid, const RegionSmoothing& r, const Eigen::VectorXd& v);

const char* to_string(SmoothingRule r);

}  // namespace aer
