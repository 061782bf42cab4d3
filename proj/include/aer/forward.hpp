#pragma once

#include "aer/grid.hpp"
#include "aer/layer.hpp"
#include "aer/problem.hpp"

#include <vector>

namespace aer {

struct SolverConfig {
    Grid2D grid;
    double cfl = 0.4;
    double t_end = 1.0;
    std::vector<double> snapshot_times;
    InitialKind initial = InitialKind::tanh;

    void validate(const ProblemSpec& spec) const;
};

struct ForwardResult {
    std::vector<Field2D> snapshots;
    std::vector<double> dt_history;
    int steps = 0;
    double wall_seconds = 0.0;
};

// Finite-volume solve of the full equation from the configured initial condition.
ForwardResult forward_solve(const ProblemSpec& spec, const SolverConfig& cfg);
ForwardResult forward_solve(const ProblemSpec& spec, const SolverConfig& cfg, const Field2D& initial);

// Injection of a fine-grid field onto a coarser grid whose spacings divide evenly.
Field2D restrict_to(const Field2D& fine, const Grid2D& coarse);

}  // namespace aer
