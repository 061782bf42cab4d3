#pragma once

#include "aer/forward.hpp"
#include "aer/front.hpp"
#include "aer/reconstruct.hpp"
#include "aer/smoothing.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace aer {

// Band [min(h - w/2), max(h + w/2)] over the x nodes at time t0, widened to grid rows.
RegionMask layer_band(const FrontCurve& front, const ProblemSpec& spec, double t0, const Grid2D& grid);

struct PipelineConfig {
    int n = 50;                // observation grid
    int m = 50;
    int refine = 4;            // forward grid = refine x observation grid
    double cfl = 0.4;
    InitialKind initial = InitialKind::asymptotic;
    int front_nt = 100;
    double delta = 0.01;
    std::uint64_t seed = 1;
    NoiseKind noise = NoiseKind::uniform;
    bool gradient_measured = false;
    SmoothingOptions smoothing;

    Grid2D observation_grid(const ProblemSpec& s) const { return s.grid(n, m); }
    Grid2D forward_grid(const ProblemSpec& s) const { return s.grid(n * refine, m * refine); }
};

// Forward snapshot at t0 on the forward grid and the matching front.
struct Truth {
    Field2D snapshot;
    FrontCurve front;
    Field2D u0;
    double rel_err_u0 = 0.0;
    int forward_steps = 0;
};

Truth simulate_truth(const ProblemSpec& spec, const PipelineConfig& cfg);

struct PipelineResult {
    Observation obs;
    std::optional<SmoothingResult> smoothing;
    Field2D g;
    ReconstructionResult recon;
    Field2D f_exact;
    double rel_err_f = 0.0;
    double rel_err_u0 = 0.0;
    std::string branch;  // "smoothed" or "measured-gradient"
};

// Noise, band, smoothing and reconstruction on a precomputed truth.
PipelineResult invert(const ProblemSpec& spec, const PipelineConfig& cfg, const Truth& truth);

PipelineResult run_aer_pipeline(const ProblemSpec& spec, const PipelineConfig& cfg);

Field2D sample_source(const ProblemSpec& spec, const Grid2D& grid);

}  // namespace aer
