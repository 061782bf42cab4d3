#include "aer/pipeline.hpp"

#include "aer/layer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace aer {

RegionMask layer_band(const FrontCurve& front, const ProblemSpec& s, double t0, const Grid2D& g) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int i = 0; i < g.n(); ++i) {
        double x = g.x(i);
        double h = front.h_at(x, t0), hx = front.hx_at(x, t0);
        double w = transition_width(s, x, h, hx).width;
        lo = std::min(lo, h - w / 2);
        hi = std::max(hi, h + w / 2);
    }
    const double tol = 1e-9;
    RegionMask mask;
    mask.j_lo = static_cast<int>(std::floor((lo + g.a()) / g.d2() + tol));
    mask.j_hi = static_cast<int>(std::ceil((hi + g.a()) / g.d2() - tol));
    if (mask.j_lo < 0 || mask.j_hi > g.m() || mask.j_lo >= mask.j_hi) {
        std::ostringstream os;
        os << "layer too wide for this grid (band [" << lo << ", " << hi << "])";
        throw NumericalError(os.str());
    }
    return mask;
}

Field2D sample_source(const ProblemSpec& s, const Grid2D& g) {
    Field2D f(g);
    for (int j = 0; j <= g.m(); ++j)
        for (int i = 0; i <= g.n(); ++i) f(i, j) = s.f.eval_checked(g.x(i), g.y(j));
    return f;
}

Truth simulate_truth(const ProblemSpec& s, const PipelineConfig& cfg) {
    Truth t;
    Grid2D fg = cfg.forward_grid(s);
    try {
        FrontOptions fo;
        fo.nt = cfg.front_nt;
        fo.extra_times = {s.t0};
        fo.t_end = s.t0;
        t.front = solve_front(s, fg, fo);
    } catch (const Error& e) {
        rethrow_with_stage(e, "front");
    }
    try {
        SolverConfig sc;
        sc.grid = fg;
        sc.cfl = cfg.cfl;
        sc.t_end = s.t0;
        sc.snapshot_times = {s.t0};
        sc.initial = cfg.initial;
        auto r = forward_solve(s, sc);
        t.snapshot = r.snapshots.at(0);
        t.forward_steps = r.steps;
    } catch (const Error& e) {
        rethrow_with_stage(e, "forward");
    }
    try {
        t.u0 = assemble_u0(s, t.front, fg, s.t0);
        t.rel_err_u0 = rel_l2_error(t.u0, t.snapshot);
    } catch (const Error& e) {
        rethrow_with_stage(e, "asymptotic");
    }
    return t;
}

PipelineResult invert(const ProblemSpec& s, const PipelineConfig& cfg, const Truth& truth) {
    PipelineResult res;
    res.rel_err_u0 = truth.rel_err_u0;
    Grid2D og = cfg.observation_grid(s);
    Observation& obs = res.obs;
    obs.grid = og;
    obs.t0 = s.t0;
    obs.delta = cfg.delta;
    obs.seed = cfg.seed;
    obs.noise = cfg.noise;
    try {
        Field2D u = restrict_to(truth.snapshot, og);
        obs.u_delta = add_noise(u, cfg.delta, cfg.seed, cfg.noise, 0);
        if (cfg.gradient_measured) {
            // Gradients measured on the forward grid, then sampled like u.
            Field2D ux = restrict_to(diff_x(truth.snapshot), og);
            Field2D uy = restrict_to(diff_y(truth.snapshot), og);
            obs.ux_delta = add_noise(ux, cfg.delta, cfg.seed, cfg.noise, 1);
            obs.uy_delta = add_noise(uy, cfg.delta, cfg.seed, cfg.noise, 2);
        }
    } catch (const Error& e) {
        rethrow_with_stage(e, "noise");
    }
    try {
        obs.mask = layer_band(truth.front, s, s.t0, og);
    } catch (const Error& e) {
        rethrow_with_stage(e, "layer band");
    }
    if (cfg.gradient_measured) {
        res.branch = "measured-gradient";
        res.g = pre_approximate_source(s.k, obs.u_delta, *obs.ux_delta, *obs.uy_delta);
    } else {
        res.branch = "smoothed";
        try {
            res.smoothing = smooth_regions(obs, cfg.smoothing);
        } catch (const Error& e) {
            rethrow_with_stage(e, "smoothing");
        }
        res.g = pre_approximate_source(s.k, og, *res.smoothing);
    }
    try {
        res.recon = reconstruct_source(res.g, obs.mask, cfg.delta * cfg.delta);
        res.f_exact = sample_source(s, og);
        res.rel_err_f = rel_l2_error(res.recon.f_delta, res.f_exact);
        res.recon.rel_error = res.rel_err_f;
    } catch (const Error& e) {
        rethrow_with_stage(e, "reconstruction");
    }
    return res;
}

PipelineResult run_aer_pipeline(const ProblemSpec& s, const PipelineConfig& cfg) {
    s.validate();
    return invert(s, cfg, simulate_truth(s, cfg));
}

}  // namespace aer
