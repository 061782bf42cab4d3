#include "aer/layer.hpp"
#include "aer/pipeline.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>

using namespace aer;

namespace {

// One forward solve per example, shared by every case in this file.
const Truth& truth_example1() {
    static const Truth t = simulate_truth(preset_example1(), PipelineConfig{});
    return t;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double median_error(double delta) {
    std::vector<double> e;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        PipelineConfig c;
        c.delta = delta;
        c.seed = seed;
        e.push_back(invert(preset_example1(), c, truth_example1()).rel_err_f);
    }
    return median(e);
}

}  // namespace

TEST_SUITE("pipeline") {
    TEST_CASE("example 1 band indices near the published ones") {
        ProblemSpec s = preset_example1();
        PipelineConfig c;
        RegionMask mk = layer_band(truth_example1().front, s, s.t0, c.observation_grid(s));
        CHECK(mk.j_lo >= 29);
        CHECK(mk.j_lo <= 33);
        CHECK(mk.j_hi >= 37);
        CHECK(mk.j_hi <= 41);
    }

    TEST_CASE("band is the smallest row range covering every column's layer") {
        ProblemSpec s = preset_example1();
        Grid2D g = PipelineConfig{}.observation_grid(s);
        const FrontCurve& fr = truth_example1().front;
        RegionMask mk = layer_band(fr, s, s.t0, g);
        double lo = 1e300, hi = -1e300;
        for (int i = 0; i < g.n(); ++i) {
            double h = fr.h_at(g.x(i), s.t0), w = transition_width(s, g.x(i), h, fr.hx_at(g.x(i), s.t0)).width;
            lo = std::min(lo, h - w / 2);
            hi = std::max(hi, h + w / 2);
        }
        CHECK(g.y(mk.j_lo) <= lo);
        CHECK(g.y(mk.j_lo + 1) > lo);
        CHECK(g.y(mk.j_hi) >= hi);
        CHECK(g.y(mk.j_hi - 1) < hi);
    }

    TEST_CASE("flat narrow layer excludes at most one row") {
        ProblemSpec s = testing::simple_spec("0", "-3", "3", 0.01, 1.0);
        s.h0_star = 0.0;
        s.t0 = 0.2;
        s.T = 0.5;
        Grid2D g = s.grid(50, 50);
        FrontCurve fr = solve_front(s, g, 20);
        double w = transition_width(s, 0.0, 0.0, 0.0).width;
        REQUIRE(w < 2 * g.d2());
        RegionMask mk = layer_band(fr, s, s.t0, g);
        int gap = mk.j_hi - mk.j_lo;
        CHECK((gap == 1 || gap == 2));
    }

    TEST_CASE("band wider than the strip is reported with its stage") {
        ProblemSpec s = testing::simple_spec("0", "-1", "1", 0.45, 1.0);
        s.a = 0.5;
        s.h0_star = 0.0;
        s.t0 = 0.1;
        s.T = 0.2;
        PipelineConfig c;
        c.n = 10;
        c.m = 10;
        c.refine = 1;
        Truth t = simulate_truth(s, c);
        try {
            invert(s, c, t);
            FAIL("expected an error");
        } catch (const NumericalError& e) {
            std::string msg = e.what();
            CHECK(msg.find("layer band: ") == 0);
            CHECK(msg.find("layer too wide for this grid") != std::string::npos);
        }
    }

    TEST_CASE("outer product of the exact solution tracks the source away from the layer") {
        // Exact snapshot and exact gradients; only nodes clear of the band by a full width count.
        ProblemSpec s = preset_example1();
        const Truth& t = truth_example1();
        Grid2D g = PipelineConfig{}.observation_grid(s);
        Field2D u = restrict_to(t.snapshot, g), ux = restrict_to(diff_x(t.snapshot), g), uy = restrict_to(diff_y(t.snapshot), g);
        Field2D prod = pre_approximate_source(s.k, u, ux, uy);
        Field2D f = sample_source(s, g);
        double num = 0, den = 0;
        for (int i = 0; i <= g.n(); ++i) {
            double h = t.front.h_at(g.x(i), s.t0), w = transition_width(s, g.x(i), h, t.front.hx_at(g.x(i), s.t0)).width;
            for (int j = 1; j < g.m(); ++j) {
                if (std::abs(g.y(j) - h) < w) continue;
                num += std::pow(prod(i, j) - f(i, j), 2);
                den += f(i, j) * f(i, j);
            }
        }
        CHECK(std::sqrt(num / den) <= 0.2);
    }

    TEST_CASE("noise-free measured-gradient branch stays at the asymptotic error level") {
        PipelineConfig c;
        c.delta = 0.0;
        c.gradient_measured = true;
        PipelineResult r = invert(preset_example1(), c, truth_example1());
        CHECK(r.branch == "measured-gradient");
        CHECK_FALSE(r.smoothing.has_value());
        CHECK(r.recon.eps == doctest::Approx(1e-12));
        CHECK(r.rel_err_f <= 0.2);
    }

    TEST_CASE("noise-free smoothed branch runs at the weight floor") {
        PipelineConfig c;
        c.delta = 0.0;
        PipelineResult r = invert(preset_example1(), c, truth_example1());
        CHECK(r.branch == "smoothed");
        REQUIRE(r.smoothing.has_value());
        CHECK(r.smoothing->lower.eps == doctest::Approx(1e-14));
        CHECK(r.smoothing->upper.eps == doctest::Approx(1e-14));
        CHECK(std::isfinite(r.rel_err_f));
    }

    TEST_CASE("same seed gives identical results") {
        PipelineConfig c;
        c.seed = 7;
        PipelineResult a = invert(preset_example1(), c, truth_example1());
        PipelineResult b = invert(preset_example1(), c, truth_example1());
        CHECK(a.rel_err_f == b.rel_err_f);
        CHECK(a.recon.f_delta.values() == b.recon.f_delta.values());
        c.seed = 8;
        PipelineResult d = invert(preset_example1(), c, truth_example1());
        CHECK(d.rel_err_f != a.rel_err_f);
    }

    TEST_CASE("median error falls with the noise level") {
        double e4 = median_error(0.04), e1 = median_error(0.01), e025 = median_error(0.0025);
        MESSAGE("medians: 4% " << e4 << ", 1% " << e1 << ", 0.25% " << e025);
        CHECK(e4 > e1);
        CHECK(e1 > e025);
    }

    TEST_CASE("full pipeline matches invert on a fresh truth") {
        ProblemSpec s = preset_example1();
        PipelineConfig c;
        c.refine = 1;
        PipelineResult a = run_aer_pipeline(s, c);
        PipelineResult b = invert(s, c, simulate_truth(s, c));
        CHECK(a.rel_err_f == b.rel_err_f);
        CHECK(a.rel_err_u0 > 0);
    }

    TEST_CASE("invalid problem is rejected before any solve") {
        ProblemSpec s = preset_example1();
        s.k = -1;
        CHECK_THROWS_AS(run_aer_pipeline(s, PipelineConfig{}), ConfigError);
    }
}
