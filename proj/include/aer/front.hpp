#pragma once

#include "aer/problem.hpp"

#include <vector>

namespace aer {

// Front position h0 sampled on the x nodes of a grid (n + 1 values, last = first)
// at increasing times.
struct FrontCurve {
    Grid2D grid;
    std::vector<double> times;
    std::vector<std::vector<double>> h;
    std::vector<std::vector<double>> hx;
    int steps = 0;

    // Row at time t, linear in t between stored samples.
    std::vector<double> h_row(double t) const;
    std::vector<double> hx_row(double t) const;
    // Periodic linear interpolation in x of the row at time t; exact on nodes.
    double h_at(double x, double t) const;
    double hx_at(double x, double t) const;

    double t_min() const { return times.front(); }
    double t_max() const { return times.back(); }
};

struct FrontOptions {
    int nt = 100;                     // uniform output intervals on [0, T]
    std::vector<double> extra_times;  // additional exact output times
    double cfl = 0.4;
    double t_end = -1.0;              // defaults to spec.T
};

FrontCurve solve_front(const ProblemSpec& spec, const Grid2D& grid, int nt);
FrontCurve solve_front(const ProblemSpec& spec, const Grid2D& grid, const FrontOptions& opt);

// Periodic central slope of a front row of n + 1 values.
std::vector<double> front_slope(const std::vector<double>& h, double d1);

}  // namespace aer
