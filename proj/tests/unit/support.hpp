#pragma once

#include "aer/expr.hpp"
#include "aer/grid.hpp"
#include "aer/problem.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace aer::testing {

inline ProblemSpec simple_spec(const std::string& f, const std::string& um, const std::string& up, double mu = 0.08,
                               double k = 2.0) {
    ProblemSpec s = preset_example1();
    s.mu = mu;
    s.k = k;
    s.f = parse(f);
    s.u_minus_a = parse(um);
    s.u_plus_a = parse(up);
    return s;
}

template <class F>
Field2D sample(const Grid2D& g, F&& fn) {
    Field2D out(g);
    for (int j = 0; j <= g.m(); ++j)
        for (int i = 0; i <= g.n(); ++i) out(i, j) = fn(g.x(i), g.y(j));
    return out;
}

inline double max_abs_diff(const Field2D& a, const Field2D& b) {
    double m = 0;
    for (std::size_t k = 0; k < a.values().size(); ++k) m = std::max(m, std::abs(a.values()[k] - b.values()[k]));
    return m;
}

// Least-squares slope of log y against log x.
inline double slope(const std::vector<double>& x, const std::vector<double>& y) {
    double n = static_cast<double>(x.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace aer::testing
