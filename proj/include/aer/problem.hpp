#pragma once

#include "aer/expr.hpp"
#include "aer/grid.hpp"

#include <string>
#include <vector>

namespace aer {

// How the source and traces are continued outside [x0, x1] when a characteristic
// leaves the period cell. `periodic` matches what the periodic forward solver sees;
// `analytic` uses the expressions as written.
enum class SourceExtension { periodic, analytic };

enum class Side { minus, plus };

struct ProblemSpec {
    double mu = 0.08;
    double k = 1.0;
    double x0 = -1.0;
    double x1 = 1.0;
    double a = 1.0;
    double T = 1.0;
    Expr u_minus_a;  // trace at y = -a, function of x
    Expr u_plus_a;   // trace at y = a, function of x
    Expr f;          // source, function of x and y
    double h0_star = 0.0;
    double t0 = 0.5;
    SourceExtension extension = SourceExtension::periodic;

    double length() const { return x1 - x0; }
    // Maps x into [x0, x1) when the extension is periodic, identity otherwise.
    double wrap_x(double x) const;
    double trace(Side s, double x) const;
    double source(double x, double y) const;

    // Throws ConfigError on hard violations (k <= 0, front outside the strip, ...).
    void validate() const;
    // Soft problems: mu > 0.5, traces or source not periodic in x.
    std::vector<std::string> warnings() const;

    Grid2D grid(int n, int m) const { return Grid2D(x0, x1, a, n, m); }
};

ProblemSpec preset_example1();
ProblemSpec preset_example2();

const char* to_string(SourceExtension e);
const char* to_string(Side s);

}  // namespace aer
