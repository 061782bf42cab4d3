#pragma once

#include "aer/problem.hpp"

namespace aer {

// Characteristic-line integral and radicand behind phi; exposed for diagnostics.
double characteristic_integral(const ProblemSpec& spec, Side side, double x, double y);
double phi_radicand(const ProblemSpec& spec, Side side, double x, double y);

// Zeroth-order outer solution. Throws AssumptionViolation if the radicand is not positive.
double eval_phi(const ProblemSpec& spec, Side side, double x, double y);

// Coefficients of the first-order transport equation, from finite differences of phi.
struct U1Coefficients {
    double P;
    double W;
};
U1Coefficients u1_coefficients(const ProblemSpec& spec, Side side, double x, double y);

// First-order outer correction by nested quadrature along the characteristic.
double eval_u1(const ProblemSpec& spec, Side side, double x, double y);

Field2D phi_field(const ProblemSpec& spec, Side side, const Grid2D& grid);
Field2D u1_field(const ProblemSpec& spec, Side side, const Grid2D& grid);

}  // namespace aer
