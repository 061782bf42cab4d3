#pragma once

#include "aer/front.hpp"
#include "aer/problem.hpp"

namespace aer {

// Logistic layer profile. `jump` is P^(-) = (phi_plus - phi_minus)/2 at the front;
// the plus side uses -jump.
double layer_profile(Side side, double xi, double jump, double k, double h0x);

double eval_q0(const ProblemSpec& spec, Side side, double xi, double x, double h0, double h0x);

struct LayerWidth {
    double xi_minus;
    double xi_plus;
    double width;
};

// Points where |Q0| falls to mu^2 on either side, and the physical band width.
LayerWidth layer_width(double jump, double mu, double k, double h0x);
LayerWidth transition_width(const ProblemSpec& spec, double x, double h0, double h0x);

// Zeroth-order asymptotic solution on `grid` at time t.
Field2D assemble_u0(const ProblemSpec& spec, const FrontCurve& front, const Grid2D& grid, double t);
// Same, for an explicit front row given on the x nodes of `grid`.
Field2D assemble_u0(const ProblemSpec& spec, const Grid2D& grid, const std::vector<double>& h,
                    const std::vector<double>& hx);

enum class InitialKind { tanh, asymptotic };

// tanh: the smoothed step centred on h0_star; asymptotic: U0 for the flat initial front.
Field2D initial_condition(const ProblemSpec& spec, const Grid2D& grid);
Field2D initial_condition(const ProblemSpec& spec, const Grid2D& grid, InitialKind kind);

const char* to_string(InitialKind k);

}  // namespace aer
