#include "aer/layer.hpp"

#include "aer/outer.hpp"

#include <cmath>
#include <sstream>

namespace aer {

double layer_profile(Side side, double xi, double jump, double k, double h0x) {
    double P = side == Side::minus ? jump : -jump;
    double c = (1 - k * h0x) / std::sqrt(1 + h0x * h0x);
    return 2 * P / (std::exp(-xi * P * c) + 1);
}

double eval_q0(const ProblemSpec& s, Side side, double xi, double x, double h0, double h0x) {
    double jump = 0.5 * (eval_phi(s, Side::plus, x, h0) - eval_phi(s, Side::minus, x, h0));
    return layer_profile(side, xi, jump, s.k, h0x);
}

LayerWidth layer_width(double jump, double mu, double k, double h0x) {
    double r = 2 * jump / (mu * mu) - 1;
    if (!(r > 0)) {
        std::ostringstream os;
        os << "layer jump below threshold (2P/mu^2 - 1 = " << r << ")";
        throw AssumptionViolation(os.str());
    }
    double slope = 1 - k * h0x;
    if (!(slope > 0)) throw AssumptionViolation("Assumption 3 violated: slope bound");
    double q = std::sqrt(1 + h0x * h0x);
    double xi = std::log(r) * q / (jump * slope);
    return {-xi, xi, mu * 2 * xi / q};
}

LayerWidth transition_width(const ProblemSpec& s, double x, double h0, double h0x) {
    double jump = 0.5 * (eval_phi(s, Side::plus, x, h0) - eval_phi(s, Side::minus, x, h0));
    return layer_width(jump, s.mu, s.k, h0x);
}

Field2D assemble_u0(const ProblemSpec& s, const Grid2D& g, const std::vector<double>& h, const std::vector<double>& hx) {
    if (static_cast<int>(h.size()) != g.nx() || static_cast<int>(hx.size()) != g.nx())
        throw ConfigError("front row does not match grid columns");
    Field2D u(g);
    for (int i = 0; i <= g.n(); ++i) {
        double x = g.x(i);
        double pm = eval_phi(s, Side::minus, x, h[i]), pp = eval_phi(s, Side::plus, x, h[i]);
        double jump = 0.5 * (pp - pm);
        double q = std::sqrt(1 + hx[i] * hx[i]);
        for (int j = 0; j <= g.m(); ++j) {
            double y = g.y(j);
            double xi = (y - h[i]) * q / s.mu;
            Side side = y <= h[i] ? Side::minus : Side::plus;
            u(i, j) = eval_phi(s, side, x, y) + layer_profile(side, xi, jump, s.k, hx[i]);
        }
    }
    return u;
}

Field2D assemble_u0(const ProblemSpec& s, const FrontCurve& front, const Grid2D& g, double t) {
    std::vector<double> h(g.nx()), hx(g.nx());
    for (int i = 0; i <= g.n(); ++i) {
        h[i] = front.h_at(g.x(i), t);
        hx[i] = front.hx_at(g.x(i), t);
    }
    Field2D u = assemble_u0(s, g, h, hx);
    u.set_time(t);
    return u;
}

Field2D initial_condition(const ProblemSpec& s, const Grid2D& g) { return initial_condition(s, g, InitialKind::tanh); }

Field2D initial_condition(const ProblemSpec& s, const Grid2D& g, InitialKind kind) {
    if (kind == InitialKind::asymptotic) {
        std::vector<double> h(g.nx(), s.h0_star), hx(g.nx(), 0.0);
        Field2D u = assemble_u0(s, g, h, hx);
        u.set_time(0.0);
        return u;
    }
    Field2D u(g);
    for (int i = 0; i <= g.n(); ++i) {
        double x = g.x(i);
        double um = s.u_minus_a.eval_checked(x, 0.0), up = s.u_plus_a.eval_checked(x, 0.0);
        for (int j = 0; j <= g.m(); ++j)
            u(i, j) = 0.5 * (up - um) * std::tanh(x + (g.y(j) - s.h0_star) / s.mu) + 0.5 * (up + um);
    }
    u.set_time(0.0);
    return u;
}

const char* to_string(InitialKind k) { return k == InitialKind::tanh ? "tanh" : "asymptotic"; }

}  // namespace aer
