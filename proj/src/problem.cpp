#include "aer/problem.hpp"

#include <cmath>
#include <sstream>

namespace aer {

double ProblemSpec::wrap_x(double x) const {
    if (extension == SourceExtension::analytic) return x;
    double L = length();
    double r = std::fmod(x - x0, L);
    if (r < 0) r += L;
    return x0 + r;
}

double ProblemSpec::trace(Side s, double x) const {
    const Expr& e = (s == Side::minus) ? u_minus_a : u_plus_a;
    return e.eval_checked(wrap_x(x), 0.0);
}

double ProblemSpec::source(double x, double y) const { return f.eval_checked(wrap_x(x), y); }

void ProblemSpec::validate() const {
    auto fail = [](const std::string& m) { throw ConfigError(m); };
    if (!(mu > 0)) fail("mu must be positive");
    if (!(k > 0)) fail("k must be positive");
    if (!(x1 > x0)) fail("x1 must exceed x0");
    if (!(a > 0)) fail("a must be positive");
    if (!(T > 0)) fail("T must be positive");
    if (!(h0_star > -a && h0_star < a)) fail("h0_star must lie strictly inside (-a, a)");
    if (!(t0 > 0 && t0 <= T)) fail("t0 must lie in (0, T]");
    if (u_minus_a.uses_y() || u_plus_a.uses_y()) fail("boundary traces may only depend on x");
}

std::vector<std::string> ProblemSpec::warnings() const {
    std::vector<std::string> w;
    if (mu > 0.5) w.push_back("mu > 0.5: the asymptotic regime needs a small parameter");
    const int samples = 64;
    double L = length();
    auto check = [&](const Expr& e, const char* name, double y) {
        double worst = 0.0;
        for (int s = 0; s < samples; ++s) {
            double xx = x0 + L * s / samples;
            auto v0 = e.try_eval(xx, y), v1 = e.try_eval(xx + L, y);
            if (!v0 || !v1) return;
            worst = std::max(worst, std::abs(*v0 - *v1) / (1.0 + std::abs(*v0)));
        }
        if (worst > 1e-9) {
            std::ostringstream os;
            os << name << " is not " << L << "-periodic in x (relative mismatch " << worst << ")";
            w.push_back(os.str());
        }
    };
    check(u_minus_a, "u_minus_a", 0.0);
    check(u_plus_a, "u_plus_a", 0.0);
    for (double y : {-a, 0.0, a}) {
        std::size_t before = w.size();
        check(f, "f", y);
        if (w.size() > before) break;
    }
    return w;
}

ProblemSpec preset_example1() {
    ProblemSpec s;
    s.mu = 0.08;
    s.k = 2.0;
    s.x0 = -2.0;
    s.x1 = 2.0;
    s.a = 2.0;
    s.T = 1.0;
    s.u_minus_a = parse("-4");
    s.u_plus_a = parse("2");
    s.f = parse("cos(pi*x/4)*cos(pi*y/4)");
    s.h0_star = 0.0;
    s.t0 = 0.7;
    return s;
}

ProblemSpec preset_example2() {
    ProblemSpec s;
    s.mu = 0.08;
    s.k = 1.0;
    s.x0 = -1.0;
    s.x1 = 1.0;
    s.a = 1.0;
    s.T = 0.3;
    s.u_minus_a = parse("-8");
    s.u_plus_a = parse("4");
    s.f = parse("y-2*cos(4*pi*x)");
    s.h0_star = 0.0;
    s.t0 = 0.2;
    return s;
}

const char* to_string(SourceExtension e) { return e == SourceExtension::periodic ? "periodic" : "analytic"; }
const char* to_string(Side s) { return s == Side::minus ? "minus" : "plus"; }

}  // namespace aer
