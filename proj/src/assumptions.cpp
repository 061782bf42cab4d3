#include "aer/assumptions.hpp"

#include "aer/outer.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace aer {

namespace {

std::string fmt(const char* what, double x, double v) {
    std::ostringstream os;
    os.precision(8);
    os << what << " at x = " << x << " (value " << v << ")";
    return os.str();
}

// Integral of g(f) over the rectangle; the inner y integral is adaptive as
// min(0, f) and max(0, f) have kinks.
template <class G>
double area_integral(const ProblemSpec& s, G&& g) {
    using boost::math::quadrature::gauss_kronrod;
    auto row = [&](double x) {
        auto col = [&](double y) { return g(s.f.eval_checked(x, y)); };
        return gauss_kronrod<double, 15>::integrate(col, -s.a, s.a, 15, 1e-10);
    };
    return gauss_kronrod<double, 15>::integrate(row, s.x0, s.x1, 15, 1e-9);
}

}  // namespace

AssumptionReport check_assumption1(const ProblemSpec& s) {
    AssumptionReport r;
    r.name = "assumption1";
    const int N = 1024;
    double worst_minus = std::numeric_limits<double>::infinity();
    double worst_plus = worst_minus, worst_gap = worst_minus;
    bool flagged_minus = false, flagged_plus = false, flagged_gap = false;
    for (int i = 0; i < N; ++i) {
        double x = s.x0 + s.length() * i / N;
        double um = s.u_minus_a.eval_checked(x, 0.0), up = s.u_plus_a.eval_checked(x, 0.0);
        double gap = up - um - 2 * s.mu * s.mu;
        worst_minus = std::min(worst_minus, -um);
        worst_plus = std::min(worst_plus, up);
        worst_gap = std::min(worst_gap, gap);
        if (!(um < 0) && !flagged_minus) {
            r.fail(fmt("u^{-a} not negative", x, um));
            flagged_minus = true;
        }
        if (!(up > 0) && !flagged_plus) {
            r.fail(fmt("u^{a} not positive", x, up));
            flagged_plus = true;
        }
        if (!(gap > 0) && !flagged_gap) {
            r.fail(fmt("jump u^{a} - u^{-a} not above 2 mu^2", x, up - um));
            flagged_gap = true;
        }
    }
    r.margins["minus_sign"] = worst_minus;
    r.margins["plus_sign"] = worst_plus;
    r.margins["gap"] = worst_gap;
    return r;
}

AssumptionReport check_assumption2(const ProblemSpec& s) {
    AssumptionReport r;
    r.name = "assumption2";

    double neg = (2.0 / s.k) * area_integral(s, [](double v) { return std::min(0.0, v); });
    double pos = (2.0 / s.k) * area_integral(s, [](double v) { return std::max(0.0, v); });
    double min_um2 = std::numeric_limits<double>::infinity(), min_up2 = min_um2;
    for (int i = 0; i < 1024; ++i) {
        double x = s.x0 + s.length() * i / 1024;
        double um = s.u_minus_a.eval_checked(x, 0.0), up = s.u_plus_a.eval_checked(x, 0.0);
        min_um2 = std::min(min_um2, um * um);
        min_up2 = std::min(min_up2, up * up);
    }
    r.margins["integral_negative_part"] = neg;
    r.margins["integral_positive_part"] = pos;
    r.margins["sufficient_minus"] = min_um2 + neg;
    r.margins["sufficient_plus"] = min_up2 - pos;

    const int N = 64;
    double worst[2] = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    for (Side side : {Side::minus, Side::plus}) {
        int si = side == Side::minus ? 0 : 1;
        bool flagged = false;
        for (int j = 0; j < N; ++j)
            for (int i = 0; i < N; ++i) {
                double x = s.x0 + s.length() * i / N;
                double y = -s.a + 2 * s.a * j / (N - 1);
                double rad = phi_radicand(s, side, x, y);
                worst[si] = std::min(worst[si], rad);
                if (!(rad > 0) && !flagged) {
                    std::ostringstream os;
                    os.precision(8);
                    os << "radicand of phi_" << to_string(side) << " not positive at (" << x << ", " << y << "): " << rad;
                    r.fail(os.str());
                    flagged = true;
                }
            }
    }
    r.margins["radicand_minus"] = worst[0];
    r.margins["radicand_plus"] = worst[1];
    return r;
}

}  // namespace aer
