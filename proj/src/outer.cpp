#include "aer/outer.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace aer {

namespace {

using boost::math::quadrature::gauss_kronrod;

constexpr double kPhiAbsTol = 1e-12;
constexpr unsigned kPhiDepth = 12;
constexpr double kU1Tol = 1e-9;
constexpr int kU1MaxPanels = 512;

// Endpoint where the characteristic through (x, y) meets the boundary row of `side`.
double characteristic_end(const ProblemSpec& s, Side side, double x, double y) {
    return side == Side::minus ? x - s.k * (s.a + y) : x + s.k * (s.a - y);
}

// Breakpoints of [lo, hi] at period boundaries, where the wrapped source can kink.
std::vector<double> pieces(const ProblemSpec& s, double lo, double hi) {
    std::vector<double> pts{lo};
    if (s.extension == SourceExtension::periodic) {
        double L = s.length();
        double first = s.x0 + std::ceil((lo - s.x0) / L) * L;
        for (double b = first; b < hi; b += L)
            if (b > lo + 1e-14 * L) pts.push_back(b);
    }
    pts.push_back(hi);
    return pts;
}

// Gauss-Kronrod to an absolute tolerance; boost's adaptive driver only takes a
// relative one, so it is derived from the first estimate's L1 norm.
template <unsigned Points, class F>
double integrate_abs(F& g, double lo, double hi, double tol, unsigned depth) {
    double err = 0.0, l1 = 0.0;
    double v = gauss_kronrod<double, Points>::integrate(g, lo, hi, 0, 0.0, &err, &l1);
    if (err <= tol) return v;
    double rel = std::max(tol / std::max(l1, 1e-300), 1e-15);
    return gauss_kronrod<double, Points>::integrate(g, lo, hi, depth, rel);
}

template <unsigned Points = 31, class F>
double integrate_pieces(const ProblemSpec& s, F&& g, double from, double to, double tol, unsigned depth) {
    if (from == to) return 0.0;
    double sign = 1.0, lo = from, hi = to;
    if (lo > hi) {
        std::swap(lo, hi);
        sign = -1.0;
    }
    auto pts = pieces(s, lo, hi);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        total += integrate_abs<Points>(g, pts[i], pts[i + 1], tol, depth);
    return sign * total;
}

}  // namespace

double characteristic_integral(const ProblemSpec& s, Side side, double x, double y) {
    double e = characteristic_end(s, side, x, y);
    auto g = [&](double t) { return s.source(t, y + (t - x) / s.k); };
    return integrate_pieces(s, g, x, e, kPhiAbsTol, kPhiDepth);
}

double phi_radicand(const ProblemSpec& s, Side side, double x, double y) {
    double e = characteristic_end(s, side, x, y);
    double u = s.trace(side, e);
    return u * u - (2.0 / s.k) * characteristic_integral(s, side, x, y);
}

double eval_phi(const ProblemSpec& s, Side side, double x, double y) {
    double r = phi_radicand(s, side, x, y);
    if (!(r > 0.0)) {
        std::ostringstream os;
        os.precision(10);
        os << "Assumption 2 violated at (" << x << ", " << y << "): radicand of phi_" << to_string(side) << " = " << r;
        throw AssumptionViolation(os.str());
    }
    double v = std::sqrt(r);
    return side == Side::minus ? -v : v;
}

U1Coefficients u1_coefficients(const ProblemSpec& s, Side side, double x, double y) {
    const double h = 1e-4 * s.length();
    double c = eval_phi(s, side, x, y);
    double xp = eval_phi(s, side, x + h, y), xm = eval_phi(s, side, x - h, y);
    double yp = eval_phi(s, side, x, y + h), ym = eval_phi(s, side, x, y - h);
    double px = (xp - xm) / (2 * h), py = (yp - ym) / (2 * h);
    double pxx = (xp - 2 * c + xm) / (h * h), pyy = (yp - 2 * c + ym) / (h * h);
    return {(s.k * px + py) / c, -(pxx + pyy) / c};
}

namespace {

// u1(x) = exp(-G(x)) * int_e^x exp(G(z)) W(z) / k dz with G(z) = int_e^z P / k,
// on `panels` Gauss-Legendre panels per period piece. G is carried across panels
// and integrated afresh from the panel start for every outer node.
double u1_on_panels(const ProblemSpec& s, Side side, double x, double y, double e, int panels) {
    using gl = boost::math::quadrature::gauss<double, 10>;
    auto at = [&](double t) { return y + (t - x) / s.k; };
    auto P = [&](double t) { return u1_coefficients(s, side, t, at(t)).P / s.k; };
    auto pts = pieces(s, std::min(e, x), std::max(e, x));
    if (e > x) std::reverse(pts.begin(), pts.end());
    double G = 0.0, acc = 0.0;
    for (std::size_t p = 0; p + 1 < pts.size(); ++p) {
        double h = (pts[p + 1] - pts[p]) / panels;
        for (int q = 0; q < panels; ++q) {
            double a = pts[p] + q * h, b = a + h;
            auto outer = [&](double t) {
                double z = a + t * h;
                double gz = G + (z - a) * gl::integrate([&](double r) { return P(a + r * (z - a)); }, 0.0, 1.0);
                return std::exp(gz) * u1_coefficients(s, side, z, at(z)).W / s.k;
            };
            acc += h * gl::integrate(outer, 0.0, 1.0);
            G += (b - a) * gl::integrate([&](double r) { return P(a + r * h); }, 0.0, 1.0);
        }
    }
    return std::exp(-G) * acc;
}

}  // namespace

double eval_u1(const ProblemSpec& s, Side side, double x, double y) {
    double e = characteristic_end(s, side, x, y);
    if (e == x) return 0.0;
    double prev = u1_on_panels(s, side, x, y, e, 1);
    for (int panels = 2; panels <= kU1MaxPanels; panels *= 2) {
        double cur = u1_on_panels(s, side, x, y, e, panels);
        if (std::abs(cur - prev) <= kU1Tol * std::max(1.0, std::abs(cur))) return cur;
        prev = cur;
    }
    std::ostringstream os;
    os.precision(10);
    os << "first-order outer term did not converge at (" << x << ", " << y << ")";
    throw NumericalError(os.str());
}

Field2D phi_field(const ProblemSpec& s, Side side, const Grid2D& g) {
    Field2D f(g);
    for (int j = 0; j <= g.m(); ++j)
        for (int i = 0; i <= g.n(); ++i) f(i, j) = eval_phi(s, side, g.x(i), g.y(j));
    return f;
}

Field2D u1_field(const ProblemSpec& s, Side side, const Grid2D& g) {
    Field2D f(g);
    for (int j = 0; j <= g.m(); ++j)
        for (int i = 0; i <= g.n(); ++i) f(i, j) = eval_u1(s, side, g.x(i), g.y(j));
    return f;
}

}  // namespace aer
