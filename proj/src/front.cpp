#include "aer/front.hpp"

#include "aer/outer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace aer {

namespace {

std::vector<double> lerp_rows(const FrontCurve& fc, const std::vector<std::vector<double>>& rows, double t) {
    const auto& ts = fc.times;
    const double eps = 1e-12 * std::max(1.0, std::abs(ts.back()));
    if (t < ts.front() - eps || t > ts.back() + eps) {
        std::ostringstream os;
        os << "time " << t << " outside front coverage [" << ts.front() << ", " << ts.back() << "]";
        throw ConfigError(os.str());
    }
    auto it = std::lower_bound(ts.begin(), ts.end(), t - eps);
    std::size_t k = static_cast<std::size_t>(it - ts.begin());
    if (k >= ts.size()) k = ts.size() - 1;
    if (std::abs(ts[k] - t) <= eps || k == 0) return rows[k];
    double w = (t - ts[k - 1]) / (ts[k] - ts[k - 1]);
    std::vector<double> out(rows[k].size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (1 - w) * rows[k - 1][i] + w * rows[k][i];
    return out;
}

double periodic_lerp(const Grid2D& g, const std::vector<double>& row, double x) {
    double p = (x - g.x0()) / g.d1();
    double n = g.n();
    p = std::fmod(p, n);
    if (p < 0) p += n;
    double r = std::round(p);
    if (std::abs(p - r) < 1e-9) return row[static_cast<int>(r) % g.n()];
    int i = static_cast<int>(std::floor(p));
    double w = p - i;
    return (1 - w) * row[i] + w * row[i + 1];
}

void check_front(const ProblemSpec& s, const std::vector<double>& h, const std::vector<double>& hx, double t) {
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (!std::isfinite(h[i])) {
            std::ostringstream os;
            os << "front solver produced a non-finite value at t = " << t;
            throw NumericalError(os.str());
        }
        if (!(h[i] > -s.a && h[i] < s.a)) {
            std::ostringstream os;
            os << "Assumption 3 violated: front left domain at t = " << t << " (h0 = " << h[i] << ")";
            throw AssumptionViolation(os.str());
        }
    }
    double smax = *std::max_element(hx.begin(), hx.end());
    if (!(smax < 1.0 / s.k)) {
        std::ostringstream os;
        os << "Assumption 3 violated: slope bound at t = " << t << " (max h0_x = " << smax << ", 1/k = " << 1.0 / s.k << ")";
        throw AssumptionViolation(os.str());
    }
}

struct Rhs {
    std::vector<double> dh;
    double max_speed = 0.0;
};

Rhs front_rhs(const ProblemSpec& s, const Grid2D& g, const std::vector<double>& h) {
    const int n = g.n();
    const double d1 = g.d1();
    Rhs r;
    r.dh.assign(n, 0.0);
    std::vector<double> S(n), p(n), c(n);
    for (int i = 0; i < n; ++i) {
        int ip = (i + 1) % n, im = (i + n - 1) % n;
        double x = g.x(i);
        p[i] = (h[ip] - h[im]) / (2 * d1);
        S[i] = eval_phi(s, Side::plus, x, h[i]) + eval_phi(s, Side::minus, x, h[i]);
        double q = 1 + p[i] * p[i];
        c[i] = std::abs(0.5 * S[i] * (s.k + 2 * p[i] - s.k * p[i] * p[i]) / (q * q));
        r.max_speed = std::max(r.max_speed, c[i]);
    }
    for (int i = 0; i < n; ++i) {
        int ip = (i + 1) % n, im = (i + n - 1) % n;
        double flux = 0.5 * (s.k * p[i] - 1) * S[i] / (1 + p[i] * p[i]);
        double nu = c[i] * d1 / 2;
        r.dh[i] = flux + nu * (h[ip] - 2 * h[i] + h[im]) / (d1 * d1);
    }
    return r;
}

}  // namespace

std::vector<double> front_slope(const std::vector<double>& h, double d1) {
    const int n = static_cast<int>(h.size()) - 1;
    std::vector<double> out(n + 1);
    for (int i = 0; i < n; ++i) out[i] = (h[(i + 1) % n] - h[(i + n - 1) % n]) / (2 * d1);
    out[n] = out[0];
    return out;
}

std::vector<double> FrontCurve::h_row(double t) const { return lerp_rows(*this, h, t); }
std::vector<double> FrontCurve::hx_row(double t) const { return lerp_rows(*this, hx, t); }
double FrontCurve::h_at(double x, double t) const { return periodic_lerp(grid, h_row(t), x); }
double FrontCurve::hx_at(double x, double t) const { return periodic_lerp(grid, hx_row(t), x); }

FrontCurve solve_front(const ProblemSpec& spec, const Grid2D& grid, int nt) {
    FrontOptions o;
    o.nt = nt;
    return solve_front(spec, grid, o);
}

FrontCurve solve_front(const ProblemSpec& s, const Grid2D& g, const FrontOptions& opt) {
    if (opt.nt < 1) throw ConfigError("front solver needs nt >= 1");
    if (!(opt.cfl > 0 && opt.cfl <= 1)) throw ConfigError("front cfl must lie in (0, 1]");
    const double T = opt.t_end > 0 ? opt.t_end : s.T;
    std::vector<double> outs;
    for (int i = 0; i <= opt.nt; ++i) outs.push_back(T * i / opt.nt);
    for (double t : opt.extra_times) {
        if (t < 0 || t > T) throw ConfigError("front output time outside [0, T]");
        outs.push_back(t);
    }
    std::sort(outs.begin(), outs.end());
    outs.erase(std::unique(outs.begin(), outs.end(), [T](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, T); }),
               outs.end());

    const int n = g.n();
    const double d1 = g.d1();
    FrontCurve fc;
    fc.grid = g;
    std::vector<double> h(n, s.h0_star);
    auto record = [&](double t) {
        std::vector<double> row(h);
        row.push_back(h[0]);
        auto slope = front_slope(row, d1);
        check_front(s, row, slope, t);
        fc.times.push_back(t);
        fc.h.push_back(std::move(row));
        fc.hx.push_back(std::move(slope));
    };

    double t = 0.0;
    std::size_t next = 0;
    if (outs[0] == 0.0) {
        record(0.0);
        ++next;
    }
    while (next < outs.size()) {
        double target = outs[next];
        Rhs k1 = front_rhs(s, g, h);
        double dt = k1.max_speed > 0 ? opt.cfl * d1 / k1.max_speed : target - t;
        bool land = false;
        if (t + dt >= target - 1e-12 * std::max(1.0, T)) {
            dt = target - t;
            land = true;
        }
        if (!(dt > 1e-14 * std::max(1.0, T)) && !land) {
            std::ostringstream os;
            os << "front solver time step underflow at t = " << t;
            throw NumericalError(os.str());
        }
        std::vector<double> h1(n), h2(n);
        for (int i = 0; i < n; ++i) h1[i] = h[i] + dt * k1.dh[i];
        {
            std::vector<double> row(h1);
            row.push_back(h1[0]);
            check_front(s, row, front_slope(row, d1), t + dt);
        }
        Rhs k2 = front_rhs(s, g, h1);
        for (int i = 0; i < n; ++i) h2[i] = 0.5 * (h[i] + h1[i] + dt * k2.dh[i]);
        h.swap(h2);
        t = land ? target : t + dt;
        ++fc.steps;
        if (land) {
            record(t);
            ++next;
        } else {
            std::vector<double> row(h);
            row.push_back(h[0]);
            check_front(s, row, front_slope(row, d1), t);
        }
    }
    return fc;
}

}  // namespace aer
