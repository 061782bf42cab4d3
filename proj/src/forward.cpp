#include "aer/forward.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

namespace aer {

void SolverConfig::validate(const ProblemSpec& s) const {
    if (!(cfl > 0 && cfl <= 1)) throw ConfigError("cfl must lie in (0, 1]");
    if (!(t_end > 0 && t_end <= s.T * (1 + 1e-12))) throw ConfigError("t_end must lie in (0, T]");
    if (!std::is_sorted(snapshot_times.begin(), snapshot_times.end())) throw ConfigError("snapshot times must be sorted");
    for (double t : snapshot_times)
        if (t < 0 || t > t_end * (1 + 1e-12)) throw ConfigError("snapshot time outside [0, t_end]");
    if (grid.x0() != s.x0 || grid.x1() != s.x1 || grid.a() != s.a) throw ConfigError("solver grid does not cover the problem domain");
}

namespace {

// State on the periodic unknowns: rows j = 0..m, columns i = 0..n-1.
struct Scheme {
    const ProblemSpec& s;
    int n, m;
    double d1, d2;
    std::vector<double> f;
    std::vector<double> fx, fy;  // flux scratch

    Scheme(const ProblemSpec& spec, const Grid2D& g) : s(spec), n(g.n()), m(g.m()), d1(g.d1()), d2(g.d2()) {
        f.resize(static_cast<std::size_t>(n) * (m + 1));
        for (int j = 0; j <= m; ++j)
            for (int i = 0; i < n; ++i) f[at(i, j)] = s.f.eval_checked(g.x(i), g.y(j));
        fx.resize(static_cast<std::size_t>(n));
        fy.resize(static_cast<std::size_t>(n) * m);
    }

    std::size_t at(int i, int j) const { return static_cast<std::size_t>(j) * n + i; }

    double max_dt(const std::vector<double>& u, double cfl) const {
        double umax = 0.0;
        for (double v : u) umax = std::max(umax, std::abs(v));
        double rate = s.k * umax / d1 + umax / d2 + 2 * s.mu * (1 / (d1 * d1) + 1 / (d2 * d2));
        return cfl / rate;
    }

    // Rusanov flux of G(u) = -c u^2 / 2 with wave speed c|u|.
    static double flux(double c, double ul, double ur) {
        double gl = -0.5 * c * ul * ul, gr = -0.5 * c * ur * ur;
        double alpha = c * std::max(std::abs(ul), std::abs(ur));
        return 0.5 * (gl + gr) - 0.5 * alpha * (ur - ul);
    }

    void rhs(const std::vector<double>& u, std::vector<double>& out) {
        std::fill(out.begin(), out.end(), 0.0);
        for (int j = 0; j < m; ++j)
            for (int i = 0; i < n; ++i) fy[at(i, j)] = flux(1.0, u[at(i, j)], u[at(i, j + 1)]);
        const double cx = s.mu / (d1 * d1), cy = s.mu / (d2 * d2);
        for (int j = 1; j < m; ++j) {
            for (int i = 0; i < n; ++i) fx[i] = flux(s.k, u[at(i, j)], u[at((i + 1) % n, j)]);
            for (int i = 0; i < n; ++i) {
                int im = (i + n - 1) % n, ip = (i + 1) % n;
                double c = u[at(i, j)];
                double adv = -(fx[i] - fx[im]) / d1 - (fy[at(i, j)] - fy[at(i, j - 1)]) / d2;
                double dif = cx * (u[at(ip, j)] - 2 * c + u[at(im, j)]) + cy * (u[at(i, j + 1)] - 2 * c + u[at(i, j - 1)]);
                out[at(i, j)] = adv + dif - f[at(i, j)];
            }
        }
    }
};

Field2D to_field(const Grid2D& g, const std::vector<double>& u, double t) {
    Field2D r(g);
    const int n = g.n();
    for (int j = 0; j <= g.m(); ++j) {
        for (int i = 0; i < n; ++i) r(i, j) = u[static_cast<std::size_t>(j) * n + i];
        r(n, j) = r(0, j);
    }
    r.set_time(t);
    return r;
}

}  // namespace

ForwardResult forward_solve(const ProblemSpec& s, const SolverConfig& cfg) {
    return forward_solve(s, cfg, initial_condition(s, cfg.grid, cfg.initial));
}

ForwardResult forward_solve(const ProblemSpec& s, const SolverConfig& cfg, const Field2D& init) {
    cfg.validate(s);
    const Grid2D& g = cfg.grid;
    if (!(init.grid() == g)) throw ConfigError("initial field grid does not match solver grid");
    auto start = std::chrono::steady_clock::now();

    Scheme sc(s, g);
    const int n = g.n(), m = g.m();
    std::vector<double> u(static_cast<std::size_t>(n) * (m + 1));
    for (int j = 0; j <= m; ++j)
        for (int i = 0; i < n; ++i) u[sc.at(i, j)] = init(i, j);
    for (int i = 0; i < n; ++i) {
        u[sc.at(i, 0)] = s.u_minus_a.eval_checked(g.x(i), 0.0);
        u[sc.at(i, m)] = s.u_plus_a.eval_checked(g.x(i), 0.0);
    }

    ForwardResult res;
    std::vector<double> k1(u.size()), u1(u.size()), k2(u.size());
    const double scale = std::max(1.0, cfg.t_end);
    double t = 0.0;
    std::size_t next = 0;
    while (next < cfg.snapshot_times.size() && cfg.snapshot_times[next] <= 1e-14 * scale) {
        res.snapshots.push_back(to_field(g, u, cfg.snapshot_times[next]));
        ++next;
    }
    const double stop = cfg.snapshot_times.empty() ? cfg.t_end : std::max(cfg.snapshot_times.back(), 0.0);

    while (t < stop - 1e-14 * scale) {
        double target = next < cfg.snapshot_times.size() ? cfg.snapshot_times[next] : stop;
        double dt = sc.max_dt(u, cfg.cfl);
        bool land = false;
        if (t + dt >= target - 1e-13 * scale) {
            dt = target - t;
            land = true;
        }
        if (!(dt > 1e-14 * scale) && !land) {
            std::ostringstream os;
            os << "time step underflow at t = " << t;
            throw NumericalError(os.str());
        }
        sc.rhs(u, k1);
        for (std::size_t q = 0; q < u.size(); ++q) u1[q] = u[q] + dt * k1[q];
        sc.rhs(u1, k2);
        for (std::size_t q = 0; q < u.size(); ++q) u[q] = 0.5 * (u[q] + u1[q] + dt * k2[q]);
        t = land ? target : t + dt;
        res.dt_history.push_back(dt);
        ++res.steps;
        for (double v : u)
            if (!std::isfinite(v)) {
                std::ostringstream os;
                os << "solver blow-up at t = " << t;
                throw NumericalError(os.str());
            }
        while (land && next < cfg.snapshot_times.size() && cfg.snapshot_times[next] <= t + 1e-13 * scale) {
            res.snapshots.push_back(to_field(g, u, cfg.snapshot_times[next]));
            ++next;
        }
    }
    res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
}

Field2D restrict_to(const Field2D& fine, const Grid2D& coarse) {
    const Grid2D& g = fine.grid();
    if (g.x0() != coarse.x0() || g.x1() != coarse.x1() || g.a() != coarse.a())
        throw ConfigError("restriction needs grids on the same domain");
    if (g.n() % coarse.n() != 0 || g.m() % coarse.m() != 0) throw ConfigError("fine grid does not refine the coarse grid evenly");
    int rx = g.n() / coarse.n(), ry = g.m() / coarse.m();
    Field2D r(coarse);
    for (int j = 0; j <= coarse.m(); ++j)
        for (int i = 0; i <= coarse.n(); ++i) r(i, j) = fine(i * rx, j * ry);
    r.set_time(fine.time());
    return r;
}

}  // namespace aer
