#include "aer/study.hpp"

#include "aer/io.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

namespace aer {

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw ConfigError("slope fit needs at least two points");
    double n = static_cast<double>(x.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0 && y[i] > 0)) throw NumericalError("slope fit needs positive data");
        double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    double den = n * sxx - sx * sx;
    if (den == 0) throw NumericalError("slope fit with identical abscissae");
    return (n * sxy - sx * sy) / den;
}

void run_parallel(std::vector<std::function<void()>>& tasks, int workers) {
    std::atomic<std::size_t> next{0};
    std::exception_ptr first;
    std::mutex mu;
    auto worker = [&] {
        for (;;) {
            std::size_t i = next++;
            if (i >= tasks.size()) return;
            try {
                tasks[i]();
            } catch (...) {
                std::lock_guard lock(mu);
                if (!first) first = std::current_exception();
            }
        }
    };
    int w = std::max(1, std::min<int>(workers, static_cast<int>(tasks.size())));
    if (w == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int i = 0; i < w; ++i) pool.emplace_back(worker);
    }
    if (first) std::rethrow_exception(first);
}

namespace {

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// One pipeline run recorded into `row`; pipeline failures become a status, not an abort.
void pipeline_row(const ProblemSpec& spec, const PipelineConfig& pc, const Truth* truth, StudyRow& row) {
    try {
        PipelineResult r = truth ? invert(spec, pc, *truth) : run_aer_pipeline(spec, pc);
        row.rel_err_f = r.rel_err_f;
        row.rel_err_u0 = r.rel_err_u0;
    } catch (const Error& e) {
        row.status = e.what();
    }
}

void fit_axis(StudyResult& res, const std::string& axis, const std::string& quantity, double StudyRow::*xkey,
              double StudyRow::*ykey) {
    std::map<double, std::vector<double>> groups;
    for (const auto& r : res.rows)
        if (r.axis == axis && r.status == "ok" && r.*ykey > 0) groups[r.*xkey].push_back(r.*ykey);
    if (groups.size() < 2) return;
    std::vector<double> xs, ys;
    for (auto& [x, v] : groups) {
        xs.push_back(x);
        ys.push_back(median(v));
    }
    res.fits.push_back({axis, quantity, loglog_slope(xs, ys), static_cast<int>(xs.size())});
}

}  // namespace

StudyResult run_study(const RunConfig& cfg, int workers) {
    StudyResult res;
    const ProblemSpec& spec = cfg.problem;
    const auto& st = cfg.study;

    if (!st.delta.empty()) {
        Truth truth = simulate_truth(spec, cfg.inverse);
        std::vector<StudyRow> rows;
        for (double d : st.delta)
            for (auto seed : st.seeds) {
                StudyRow r;
                r.axis = "delta";
                r.delta = d;
                r.mu = spec.mu;
                r.n = cfg.inverse.n;
                r.seed = seed;
                rows.push_back(r);
            }
        std::vector<std::function<void()>> tasks;
        for (auto& r : rows)
            tasks.push_back([&, rp = &r] {
                PipelineConfig pc = cfg.inverse;
                pc.delta = rp->delta;
                pc.seed = rp->seed;
                pipeline_row(spec, pc, &truth, *rp);
            });
        run_parallel(tasks, workers);
        res.rows.insert(res.rows.end(), rows.begin(), rows.end());
        fit_axis(res, "delta", "rel_err_f", &StudyRow::delta, &StudyRow::rel_err_f);
    }

    if (!st.mu.empty()) {
        std::vector<StudyRow> rows;
        for (double mu : st.mu) {
            StudyRow r;
            r.axis = "mu";
            r.mu = mu;
            r.delta = cfg.inverse.delta;
            r.n = cfg.inverse.n;
            r.seed = st.seeds.front();
            rows.push_back(r);
        }
        std::vector<std::function<void()>> tasks;
        for (auto& r : rows)
            tasks.push_back([&, rp = &r] {
                ProblemSpec s = spec;
                s.mu = rp->mu;
                try {
                    Grid2D g = cfg.inverse.observation_grid(s);
                    FrontOptions fo;
                    fo.nt = cfg.inverse.front_nt;
                    fo.extra_times = {s.t0};
                    fo.t_end = s.t0;
                    FrontCurve fc = solve_front(s, g, fo);
                    double x = 0.5 * (s.x0 + s.x1);
                    if (s.x0 < 0 && s.x1 > 0) x = 0.0;
                    rp->width = transition_width(s, x, fc.h_at(x, s.t0), fc.hx_at(x, s.t0)).width;
                    rp->width_ratio = rp->width / (rp->mu * std::abs(std::log(rp->mu)));
                } catch (const Error& e) {
                    rp->status = e.what();
                    return;
                }
                if (st.mu_pipeline) pipeline_row(s, cfg.inverse, nullptr, *rp);
            });
        run_parallel(tasks, workers);
        res.rows.insert(res.rows.end(), rows.begin(), rows.end());
        fit_axis(res, "mu", "width", &StudyRow::mu, &StudyRow::width);
        if (st.mu_pipeline) fit_axis(res, "mu", "rel_err_f", &StudyRow::mu, &StudyRow::rel_err_f);
    }

    if (!st.grid.empty()) {
        std::vector<StudyRow> rows;
        for (int n : st.grid)
            for (auto seed : st.seeds) {
                StudyRow r;
                r.axis = "grid";
                r.n = n;
                r.mu = spec.mu;
                r.delta = cfg.inverse.delta;
                r.seed = seed;
                rows.push_back(r);
            }
        std::map<int, Truth> truths;
        std::map<int, std::string> failures;
        std::vector<std::function<void()>> prep;
        for (int n : st.grid) truths[n];
        for (auto& [n, t] : truths)
            prep.push_back([&, n = n, tp = &t] {
                PipelineConfig pc = cfg.inverse;
                pc.n = pc.m = n;
                try {
                    *tp = simulate_truth(spec, pc);
                } catch (const Error& e) {
                    failures[n] = e.what();
                }
            });
        run_parallel(prep, 1);
        std::vector<std::function<void()>> tasks;
        for (auto& r : rows)
            tasks.push_back([&, rp = &r] {
                if (failures.count(rp->n)) {
                    rp->status = failures[rp->n];
                    return;
                }
                PipelineConfig pc = cfg.inverse;
                pc.n = pc.m = rp->n;
                pc.seed = rp->seed;
                pipeline_row(spec, pc, &truths.at(rp->n), *rp);
            });
        run_parallel(tasks, workers);
        res.rows.insert(res.rows.end(), rows.begin(), rows.end());
        // Slope against mesh size d = L / n.
        std::map<double, std::vector<double>> groups;
        for (const auto& r : res.rows)
            if (r.axis == "grid" && r.status == "ok" && r.rel_err_f > 0) groups[spec.length() / r.n].push_back(r.rel_err_f);
        if (groups.size() >= 2) {
            std::vector<double> xs, ys;
            for (auto& [d, v] : groups) {
                xs.push_back(d);
                ys.push_back(median(v));
            }
            res.fits.push_back({"grid", "rel_err_f", loglog_slope(xs, ys), static_cast<int>(xs.size())});
        }
    }
    return res;
}

std::string study_csv(const StudyResult& r) {
    std::string out = "axis,delta,mu,n,seed,rel_err_f,rel_err_u0,width,width_ratio,status\n";
    for (const auto& row : r.rows) {
        std::string status = row.status;
        std::replace(status.begin(), status.end(), ',', ';');
        std::replace(status.begin(), status.end(), '\n', ' ');
        out += row.axis + "," + format_double(row.delta) + "," + format_double(row.mu) + "," + std::to_string(row.n) + "," +
               std::to_string(row.seed) + "," + format_double(row.rel_err_f) + "," + format_double(row.rel_err_u0) + "," +
               format_double(row.width) + "," + format_double(row.width_ratio) + ",\"" + status + "\"\n";
    }
    return out;
}

}  // namespace aer
