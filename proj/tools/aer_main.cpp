// aer: batch front-end for the forward solver, the asymptotic construction,
// the source reconstruction and parameter sweeps.

#include "aer/assumptions.hpp"
#include "aer/config.hpp"
#include "aer/errors.hpp"
#include "aer/forward.hpp"
#include "aer/front.hpp"
#include "aer/io.hpp"
#include "aer/layer.hpp"
#include "aer/outer.hpp"
#include "aer/pipeline.hpp"
#include "aer/study.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace aer;

namespace {

const char* kGrammar = R"(Config files are INI-style text:

  # comment            (lines starting with '#' or ';')
  [section]
  key = value

Sections and keys:
  [problem]   mu k x0 x1 a T h0_star t0           numbers
              u_minus_a u_plus_a f                expressions in x, y
              source_extension                    periodic | analytic
  [forward]   n m cfl t_end                       grid and step control
              snapshot_times                      comma list (may be empty)
              initial                             asymptotic | tanh
  [asymptote] n m nt first_order                  first_order: true | false
  [inverse]   n m refine cfl initial front_nt delta seed
              noise                               uniform | gaussian
              mask                                global
              gradient_measured                   true | false
              smoothing_rule                      noise_level | delta4 | fixed
              smoothing_tolerance smoothing_eps
  [study]     delta mu grid seeds                 comma lists
              mu_pipeline workers

Expressions: numbers, x, y, pi, + - * / ^, unary minus, parentheses and
sin cos tan tanh exp ln sqrt abs. A preset supplies every key; the file
overrides individual keys.

Exit status: 0 success, 2 assumption violation, 3 numerical failure,
4 config or file error. AER_MAX_WORKERS caps study threads.)";

struct Common {
    std::string config;
    std::string out;
    std::string preset;
    std::optional<std::uint64_t> seed;
};

RunConfig resolve(const Common& c) {
    RunConfig cfg = load_config(c.config, c.preset);
    if (c.seed) {
        cfg.inverse.seed = *c.seed;
        cfg.study.seeds = {*c.seed};
    }
    std::error_code ec;
    fs::create_directories(c.out, ec);
    if (ec) throw ConfigError("cannot create output directory '" + c.out + "': " + ec.message());
    return cfg;
}

std::string path(const Common& c, const std::string& name) { return (fs::path(c.out) / name).string(); }

json report_json(const AssumptionReport& r) {
    return {{"name", r.name}, {"passed", r.passed}, {"violations", r.violations}, {"margins", r.margins}};
}

std::string time_tag(double t) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", t);
    return buf;
}

void cmd_forward(const Common& c) {
    RunConfig cfg = resolve(c);
    const ProblemSpec& s = cfg.problem;
    SolverConfig sc;
    sc.grid = s.grid(cfg.forward.n, cfg.forward.m);
    sc.cfl = cfg.forward.cfl;
    sc.snapshot_times = cfg.forward.snapshot_times;
    sc.initial = cfg.forward.initial;
    if (cfg.forward.t_end > 0) sc.t_end = cfg.forward.t_end;
    else sc.t_end = sc.snapshot_times.empty() ? s.T : sc.snapshot_times.back();
    ForwardResult r = forward_solve(s, sc);

    json files = json::array();
    for (const Field2D& snap : r.snapshots) {
        double t = snap.time().value_or(0.0);
        std::string name = "u_t" + time_tag(t) + ".csv";
        write_file_atomic(path(c, name), field_csv(snap));
        files.push_back({{"time", t}, {"file", name}});
    }
    json summary{{"config", to_json(cfg)},
                 {"seed", cfg.inverse.seed},
                 {"steps", r.steps},
                 {"wall_seconds", r.wall_seconds},
                 {"dt_history", r.dt_history},
                 {"snapshots", files}};
    write_json(path(c, "summary.json"), summary);
}

void cmd_asymptote(const Common& c) {
    RunConfig cfg = resolve(c);
    const ProblemSpec& s = cfg.problem;
    AssumptionReport a1 = check_assumption1(s);
    AssumptionReport a2 = check_assumption2(s);
    json report{{"config", to_json(cfg)}, {"seed", cfg.inverse.seed}, {"warnings", s.warnings()}};
    report["assumptions"] = {report_json(a1), report_json(a2)};
    write_json(path(c, "assumptions.json"), report);
    for (const auto* r : {&a1, &a2})
        if (!r->passed) {
            std::string msg = r->name + " violated";
            for (const auto& v : r->violations) msg += "\n  " + v;
            throw AssumptionViolation(msg);
        }

    Grid2D g = s.grid(cfg.asymptote.n, cfg.asymptote.m);
    write_file_atomic(path(c, "phi_minus.csv"), field_csv(phi_field(s, Side::minus, g)));
    write_file_atomic(path(c, "phi_plus.csv"), field_csv(phi_field(s, Side::plus, g)));

    FrontOptions fo;
    fo.nt = cfg.asymptote.nt;
    fo.extra_times = {s.t0};
    FrontCurve front;
    try {
        front = solve_front(s, g, fo);
    } catch (const AssumptionViolation& e) {
        report["front"] = {{"passed", false}, {"violation", e.what()}};
        write_json(path(c, "assumptions.json"), report);
        throw;
    }
    report["front"] = {{"passed", true}, {"steps", front.steps}};
    write_file_atomic(path(c, "front.csv"), front_csv(front));

    std::string width = "x,h0,h0x,xi_minus,xi_plus,width\n";
    for (int i = 0; i <= g.n(); ++i) {
        double x = g.x(i), h = front.h_at(x, s.t0), hx = front.hx_at(x, s.t0);
        LayerWidth w = transition_width(s, x, h, hx);
        width += format_double(x) + "," + format_double(h) + "," + format_double(hx) + "," + format_double(w.xi_minus) +
                 "," + format_double(w.xi_plus) + "," + format_double(w.width) + "\n";
    }
    write_file_atomic(path(c, "width.csv"), width);

    Field2D u0 = assemble_u0(s, front, g, s.t0);
    write_file_atomic(path(c, "u0.csv"), field_csv(u0));
    if (cfg.asymptote.first_order) {
        write_file_atomic(path(c, "u1_minus.csv"), field_csv(u1_field(s, Side::minus, g)));
        write_file_atomic(path(c, "u1_plus.csv"), field_csv(u1_field(s, Side::plus, g)));
    }
    write_json(path(c, "assumptions.json"), report);
}

void cmd_invert(const Common& c) {
    RunConfig cfg = resolve(c);
    const ProblemSpec& s = cfg.problem;
    PipelineResult r = run_aer_pipeline(s, cfg.inverse);
    const Grid2D& g = r.obs.grid;

    write_file_atomic(path(c, "u_delta.csv"), field_csv(r.obs.u_delta));
    write_file_atomic(path(c, "f_delta.csv"), field_csv(r.recon.f_delta));
    json metrics{{"rel_err_u0", r.rel_err_u0},
                 {"rel_err_f", r.rel_err_f},
                 {"eps_f", r.recon.eps},
                 {"m_minus", r.obs.mask.j_lo},
                 {"m_plus", r.obs.mask.j_hi},
                 {"seed", cfg.inverse.seed},
                 {"branch", r.branch},
                 {"config", to_json(cfg)}};
    if (r.smoothing) {
        for (const auto* reg : {&r.smoothing->lower, &r.smoothing->upper}) {
            std::string name = reg->side == Side::minus ? "u_eps_lower.csv" : "u_eps_upper.csv";
            write_file_atomic(path(c, name),
                              field_csv(g, reg->rows.j_begin, reg->rows.j_end, region_values(g, *reg, reg->v)));
        }
        metrics["eps_minus"] = r.smoothing->lower.eps;
        metrics["eps_plus"] = r.smoothing->upper.eps;
        metrics["misfit_minus"] = r.smoothing->lower.misfit;
        metrics["misfit_plus"] = r.smoothing->upper.misfit;
    } else {
        metrics["eps_minus"] = nullptr;
        metrics["eps_plus"] = nullptr;
    }
    write_json(path(c, "metrics.json"), metrics);
}

void cmd_study(const Common& c) {
    RunConfig cfg = resolve(c);
    int workers = effective_workers(cfg.study.workers);
    StudyResult r = run_study(cfg, workers);
    write_file_atomic(path(c, "study.csv"), study_csv(r));
    json fits = json::array();
    for (const auto& f : r.fits)
        fits.push_back({{"axis", f.axis}, {"quantity", f.quantity}, {"slope", f.slope}, {"points", f.points}});
    write_json(path(c, "study.json"),
               {{"config", to_json(cfg)}, {"seeds", cfg.study.seeds}, {"workers", workers}, {"runs", r.rows.size()}, {"fits", fits}});
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Interior-layer asymptotics and source reconstruction"};
    app.footer(kGrammar);
    app.require_subcommand(1);

    Common common;
    struct Entry {
        const char* name;
        const char* help;
        void (*run)(const Common&);
    };
    const Entry entries[] = {
        {"forward", "finite-volume solve; writes snapshot CSVs and summary.json", cmd_forward},
        {"asymptote", "outer functions, front, layer width, U0 and assumption report", cmd_asymptote},
        {"invert", "noisy data, smoothing and source reconstruction with metrics.json", cmd_invert},
        {"study", "sweeps over delta, mu, grid and seeds; study.csv and study.json", cmd_study},
    };
    std::uint64_t seed = 0;
    std::vector<std::pair<CLI::App*, const Entry*>> subs;
    for (const auto& e : entries) {
        CLI::App* sub = app.add_subcommand(e.name, e.help);
        sub->add_option("--config", common.config, "config file");
        sub->add_option("--out", common.out, "output directory")->required();
        sub->add_option("--preset", common.preset, "example1 | example2")->check(CLI::IsMember({"example1", "example2"}));
        sub->add_option("--seed", seed, "noise seed override");
        subs.emplace_back(sub, &e);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : exit_status(ErrorKind::config);
    }

    for (auto& [sub, e] : subs) {
        if (!sub->parsed()) continue;
        if (sub->count("--seed")) common.seed = seed;
        try {
            e->run(common);
            return 0;
        } catch (const Error& err) {
            std::cerr << "aer " << e->name << ": " << to_string(err.kind()) << " error: " << err.what() << "\n";
            return exit_status(err.kind());
        } catch (const std::exception& err) {
            std::cerr << "aer " << e->name << ": numerical error: " << err.what() << "\n";
            return exit_status(ErrorKind::numerical);
        }
    }
    return exit_status(ErrorKind::config);
}
