// sffdl: command-line front end. Every subcommand reads one JSON config file,
// applies flag overrides, resolves a scale preset, writes CSV data with JSON
// sidecars and a gnuplot script into the output directory, and records the
// fully resolved configuration in a manifest.
//
// Exit codes: 0 success, 2 config error, 3 resource guard, 4 numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "sffdl/diffusion.hpp"
#include "sffdl/exact_diag.hpp"
#include "sffdl/io.hpp"
#include "sffdl/master_obs.hpp"
#include "sffdl/parallel.hpp"
#include "sffdl/presets.hpp"
#include "sffdl/twosite.hpp"

using nlohmann::json;
using namespace sffdl;
namespace fs = std::filesystem;

namespace {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct GuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunContext {
    std::string subcommand;
    json cfg;            // resolved configuration (config file + overrides)
    Scale scale = Scale::smoke;
    uint64_t seed = 1;
    int workers = 1;
    fs::path out;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

    double elapsed() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }

    fs::path path(const std::string& name) const { return out / name; }

    void sidecar(const std::string& csv_name, json extra) const {
        extra["csv"] = csv_name;
        extra["subcommand"] = subcommand;
        extra["seed"] = seed;
        extra["scale"] = cfg.at("scale");
        extra["wall_time_s"] = elapsed();
        std::ofstream f(path(fs::path(csv_name).stem().string() + ".json"));
        f << extra.dump(2) << "\n";
    }

    void manifest() const {
        json m;
        m["subcommand"] = subcommand;
        m["config"] = cfg;
        m["workers"] = workers;
        m["output_dir"] = out.string();
        m["wall_time_s"] = elapsed();
        std::ofstream f(path("manifest.json"));
        f << m.dump(2) << "\n";
    }
};

template <class T>
T cfg_get(const json& j, const std::string& key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError("config key '" + key + "': " + e.what());
    }
}

void write_script(const RunContext& ctx, const std::string& name, const std::string& body) {
    std::ofstream f(ctx.path(name));
    f << "# gnuplot script, generated by sffdl " << ctx.subcommand
      << "; plotting is optional and never required by the pipeline\n"
      << "set datafile commentschars '#'\n"
      << body;
}

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// ---- twosite ----------------------------------------------------------------

void cmd_twosite(RunContext& ctx) {
    json& c = ctx.cfg["twosite"];
    int N = 32;
    long n_real = 50;
    std::vector<double> lambdas = {0.1};
    switch (ctx.scale) {
        case Scale::smoke: break;
        case Scale::desk: N = 64; n_real = 200; break;
        case Scale::paper: N = 130; n_real = 500; lambdas = {0.1, 0.05}; break;
    }
    N = cfg_get(c, "N", N);
    n_real = cfg_get(c, "n_realizations", n_real);
    lambdas = cfg_get(c, "lambdas", lambdas);
    c = {{"N", N}, {"n_realizations", n_real}, {"lambdas", lambdas}};
    if (N < 2 || n_real < 1 || lambdas.empty()) throw ConfigError("twosite: bad parameters");

    for (double lambda : lambdas) {
        TwoSiteEnsembleSpec spec;
        spec.N = N;
        spec.lambda = lambda;
        spec.master_seed = ctx.seed;
        spec.sff_times = logspace(0.5, 3e4, ctx.scale == Scale::smoke ? 120 : 300);
        spec.corr_times = linspace(0.0, 5.0 / (lambda * lambda), 51);
        const TwoSiteParams params{N, lambda};
        if (!params.in_regime())
            std::fprintf(stderr,
                         "warning: (N, lambda) = (%d, %g) is outside the perturbative window "
                         "1/N << lambda << N^-1/4; analytic overlays may not apply\n",
                         N, lambda);
        const auto cache = cache_dir() / ("cli_twosite_N" + std::to_string(N) + "_" +
                                          std::to_string(spec.hash()) + ".acc");
        std::fprintf(stderr, "twosite: N = %d lambda = %g, %ld realizations\n", N, lambda,
                     n_real);
        const auto set = run_twosite_ensemble(spec, n_real, cache, ctx.workers, 5, [](long n) {
            if (n % 10 == 0) std::fprintf(stderr, "  realization %ld\n", n);
        });
        const std::string tag = "lambda" + num(lambda);

        write_curve_csv(ctx.path("ed_sff_" + tag + ".csv"),
                        curve_from_accum(set, "K", spec.sff_times), "K");
        ctx.sidecar("ed_sff_" + tag + ".csv",
                    {{"N", N}, {"lambda", lambda}, {"n_realizations", set.n_done}});

        for (auto regime : {TwoSiteRegime::early, TwoSiteRegime::late, TwoSiteRegime::crossover}) {
            const auto curve = k_two_site_curve(spec.sff_times, params, regime);
            write_curve_csv(ctx.path("analytic_sff_" + curve.label + "_" + tag + ".csv"), curve,
                            "K");
        }

        const auto c11 = curve_from_accum(set, "C11", spec.corr_times);
        const auto c12 = curve_from_accum(set, "C12", spec.corr_times);
        std::vector<std::vector<double>> rows;
        for (std::size_t i = 0; i < c11.size(); ++i) {
            const double t = c11.times[i];
            rows.push_back({t, c11.values[i], c11.stderrs[i], c11_pred(t, lambda),
                            c12.values[i], c12.stderrs[i], c12_pred(t, lambda)});
        }
        write_csv(ctx.path("correlators_" + tag + ".csv"),
                  {"t", "C11", "C11_stderr", "C11_pred", "C12", "C12_stderr", "C12_pred"}, rows);
        ctx.sidecar("correlators_" + tag + ".csv",
                    {{"N", N}, {"lambda", lambda}, {"n_realizations", set.n_done}});
    }

    const std::string tag0 = "lambda" + num(lambdas[0]);
    write_script(ctx, "plot_twosite.gp",
                 "set terminal pngcairo size 1400,900\nset output 'twosite.png'\n"
                 "set multiplot layout 2,3\nset log xy\nset xlabel 't'\nset ylabel 'K'\n"
                 "plot 'ed_sff_" + tag0 + ".csv' u 1:2 w l t 'ED', "
                 "'analytic_sff_early_" + tag0 + ".csv' u 1:2 w l t 'early', "
                 "'analytic_sff_late_" + tag0 + ".csv' u 1:2 w l t 'late', "
                 "'analytic_sff_crossover_" + tag0 + ".csv' u 1:2 w l t 'crossover'\n"
                 "unset log\nset xlabel 't'\nset ylabel 'C'\n"
                 "plot 'correlators_" + tag0 + ".csv' u 1:2 w e t 'C11', '' u 1:4 w l t 'C11 "
                 "pred', '' u 1:5 w e t 'C12', '' u 1:7 w l t 'C12 pred'\n"
                 "plot 'correlators_" + tag0 + ".csv' u 1:($2+$5) w l t 'C11+C12'\n"
                 "unset multiplot\n");
}

// ---- master-equation ensemble helpers ---------------------------------------

MasterEnsembleResult run_master(RunContext& ctx) {
    json& c = ctx.cfg["master"];
    SimSpec spec;
    long n_traj = 2000;
    spec.t_max = 60.0;
    switch (ctx.scale) {
        case Scale::smoke: spec.L = 16; spec.t_max = 20.0; break;
        case Scale::desk: spec.L = 32; n_traj = 200000; break;
        case Scale::paper: spec.L = 48; n_traj = 10000000; break;
    }
    spec.L = cfg_get(c, "L", spec.L);
    spec.t_max = cfg_get(c, "t_max", spec.t_max);
    spec.periodic = cfg_get(c, "periodic", false);
    n_traj = cfg_get(c, "n_trajectories", n_traj);
    spec.n_trajectories = n_traj;
    spec.master_seed = ctx.seed;
    spec.observation_times =
        linspace(0.0, spec.t_max, cfg_get(c, "n_observation_times", 31));
    c = {{"L", spec.L}, {"t_max", spec.t_max}, {"periodic", spec.periodic},
         {"n_trajectories", n_traj},
         {"n_observation_times", (int)spec.observation_times.size()}};
    if (spec.L < 2 || n_traj < 1 || spec.t_max <= 0.0)
        throw ConfigError("master: bad parameters");
    const auto cache = cache_dir() / ("cli_master_L" + std::to_string(spec.L) + "_" +
                                      std::to_string(spec.hash("sim")) + ".acc");
    std::fprintf(stderr, "master ensemble: L = %d, %ld trajectories\n", spec.L, n_traj);
    return run_master_ensemble(spec, default_w_times(), n_traj, cache, ctx.workers, 20000,
                               [](long n) {
                                   if (n % 100000 == 0)
                                       std::fprintf(stderr, "  trajectory %ld\n", n);
                               });
}

void write_c0x(const RunContext& ctx, const MasterEnsembleResult& res) {
    std::vector<std::vector<double>> rows, collapse;
    for (std::size_t i = 0; i < res.obs_times.size(); ++i) {
        const double t = res.obs_times[i];
        for (int n = 0; n < res.L; ++n) {
            rows.push_back({t, double(n), res.c0x(i, n), res.c0x_stderr(i, n)});
            if (t > 0.0) {
                const double x = n - res.L / 2;
                collapse.push_back(
                    {x / std::sqrt(t), std::sqrt(t) * res.c0x(i, n), t});
            }
        }
    }
    write_csv(ctx.path("c0x.csv"), {"t", "x", "C", "C_stderr"}, rows);
    write_csv(ctx.path("collapse.csv"), {"x_over_sqrt_t", "sqrt_t_C", "t"}, collapse);
}

void cmd_collapse(RunContext& ctx) {
    const auto res = run_master(ctx);
    write_c0x(ctx, res);
    ctx.sidecar("c0x.csv", {{"L", res.L}, {"n_trajectories", res.n()},
                            {"mean_events", res.mean_events()}});
    const double t_hi = res.obs_times.back() * 5.0 / 6.0;
    const auto fit = collapse_check(res, 10.0, t_hi);
    const auto dts = d_of_t(res);
    write_curve_csv(ctx.path("d_of_t.csv"), dts, "D");
    ctx.sidecar("d_of_t.csv", {{"collapse_D", fit.D},
                               {"collapse_max_residual", fit.max_residual},
                               {"fit_window", {10.0, t_hi}}});
    std::printf("collapse: D/lambda^2 = %.4f (max residual %.3f of peak)\n", fit.D,
                fit.max_residual);
    write_script(ctx, "plot_collapse.gp",
                 "set terminal pngcairo size 1000,450\nset output 'collapse.png'\n"
                 "set multiplot layout 1,2\nset xlabel 'x'\nset ylabel 'C0x'\n"
                 "plot 'c0x.csv' u 2:($1 > 0 ? $3 : 1/0) w p pt 7 ps 0.3 t 'data'\n"
                 "set xlabel 'x/sqrt(t)'\nset ylabel 'sqrt(t) C'\n"
                 "D = " + num(fit.D) + "\n"
                 "plot 'collapse.csv' u 1:2 w p pt 7 ps 0.3 t 'data', "
                 "exp(-x*x/(4*D))/sqrt(4*pi*D) w l lw 2 t 'diffusive fit'\n"
                 "unset multiplot\n");
}

void cmd_wt(RunContext& ctx) {
    const auto res = run_master(ctx);
    const auto w = res.w_curve();
    write_curve_csv(ctx.path("wt.csv"), w, "w");
    const double early = w_early_rate(w);
    const auto wf = fit_w_late(w, cfg_get(ctx.cfg["master"], "w_fit_t_lo", 10.0));
    json fits = {{"early_rate", early},
                 {"early_rate_prediction", gamma_bar(1.0)},
                 {"n_trajectories", res.n()}};
    if (wf.ok) {
        fits["stretched_A"] = wf.A;
        fits["stretched_b"] = wf.b;
        fits["fit_window"] = {wf.window_lo, wf.window_hi};
    }
    ctx.sidecar("wt.csv", fits);
    if (!wf.alpha.times.empty()) {
        std::vector<std::vector<double>> rows;
        for (std::size_t i = 0; i < wf.alpha.size(); ++i)
            rows.push_back({wf.alpha.times[i], wf.alpha.values[i]});
        write_csv(ctx.path("alpha.csv"), {"t", "alpha"}, rows);
    }
    std::printf("wt: early rate = %.4f lambda^2 (prediction %.4f)", early, gamma_bar(1.0));
    if (wf.ok) std::printf(", stretched fit A = %.3f b = %.3f", wf.A, wf.b);
    std::printf("\n");
    std::string body =
        "set terminal pngcairo size 900,600\nset output 'wt.png'\nset log y\n"
        "set xlabel 't (lambda^2 units)'\nset ylabel 'w'\n"
        "g = " + num(gamma_bar(1.0)) + "\n";
    if (wf.ok)
        body += "A = " + num(wf.A) + "\nb = " + num(wf.b) +
                "\nplot 'wt.csv' u 1:2:3 w e t 'data', exp(-g*x) t 'early exponential', "
                "A*exp(-b*sqrt(x)) t 'stretched fit'\n";
    else
        body += "plot 'wt.csv' u 1:2:3 w e t 'data', exp(-g*x) t 'early exponential'\n";
    write_script(ctx, "plot_wt.gp", body);
}

void cmd_dconst(RunContext& ctx) {
    const auto res = run_master(ctx);
    const auto dts = d_of_t(res);
    write_curve_csv(ctx.path("d_of_t.csv"), dts, "D");
    const auto golden = d_golden_rule();
    const auto moment = d_moment_matrix();
    ctx.sidecar("d_of_t.csv", {{"n_trajectories", res.n()},
                               {"reference_golden_rule", golden.D_over_lambda2},
                               {"reference_moment_matrix", moment.D_over_lambda2},
                               {"reference_moment_uncertainty", moment.uncertainty}});
    std::printf("dconst: references %.4f (golden rule), %.4f (moment closure)\n",
                golden.D_over_lambda2, moment.D_over_lambda2);
    write_script(ctx, "plot_dconst.gp",
                 "set terminal pngcairo size 900,600\nset output 'dconst.png'\n"
                 "set xlabel 't (lambda^2 units)'\nset ylabel 'D(t)/lambda^2'\n"
                 "plot 'd_of_t.csv' u 1:2:3 w e t 'D(t)', " + num(golden.D_over_lambda2) +
                 " t 'golden rule', " + num(moment.D_over_lambda2) + " t 'moment closure'\n");
}

// ---- spin chains ------------------------------------------------------------

void cmd_spinchain(RunContext& ctx) {
    json& c = ctx.cfg["spinchain"];
    std::vector<int> L_list = {8, 10, 12};
    long n_real = 20;
    switch (ctx.scale) {
        case Scale::smoke: L_list = {6, 8}; break;
        case Scale::desk: n_real = 100; break;
        case Scale::paper: n_real = 500; break;
    }
    L_list = cfg_get(c, "L_list", L_list);
    n_real = cfg_get(c, "n_realizations", n_real);
    c = {{"L_list", L_list}, {"n_realizations", n_real}};
    SpinChainSpec guard;
    for (int L : L_list)
        if (L < 2 || L > guard.L_guard)
            throw GuardError("spinchain: L = " + std::to_string(L) + " outside guard [2, " +
                             std::to_string(guard.L_guard) + "]");
    std::string plots_a, plots_b;
    for (int L : L_list)
        for (bool periodic : {false, true}) {
            SpinChainEnsembleSpec spec;
            spec.chain.L = L;
            spec.chain.periodic = periodic;
            spec.master_seed = ctx.seed;
            spec.times = logspace(0.05, 5000.0, ctx.scale == Scale::smoke ? 80 : 220);
            const std::string tag =
                "L" + std::to_string(L) + (periodic ? "_pbc" : "_obc");
            const auto cache = cache_dir() /
                               ("cli_spin_" + tag + "_" + std::to_string(spec.hash()) + ".acc");
            std::fprintf(stderr, "spinchain: %s, %ld realizations\n", tag.c_str(), n_real);
            const auto set = run_spinchain_ensemble(spec, n_real, cache, ctx.workers, 50);
            write_curve_csv(ctx.path("spin_sff_" + tag + ".csv"),
                            curve_from_accum(set, "K", spec.times), "K");
            ctx.sidecar("spin_sff_" + tag + ".csv",
                        {{"L", L}, {"periodic", periodic}, {"n_realizations", set.n_done}});
            const std::string style = periodic ? "dt 2" : "";
            const std::string piece = "'spin_sff_" + tag + ".csv' u 1:2 w l " + style + " t '" +
                                      tag + "'";
            plots_a += (plots_a.empty() ? "" : ", ") + piece;
            plots_b += (plots_b.empty() ? "" : ", ") + piece;
        }
    write_script(ctx, "plot_spinchain.gp",
                 "set terminal pngcairo size 1100,450\nset output 'spinchain.png'\n"
                 "set multiplot layout 1,2\nset log xy\nset xlabel 't'\nset ylabel 'K'\n"
                 "set xrange [0.05:100]\nplot " + plots_a + "\n"
                 "set xrange [*:*]\nplot " + plots_b + "\n"
                 "unset multiplot\n");
}

// ---- coupled-subsystem SFF model --------------------------------------------

void cmd_sffmodel(RunContext& ctx) {
    json& c = ctx.cfg["sffmodel"];
    std::vector<int> L_list = {8, 16, 32, 64, 128, 256, 512, 1024};
    L_list = cfg_get(c, "L_list", L_list);
    std::string source = cfg_get<std::string>(c, "w_source", "closed_form");
    double A = cfg_get(c, "A", 1.0);
    double b = cfg_get(c, "b", 1.214);  // matches the early exponential at small t
    if (source == "measured") {
        // fit the stretched exponential to a measured survival curve
        const auto res = run_master(ctx);
        const auto wf = fit_w_late(res.w_curve(), cfg_get(ctx.cfg["master"], "w_fit_t_lo", 10.0));
        if (!wf.ok) throw std::runtime_error("sffmodel: stretched-exponential fit failed");
        A = wf.A;
        b = wf.b;
    } else if (source != "closed_form") {
        throw ConfigError("sffmodel: w_source must be 'measured' or 'closed_form'");
    }
    c = {{"L_list", L_list}, {"w_source", source}, {"A", A}, {"b", b}};
    if (L_list.empty() || A <= 0.0 || b <= 0.0) throw ConfigError("sffmodel: bad parameters");

    const auto wfun = [&](double t) {
        return std::min(1.0, A * std::exp(-b * std::sqrt(t)));
    };
    std::vector<std::vector<double>> trows;
    std::vector<double> xs, ys;
    std::string plots;
    for (int L : L_list) {
        const auto times = logspace(1e-3, 1e3, 200);
        const auto K = sff_model_kw(times, L, wfun, PrefactorMode::match_late_ramp);
        const std::string name = "model_sff_L" + std::to_string(L) + ".csv";
        write_curve_csv(ctx.path(name), K, "K");
        const double ts = t_star_stretched(L, A, b);
        const double lnl = std::log(double(L));
        trows.push_back({double(L), ts});
        xs.push_back(lnl * lnl);
        ys.push_back(ts);
        plots += (plots.empty() ? "" : ", ") + ("'" + name + "' u 1:2 w l t 'L=" +
                                                std::to_string(L) + "'");
    }
    const auto fit = linear_fit(xs, ys);
    write_csv(ctx.path("tstar.csv"), {"L", "t_star"}, trows);
    ctx.sidecar("tstar.csv", {{"A", A}, {"b", b}, {"fit_a", fit.a}, {"fit_c", fit.b},
                              {"fit_form", "t_star = a + c (ln L)^2"}});
    std::printf("sffmodel: t* fit a = %.3f, c = %.3f (A = %.3f, b = %.3f)\n", fit.a, fit.b, A,
                b);
    write_script(ctx, "plot_sffmodel.gp",
                 "set terminal pngcairo size 1100,450\nset output 'sffmodel.png'\n"
                 "set multiplot layout 1,2\nset log xy\nset xlabel 't'\nset ylabel 'K'\n"
                 "L0 = " + std::to_string(L_list.front()) + "\n"
                 "plot " + plots + ", (2*L0/pi)*x t 'single ramp' lc 'black' dt 3\n"
                 "unset log\nset xlabel '(ln L)**2'\nset ylabel 't*'\n"
                 "a = " + num(fit.a) + "\nc = " + num(fit.b) + "\n"
                 "plot 'tstar.csv' u (log($1)**2):2 w p pt 7 t 'model', a + c*x t 'fit'\n"
                 "unset multiplot\n");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral form factors and emergent diffusion in coupled random-matrix chains"};
    app.require_subcommand(1);
    std::string config_path, scale_flag, out_flag;
    std::optional<uint64_t> seed_flag;
    std::optional<int> workers_flag;
    for (const char* name : {"twosite", "collapse", "wt", "spinchain", "dconst", "sffmodel"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "JSON configuration file")->required();
        sub->add_option("--seed", seed_flag, "master seed (overrides config)");
        sub->add_option("--scale", scale_flag, "smoke|desk|paper (overrides config)");
        sub->add_option("--out", out_flag, "output directory (overrides config)");
        sub->add_option("--workers", workers_flag, "worker threads (overrides config)");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    RunContext ctx;
    ctx.subcommand = app.get_subcommands().front()->get_name();
    try {
        std::ifstream f(config_path);
        if (!f) throw ConfigError("cannot open config file: " + config_path);
        try {
            ctx.cfg = json::parse(f);
        } catch (const json::exception& e) {
            throw ConfigError(std::string("config parse error: ") + e.what());
        }
        if (!ctx.cfg.is_object()) throw ConfigError("config root must be a JSON object");

        // flags win over config; SFFDL_OUT wins over --out
        if (seed_flag) ctx.cfg["seed"] = *seed_flag;
        if (workers_flag) ctx.cfg["workers"] = *workers_flag;
        if (!scale_flag.empty()) ctx.cfg["scale"] = scale_flag;
        if (!out_flag.empty()) ctx.cfg["out"] = out_flag;
        if (const char* env = std::getenv("SFFDL_OUT")) ctx.cfg["out"] = env;

        try {
            ctx.scale = parse_scale(cfg_get<std::string>(ctx.cfg, "scale", "smoke"));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        if (ctx.scale == Scale::paper && scale_flag != "paper")
            throw GuardError(
                "paper-scale runs take hours to days and must be requested explicitly "
                "with --scale paper");
        ctx.seed = cfg_get<uint64_t>(ctx.cfg, "seed", 20260824);
        ctx.workers = cfg_get(ctx.cfg, "workers", 0);
        if (ctx.workers <= 0) ctx.workers = default_workers();
        ctx.out = fs::path(cfg_get<std::string>(ctx.cfg, "out", "runs")) / ctx.subcommand;
        ctx.cfg["scale"] = ctx.scale == Scale::smoke ? "smoke"
                           : ctx.scale == Scale::desk ? "desk" : "paper";
        ctx.cfg["seed"] = ctx.seed;
        ctx.cfg["workers"] = ctx.workers;
        ctx.cfg["out"] = ctx.out.parent_path().string();
        fs::create_directories(ctx.out);

        if (ctx.subcommand == "twosite") cmd_twosite(ctx);
        else if (ctx.subcommand == "collapse") cmd_collapse(ctx);
        else if (ctx.subcommand == "wt") cmd_wt(ctx);
        else if (ctx.subcommand == "spinchain") cmd_spinchain(ctx);
        else if (ctx.subcommand == "dconst") cmd_dconst(ctx);
        else if (ctx.subcommand == "sffmodel") cmd_sffmodel(ctx);
        ctx.manifest();
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const GuardError& e) {
        std::fprintf(stderr, "resource guard: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 4;
    }
    return 0;
}
