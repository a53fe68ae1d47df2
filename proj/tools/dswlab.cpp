#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dsw/asymptotics.hpp"
#include "dsw/compare.hpp"
#include "dsw/initial_data.hpp"
#include "dsw/io.hpp"
#include "dsw/kdv.hpp"
#include "dsw/painleve2.hpp"
#include "dsw/whitham.hpp"

namespace fs = std::filesystem;
using namespace dsw;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitCheck = 4;

std::string resolve_outdir(const std::string& flag_value) {
    std::string dir = flag_value;
    if (dir.empty()) {
        if (const char* env = std::getenv("DSWLAB_OUTDIR")) dir = env;
    }
    if (dir.empty()) dir = ".";
    fs::create_directories(dir);
    return dir;
}

std::unique_ptr<InitialDataModel> make_model(const std::string& spec) {
    if (spec.empty() || spec == "sech2") return std::make_unique<Sech2Model>();
    if (spec.rfind("file:", 0) == 0) {
        const std::string path = spec.substr(5);
        std::ifstream is(path);
        if (!is) throw ConfigError(0, "initial_data file not found: " + path);
        std::vector<Real> xs, us;
        Real x, u;
        while (is >> x >> u) {
            xs.push_back(x);
            us.push_back(u);
        }
        if (xs.size() < 4) throw ConfigError(0, "initial_data file too short: " + path);
        auto model = std::make_unique<SampledDataModel>(xs, us, "file:" + path);
        const ValidationReport report = validate(*model);
        if (!report.pass())
            throw ConfigError(0, "initial data not admissible:\n" + report.summary());
        return model;
    }
    throw ConfigError(0, "unknown initial_data spec: " + spec);
}

std::vector<Real> linspace(Real a, Real b, int n) {
    std::vector<Real> v(n);
    for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
    return v;
}

void write_curve(const std::string& path, const std::vector<Real>& xs,
                 const std::vector<Real>& us, const std::string& xname = "x",
                 const std::string& uname = "u") {
    TableWriter tw(path, {xname, uname});
    for (size_t i = 0; i < xs.size(); ++i) tw.row({xs[i], us[i]});
}

void write_gnuplot(const std::string& dir, const std::string& name,
                   const std::vector<std::string>& files,
                   const std::vector<std::string>& titles) {
    std::ofstream os(fs::path(dir) / (name + ".gp"));
    os << "set grid\nset xlabel 'x'\nset ylabel 'u'\n";
    os << "plot ";
    for (size_t i = 0; i < files.size(); ++i) {
        if (i) os << ", ";
        os << "'" << files[i] << "' using 1:2 with lines title '" << titles[i] << "'";
    }
    os << "\n";
}

struct RunState {
    std::string outdir;
    Manifest manifest;
    bool gnuplot = false;

    std::string out(const std::string& name) {
        const std::string p = (fs::path(outdir) / name).string();
        manifest.file(p);
        return p;
    }
};

GridFunction kdv_field(const InitialDataModel& model, Real eps, Real t, RunState* rs) {
    const Grid1D grid{15.0, default_grid_size(eps)};
    auto snaps = kdv_solve(model, eps, {t}, grid);
    if (rs) {
        const std::string p =
            rs->out("kdv_eps" + format_real(eps) + "_t" + format_real(t) + ".snap");
        write_snapshot(p, snaps[0]);
    }
    return std::move(snaps[0]);
}

// ---------------- subcommand payloads ----------------

struct HmArgs {
    Real zl = -10.0, zr = 10.0, mu = 0.009, tol = 1e-14;
    int n = 128;
    Real zmin = -15.0, zmax = 15.0;
    int points = 2001;
    std::string out = "hm.txt";
};

int run_hm(const HmArgs& a, bool residual_mode, const std::string& outdir) {
    HmSolveOptions opts;
    opts.z_left = a.zl;
    opts.z_right = a.zr;
    opts.degree = a.n;
    opts.relaxation = a.mu;
    opts.tol = a.tol;
    const HastingsMcLeodSolution sol = solve_hastings_mcleod(opts);
    const std::string path = (fs::path(outdir) / a.out).string();
    if (!residual_mode) {
        TableWriter tw(path, {"z", "A"});
        tw.comment("right tail: " + HastingsMcLeodSolution::right_tail_variant());
        for (Real z : linspace(a.zmin, a.zmax, a.points)) tw.row({z, sol(z)});
    } else {
        TableWriter tw(path, {"z", "PII_A"});
        const Real lo = std::max(a.zmin, a.zl);
        const Real hi = std::min(a.zmax, a.zr);
        for (Real z : linspace(lo, hi, a.points)) tw.row({z, sol.residual(z)});
    }
    std::cout << "wrote " << path << " (" << sol.iterations() << " iterations)\n";
    return kExitOk;
}

struct ScalingRow {
    Real eps;
    Real delta;
};

ScalingFit write_scaling(const std::string& path, const std::string& target,
                         const std::vector<ScalingRow>& rows) {
    std::vector<Real> es, ds;
    for (const auto& r : rows) {
        es.push_back(r.eps);
        ds.push_back(r.delta);
    }
    const ScalingFit fit = loglog_fit(es, ds);
    TableWriter tw(path, {"epsilon", "delta_max"});
    tw.comment("target: " + target);
    for (const auto& r : rows) tw.row({r.eps, r.delta});
    tw.comment("fit: a b r sigma_a");
    tw.row({fit.a, fit.b, fit.r, fit.sigma_a});
    return fit;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dswlab: small-dispersion KdV laboratory"};
    app.require_subcommand(1);

    std::string outdir_flag;
    app.add_option("--outdir", outdir_flag, "output directory (or env DSWLAB_OUTDIR)");

    std::string initial_data = "sech2";
    app.add_option("--initial-data", initial_data, "sech2 (default) or file:<path>");

    // ---- hm ----
    HmArgs hm_args;
    CLI::App* hm = app.add_subcommand("hm", "Hastings-McLeod solution of Painleve-II");
    hm->require_subcommand(1);
    CLI::App* hm_solve = hm->add_subcommand("solve", "solve and tabulate A(z)");
    CLI::App* hm_res = hm->add_subcommand("residual", "tabulate P_II A on a grid");
    for (CLI::App* sub : {hm_solve, hm_res}) {
        sub->add_option("--zl", hm_args.zl);
        sub->add_option("--zr", hm_args.zr);
        sub->add_option("--n", hm_args.n);
        sub->add_option("--mu", hm_args.mu);
        sub->add_option("--tol", hm_args.tol);
        sub->add_option("--zmin", hm_args.zmin);
        sub->add_option("--zmax", hm_args.zmax);
        sub->add_option("--points", hm_args.points);
        sub->add_option("--out", hm_args.out);
    }

    // ---- kdv ----
    Real kdv_eps = 0.1, kdv_t = 0.4, kdv_L = 15.0, kdv_dt = 0.0;
    int kdv_n = 0;
    bool kdv_dealias = false;
    std::string kdv_out = "kdv.txt";
    CLI::App* kdv = app.add_subcommand("kdv", "reference KdV solver");
    CLI::App* kdv_run = kdv->add_subcommand("run", "integrate and tabulate u(x, t)");
    kdv_run->add_option("--epsilon", kdv_eps)->required();
    kdv_run->add_option("--t", kdv_t)->required();
    kdv_run->add_option("--L", kdv_L);
    kdv_run->add_option("--n", kdv_n, "grid points (default: dx <= eps/10)");
    kdv_run->add_option("--dt", kdv_dt, "time step (default 5e-4 epsilon)");
    kdv_run->add_flag("--dealias", kdv_dealias, "2/3-rule dealiasing");
    kdv_run->add_option("--out", kdv_out);

    // ---- edges ----
    Real ed_t0 = 0.25, ed_t1 = 0.4;
    int ed_steps = 16;
    std::string ed_out = "edges.txt";
    CLI::App* edges = app.add_subcommand("edges", "whitham zone edge trajectory");
    edges->add_option("--t0", ed_t0)->required();
    edges->add_option("--t1", ed_t1)->required();
    edges->add_option("--steps", ed_steps);
    edges->add_option("--out", ed_out);

    // ---- whitham ----
    Real wh_t = 0.4;
    int wh_points = 400;
    std::string wh_out = "whitham.txt";
    CLI::App* wh = app.add_subcommand("whitham", "modulation solve across the zone");
    CLI::App* wh_solve = wh->add_subcommand("solve", "invariants beta_i(x) at fixed t");
    wh_solve->add_option("--t", wh_t)->required();
    wh_solve->add_option("--points", wh_points);
    wh_solve->add_option("--out", wh_out);

    // ---- asym ----
    Real as_t = 0.4, as_eps = 1e-2, as_xmin = -5.0, as_xmax = 1.0;
    int as_points = 2001;
    std::string as_out = "asym.txt";
    std::string as_kdv_snapshot;
    Real as_left = 0.0, as_right = 0.0;
    bool as_has_seams = false;
    bool as_two_thirds = false;
    CLI::App* asym = app.add_subcommand("asym", "asymptotic evaluators");
    asym->require_subcommand(1);
    CLI::App* as_ell = asym->add_subcommand("elliptic", "hopf + modulated theta solution");
    CLI::App* as_small = asym->add_subcommand("smallamp", "small-amplitude edge form");
    CLI::App* as_multi = asym->add_subcommand("multiscale", "painleve-II edge solution");
    CLI::App* as_comp = asym->add_subcommand("composite", "patched description");
    for (CLI::App* sub : {as_ell, as_small, as_multi, as_comp}) {
        sub->add_option("--t", as_t)->required();
        sub->add_option("--epsilon", as_eps)->required();
        sub->add_option("--xmin", as_xmin);
        sub->add_option("--xmax", as_xmax);
        sub->add_option("--points", as_points);
        sub->add_option("--out", as_out);
    }
    as_multi->add_flag("--two-thirds", as_two_thirds, "include the eps^{2/3} terms");
    as_comp->add_option("--kdv-snapshot", as_kdv_snapshot,
                        "reference snapshot for better-zone detection");
    CLI::Option* optl = as_comp->add_option("--left", as_left, "explicit left seam");
    CLI::Option* optr = as_comp->add_option("--right", as_right, "explicit right seam");
    as_comp->callback([&]() { as_has_seams = optl->count() && optr->count(); });

    // ---- compare ----
    std::vector<Real> cp_eps = {0.08, 0.04, 0.02, 0.01};
    Real cp_t = 0.4, cp_zone_eps = 0.01;
    std::string cp_target = "multiscale";
    std::string cp_out = "scaling.txt";
    CLI::App* cp = app.add_subcommand("compare", "error measurement against KdV");
    CLI::App* cp_scal = cp->add_subcommand("scaling", "epsilon sweep and power-law fit");
    cp_scal->add_option("--epsilons", cp_eps)->delimiter(',');
    cp_scal->add_option("--t", cp_t);
    cp_scal
        ->add_option("--target", cp_target,
                     "multiscale|elliptic-edge|elliptic-interior|zone-width")
        ->check(CLI::IsMember(
            {"multiscale", "elliptic-edge", "elliptic-interior", "zone-width"}));
    cp_scal->add_option("--out", cp_out);
    CLI::App* cp_zone = cp->add_subcommand("zone", "better-zone bounds for one epsilon");
    cp_zone->add_option("--epsilon", cp_zone_eps)->required();
    cp_zone->add_option("--t", cp_t);
    std::string cp_zone_out;
    cp_zone->add_option("--out", cp_zone_out);

    // ---- run ----
    std::string run_preset, run_config;
    bool run_check = false, run_gnuplot = false;
    CLI::App* run = app.add_subcommand("run", "preset experiment pipelines");
    run->add_option("--preset", run_preset,
                    "figure1|figure4|figure5|scaling|zonewidth|breakup|hastings-mcleod");
    run->add_option("--config", run_config, "key=value configuration file");
    run->add_flag("--check", run_check, "validate results; exit 4 on failure");
    run->add_flag("--gnuplot", run_gnuplot, "emit companion plot scripts");

    CLI11_PARSE(app, argc, argv);

    try {
        const std::string outdir = resolve_outdir(outdir_flag);
        const auto model = make_model(initial_data);

        if (hm_solve->parsed()) return run_hm(hm_args, false, outdir);
        if (hm_res->parsed()) return run_hm(hm_args, true, outdir);

        if (kdv_run->parsed()) {
            const int n = kdv_n > 0 ? kdv_n : default_grid_size(kdv_eps, kdv_L);
            KdvOptions opts;
            opts.dt = kdv_dt;
            opts.dealias = kdv_dealias;
            auto snaps = kdv_solve(*model, kdv_eps, {kdv_t}, Grid1D{kdv_L, n}, opts);
            const std::string path = (fs::path(outdir) / kdv_out).string();
            TableWriter tw(path, {"x", "u"});
            for (int i = 0; i < n; ++i)
                tw.row({snaps[0].grid.x(i), snaps[0].values[i]});
            std::cout << "wrote " << path << "\n";
            return kExitOk;
        }

        if (edges->parsed()) {
            const EdgeTrajectory traj(*model, ed_t1 + 1e-6);
            const std::string path = (fs::path(outdir) / ed_out).string();
            TableWriter tw(path,
                           {"t", "x_minus", "x_plus", "u", "v", "u_t", "v_t", "c", "phi0"});
            for (Real t : linspace(ed_t0, ed_t1, ed_steps)) {
                const EdgeState s = traj.state(t);
                WhithamZone zone(*model, traj, t);
                tw.row({t, s.x_minus, zone.x_plus(), s.u, s.v, s.u_t, s.v_t, s.c, s.phi0});
            }
            std::cout << "wrote " << path << "\n";
            return kExitOk;
        }

        if (wh_solve->parsed()) {
            const EdgeTrajectory traj(*model, wh_t + 1e-6);
            WhithamZone zone(*model, traj, wh_t);
            const Real xm = zone.x_minus();
            const Real xp = zone.x_plus();
            const std::string path = (fs::path(outdir) / wh_out).string();
            TableWriter tw(path, {"x", "beta1", "beta2", "beta3"});
            for (int i = 0; i < wh_points; ++i) {
                const Real x = xm + (xp - 1e-5 - xm) * (i + 0.5) / wh_points;
                const WhithamTriple b = zone.solve_at(x).triple;
                tw.row({x, b.b1, b.b2, b.b3});
            }
            std::cout << "wrote " << path << "\n";
            return kExitOk;
        }

        if (asym->parsed()) {
            const EdgeTrajectory traj(*model, as_t + 1e-6);
            const EdgeState edge = traj.state(as_t);
            const std::string path = (fs::path(outdir) / as_out).string();
            const auto xs = linspace(as_xmin, as_xmax, as_points);
            std::vector<Real> us(xs.size());
            if (as_ell->parsed()) {
                WhithamZone zone(*model, traj, as_t);
                for (size_t i = 0; i < xs.size(); ++i)
                    us[i] = asymptotic_solution(zone, xs[i], as_eps);
            } else if (as_small->parsed()) {
                for (size_t i = 0; i < xs.size(); ++i)
                    us[i] = small_amplitude_solution(
                        *model, edge, std::max(xs[i], edge.x_minus), as_eps);
            } else if (as_multi->parsed()) {
                const HastingsMcLeodSolution hmsol = solve_hastings_mcleod();
                const MultiscaleOrder order = as_two_thirds ? MultiscaleOrder::two_thirds
                                                            : MultiscaleOrder::one_third;
                for (size_t i = 0; i < xs.size(); ++i)
                    us[i] = multiscale_solution(*model, edge, hmsol, xs[i], as_eps, order);
            } else {
                WhithamZone zone(*model, traj, as_t);
                const HastingsMcLeodSolution hmsol = solve_hastings_mcleod();
                ZoneBounds bounds;
                if (as_has_seams) {
                    bounds.left = as_left;
                    bounds.right = as_right;
                    bounds.t = as_t;
                    bounds.epsilon = as_eps;
                } else if (!as_kdv_snapshot.empty()) {
                    const GridFunction u_num = read_snapshot(as_kdv_snapshot);
                    const Evaluator ms_eval = [&](Real x) {
                        return multiscale_solution(*model, edge, hmsol, x, as_eps);
                    };
                    const Evaluator asym_eval = [&](Real x) {
                        return asymptotic_solution(zone, x, as_eps);
                    };
                    bounds = better_zone(u_num, ms_eval, asym_eval, edge, as_eps);
                } else {
                    throw ConfigError(
                        0, "composite needs --kdv-snapshot or explicit --left/--right");
                }
                for (size_t i = 0; i < xs.size(); ++i)
                    us[i] = composite_solution(zone, edge, hmsol, xs[i], as_eps, bounds);
            }
            write_curve(path, xs, us, "x", "u_asym");
            std::cout << "wrote " << path << "\n";
            return kExitOk;
        }

        if (cp_scal->parsed() || cp_zone->parsed()) {
            const HastingsMcLeodSolution hmsol = solve_hastings_mcleod();
            const EdgeTrajectory traj(*model, cp_t + 1e-6);
            if (cp_zone->parsed()) {
                WhithamZone zone(*model, traj, cp_t);
                const EdgeState edge = traj.state(cp_t);
                const GridFunction u_num = kdv_field(*model, cp_zone_eps, cp_t, nullptr);
                const EdgeComparison ec = compare_at_epsilon(u_num, zone, edge, hmsol);
                std::cout << "zone: [" << format_real(ec.zone.left) << ", "
                          << format_real(ec.zone.right) << "]"
                          << (ec.zone.left_open || ec.zone.right_open ? " (open)" : "")
                          << " width " << format_real(ec.zone.width()) << "\n";
                if (!cp_zone_out.empty()) {
                    TableWriter tw((fs::path(outdir) / cp_zone_out).string(),
                                   {"left", "right", "t", "epsilon"});
                    tw.comment(std::string("rule: ") + ZoneBounds::rule_version());
                    tw.row({ec.zone.left, ec.zone.right, ec.zone.t, ec.zone.epsilon});
                }
                return kExitOk;
            }
            std::vector<ScalingRow> rows;
            for (Real eps : cp_eps) {
                WhithamZone zone(*model, traj, cp_t);
                const EdgeState edge = traj.state(cp_t);
                const GridFunction u_num = kdv_field(*model, eps, cp_t, nullptr);
                const EdgeComparison ec = compare_at_epsilon(u_num, zone, edge, hmsol);
                Real delta = ec.edge_multiscale_max;
                if (cp_target == "elliptic-edge") delta = ec.edge_elliptic_max;
                if (cp_target == "elliptic-interior") delta = ec.interior_elliptic_max;
                if (cp_target == "zone-width") delta = ec.zone.width();
                rows.push_back({eps, delta});
                std::cout << "eps " << eps << ": " << delta << "\n";
            }
            const std::string path = (fs::path(outdir) / cp_out).string();
            const ScalingFit fit = write_scaling(path, cp_target, rows);
            std::cout << "fit: a=" << fit.a << " b=" << fit.b << " r=" << fit.r
                      << " sigma_a=" << fit.sigma_a << "\n";
            return kExitOk;
        }

        if (run->parsed()) {
            RunState rs;
            rs.outdir = outdir;
            rs.gnuplot = run_gnuplot;
            Config cfg;
            if (!run_config.empty()) cfg = Config::parse_file(run_config);
            if (run_preset.empty()) run_preset = cfg.get("preset");
            if (run_preset.empty()) throw ConfigError(0, "run needs --preset or a config");
            const auto t_start = std::chrono::steady_clock::now();
            rs.manifest.note("preset", run_preset);
            rs.manifest.note("initial_data", initial_data);
            rs.manifest.note("hm_right_tail", HastingsMcLeodSolution::right_tail_variant());
            rs.manifest.note("zone_rule", ZoneBounds::rule_version());
            for (const auto& [k, v] : cfg.items()) rs.manifest.note("config." + k, v);
            bool check_ok = true;

            if (run_preset == "hastings-mcleod") {
                HmArgs a;
                a.out = "hastings_mcleod.txt";
                run_hm(a, false, outdir);
                rs.manifest.file((fs::path(outdir) / a.out).string());
                a.out = "hastings_mcleod_residual.txt";
                a.points = 4001;
                run_hm(a, true, outdir);
                rs.manifest.file((fs::path(outdir) / a.out).string());
                if (run_check) {
                    const HastingsMcLeodSolution sol = solve_hastings_mcleod();
                    for (Real z = -9.5; z <= 9.5; z += 0.01)
                        if (std::abs(sol.residual(z)) > 1e-8) check_ok = false;
                }
            } else if (run_preset == "figure1") {
                const Real eps = cfg.get_real("epsilon", 0.1);
                const Real t = cfg.get_real("t", 0.4);
                const GridFunction u = kdv_field(*model, eps, t, &rs);
                std::vector<Real> xs(u.grid.n), us(u.grid.n);
                for (int i = 0; i < u.grid.n; ++i) {
                    xs[i] = u.grid.x(i);
                    us[i] = u.values[i];
                }
                write_curve(rs.out("figure1_kdv.txt"), xs, us);
                if (rs.gnuplot)
                    write_gnuplot(outdir, "figure1", {"figure1_kdv.txt"}, {"kdv"});
                if (run_check) check_ok = spectral_tail_ok(u);
            } else if (run_preset == "figure4" || run_preset == "figure5") {
                const Real eps = cfg.get_real("epsilon", 1e-2);
                const Real t = cfg.get_real("t", 0.4);
                const GridFunction u = kdv_field(*model, eps, t, &rs);
                const EdgeTrajectory traj(*model, t + 1e-6);
                WhithamZone zone(*model, traj, t);
                const EdgeState edge = traj.state(t);
                const HastingsMcLeodSolution hmsol = solve_hastings_mcleod();
                const Real w = 12.0 * std::pow(eps, 2.0 / 3.0);
                const Real xlo = edge.x_minus - w;
                const Real xhi = std::min(zone.x_plus() + 0.5, edge.x_minus + 4.0);
                std::vector<Real> xs, uk, ua, um;
                for (int i = 0; i < u.grid.n; ++i) {
                    const Real x = u.grid.x(i);
                    if (x < xlo || x > xhi) continue;
                    xs.push_back(x);
                    uk.push_back(u.values[i]);
                    ua.push_back(asymptotic_solution(zone, x, eps));
                    um.push_back(multiscale_solution(*model, edge, hmsol, x, eps));
                }
                if (run_preset == "figure4") {
                    write_curve(rs.out("figure4_kdv.txt"), xs, uk);
                    write_curve(rs.out("figure4_asymptotic.txt"), xs, ua);
                    write_curve(rs.out("figure4_multiscale.txt"), xs, um);
                    if (rs.gnuplot)
                        write_gnuplot(outdir, "figure4",
                                      {"figure4_kdv.txt", "figure4_asymptotic.txt",
                                       "figure4_multiscale.txt"},
                                      {"kdv", "hopf+elliptic", "multiscale"});
                } else {
                    std::vector<Real> da(xs.size()), dm(xs.size());
                    for (size_t i = 0; i < xs.size(); ++i) {
                        da[i] = uk[i] - ua[i];
                        dm[i] = uk[i] - um[i];
                    }
                    write_curve(rs.out("figure5_err_asymptotic.txt"), xs, da, "x", "err");
                    write_curve(rs.out("figure5_err_multiscale.txt"), xs, dm, "x", "err");
                    if (rs.gnuplot)
                        write_gnuplot(outdir, "figure5",
                                      {"figure5_err_asymptotic.txt",
                                       "figure5_err_multiscale.txt"},
                                      {"kdv - (hopf+elliptic)", "kdv - multiscale"});
                }
                if (run_check) check_ok = spectral_tail_ok(u);
            } else if (run_preset == "scaling" || run_preset == "zonewidth") {
                const Real t = cfg.get_real("t", 0.4);
                const auto epsv = cfg.get_list("epsilons", {0.08, 0.04, 0.02, 0.01});
                const HastingsMcLeodSolution hmsol = solve_hastings_mcleod();
                const EdgeTrajectory traj(*model, t + 1e-6);
                std::vector<ScalingRow> rows;
                for (Real eps : epsv) {
                    WhithamZone zone(*model, traj, t);
                    const EdgeState edge = traj.state(t);
                    const GridFunction u = kdv_field(*model, eps, t, &rs);
                    const EdgeComparison ec = compare_at_epsilon(u, zone, edge, hmsol);
                    rows.push_back({eps, run_preset == "scaling"
                                             ? ec.edge_multiscale_max
                                             : ec.zone.width()});
                }
                const std::string path = rs.out(run_preset + ".txt");
                const ScalingFit fit = write_scaling(
                    path, run_preset == "scaling" ? "multiscale" : "zone-width", rows);
                std::cout << "fit: a=" << fit.a << " r=" << fit.r << "\n";
                if (run_check) {
                    if (run_preset == "scaling")
                        check_ok = fit.a > 0.55 && fit.a < 0.75 && fit.r > 0.99;
                    else
                        check_ok = fit.a > 0.55 && fit.a < 0.78 && fit.r > 0.99;
                }
            } else if (run_preset == "breakup") {
                const Real eps = cfg.get_real("epsilon", 1e-2);
                const BreakupPoint bp = breakup(*model);
                const std::vector<Real> times =
                    cfg.get_list("times", {bp.t_c + 0.02, bp.t_c + 0.06, bp.t_c + 0.12, 0.4});
                const HastingsMcLeodSolution hmsol = solve_hastings_mcleod();
                const EdgeTrajectory traj(*model, times.back() + 1e-6);
                KdvSolver solver(*model, eps, Grid1D{15.0, default_grid_size(eps)}, {});
                const auto snaps = solver.solve(times);
                for (size_t k = 0; k < times.size(); ++k) {
                    const Real t = times[k];
                    const EdgeState edge = traj.state(t);
                    WhithamZone zone(*model, traj, t);
                    const Real xp = zone.x_plus();
                    std::vector<Real> xs, uk, um;
                    for (int i = 0; i < snaps[k].grid.n; ++i) {
                        const Real x = snaps[k].grid.x(i);
                        if (x < bp.x_c - 1.5 || x > xp) continue;
                        xs.push_back(x);
                        uk.push_back(snaps[k].values[i]);
                        um.push_back(multiscale_solution(*model, edge, hmsol, x, eps));
                    }
                    const std::string tag = "breakup_t" + format_real(t);
                    write_curve(rs.out(tag + "_kdv.txt"), xs, uk);
                    write_curve(rs.out(tag + "_multiscale.txt"), xs, um);
                }
                if (run_check) check_ok = spectral_tail_ok(snaps.back());
            } else {
                throw ConfigError(0, "unknown preset: " + run_preset);
            }

            const auto t_end = std::chrono::steady_clock::now();
            rs.manifest.note(
                "wall_seconds",
                format_real(std::chrono::duration<double>(t_end - t_start).count()));
            rs.manifest.write((fs::path(outdir) / "run_manifest.txt").string());
            if (run_check && !check_ok) {
                std::cerr << "check failed for preset " << run_preset << "\n";
                return kExitCheck;
            }
            return kExitOk;
        }

        std::cerr << "no subcommand executed\n";
        return kExitConfig;
    } catch (const ConfigError& err) {
        std::cerr << "configuration error: " << err.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& err) {
        std::cerr << "solver error: " << err.what() << "\n";
        return kExitSolver;
    }
}
