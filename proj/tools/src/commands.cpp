#include "airylab/cli/commands.hpp"

#include <cmath>
#include <sstream>

#include <CLI11.hpp>

#include "airylab/cli/report.hpp"
#include "airylab/errors.hpp"
#include "airylab/estimates.hpp"
#include "airylab/evolution.hpp"
#include "airylab/picard.hpp"
#include "airylab/spectral.hpp"
#include "airylab/weighted.hpp"

namespace airylab::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

void check_weight(double r) {
    if (!(r >= 0.0 && r <= kMaxWeightExponent)) {
        std::ostringstream msg;
        msg << "r = " << r << " is outside the admissible weight range [0, 1/6]";
        throw DomainError(msg.str());
    }
}

SpaceField make_datum(const RunConfig& cfg, const SpatialGrid& grid) {
    return realize(datum_generator(cfg.datum), grid);
}

SpaceField make_real_datum(const RunConfig& cfg, const SpatialGrid& grid, const char* who) {
    SpaceField u0 = make_datum(cfg, grid);
    if (!u0.is_real()) throw DomainError(std::string(who) + ": the datum must be real-valued (got '" + cfg.datum.kind + "')");
    return u0;
}

// Contraction parameters for the datum, or nullopt for the zero datum.
std::optional<ContractionParams> contraction_params(const RunConfig& cfg, const SpaceField& u0, double r) {
    if (u0.max_abs() == 0.0) return std::nullopt;
    return r == 0.0 ? select_parameters_unweighted(u0, cfg.scheme_constant())
                    : select_parameters_weighted(u0, cfg.scheme_constant(), r, cfg.theta);
}

double horizon_for(const RunConfig& cfg, const std::optional<ContractionParams>& p) {
    if (cfg.time.horizon) return *cfg.time.horizon;
    return p ? desk_horizon(*p, cfg.time.max_horizon) : cfg.time.max_horizon;
}

json envelope(const char* command, const RunConfig& cfg) {
    return {{"schema_version", kSchemaVersion}, {"command", command}, {"config", to_json(cfg)}};
}

json datum_json(const RunConfig& cfg) { return describe(datum_generator(cfg.datum)); }

SolverConfig solver_config(const RunConfig& cfg) {
    return SolverConfig{cfg.tolerances.dt, cfg.dealias, cfg.tolerances.substeps_per_frame};
}

PicardOptions picard_options(const RunConfig& cfg, double r) {
    PicardOptions o;
    o.tol = cfg.tolerances.picard_tol;
    o.max_iter = cfg.tolerances.max_iter;
    o.dealias = cfg.dealias;
    o.norm = r == 0.0 ? PicardNorm::yt() : PicardNorm::xt(r);
    return o;
}

void prepare(const fs::path& dir) { fs::create_directories(dir); }

}  // namespace

std::vector<std::string> split_ids(const std::string& list) {
    std::vector<std::string> ids;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) ids.push_back(item);
    }
    return ids;
}

std::vector<std::string> resolve_ids(const std::vector<std::string>& requested) {
    if (requested.empty() || (requested.size() == 1 && requested[0] == "all")) return estimate_ids();
    for (const auto& id : requested) find_estimate(id);
    return requested;
}

int cmd_evolve(const RunConfig& cfg, const fs::path& out_dir, std::ostream& log) {
    check_weight(cfg.r);
    const SpatialGrid grid = make_grid(cfg.grid.n_points, cfg.grid.length);
    const SpaceField u0 = make_real_datum(cfg, grid, "evolve");
    const double T = horizon_for(cfg, contraction_params(cfg, u0, cfg.r));
    const TimeGrid times = make_time_grid(T, cfg.time.n_steps);
    const SolverConfig sc = solver_config(cfg);
    sc.validate();
    prepare(out_dir);

    // Stepped one frame at a time so that a breakdown leaves every completed
    // row on disk.
    CsvWriter csv(out_dir / "evolve.csv", norm_series_header());
    std::vector<SpaceField> frames{u0};
    csv.row(norm_series_row(SpaceTimeField(grid, make_time_grid(T, 1), {u0, u0}), 0, cfg.r).values());
    json failure = nullptr;
    for (std::size_t m = 1; m <= times.n_steps(); ++m) {
        const double span = times.node(m) - times.node(m - 1);
        try {
            const SpaceTimeField step = evolve_oracle(frames.back(), make_time_grid(span, 1), sc);
            frames.push_back(step.frame(1));
        } catch (const SolverBreakdown& e) {
            failure = {{"frame", m}, {"substep", e.step()}, {"time", times.node(m - 1) + e.time()}, {"message", e.what()}};
            break;
        }
        const SpaceTimeField so_far(grid, make_time_grid(times.node(m), m), frames);
        NormSeriesRow row = norm_series_row(so_far, m, cfg.r);
        row.t = times.node(m);
        csv.row(row.values());
    }
    const bool ok = failure.is_null();
    csv.comment(ok ? "status=ok" : "status=breakdown");
    csv.flush();

    json doc = envelope("evolve", cfg);
    doc["datum"] = datum_json(cfg);
    doc["horizon"] = T;
    doc["rows"] = frames.size();
    doc["status"] = ok ? "ok" : "breakdown";
    doc["failure"] = failure;
    write_json(out_dir / "evolve.json", doc);
    log << "evolve: " << (ok ? "ok" : "breakdown") << ", " << frames.size() << " rows, T = " << format_double(T) << '\n';
    return ok ? kExitOk : kExitFailed;
}

int cmd_picard(const RunConfig& cfg, const fs::path& out_dir, std::ostream& log) {
    check_weight(cfg.r);
    const SpatialGrid grid = make_grid(cfg.grid.n_points, cfg.grid.length);
    const SpaceField u0 = make_real_datum(cfg, grid, "picard");
    const auto params = contraction_params(cfg, u0, cfg.r);
    const double T = horizon_for(cfg, params);
    const TimeGrid times = make_time_grid(T, cfg.time.n_steps);
    prepare(out_dir);

    const PicardResult res = picard_solve(u0, times, picard_options(cfg, cfg.r));
    const bool ok = res.diagnostics.converged;

    CsvWriter csv(out_dir / "picard.csv", norm_series_header());
    for (const auto& row : norm_series(res.solution, cfg.r)) csv.row(row.values());
    csv.comment("status=" + res.diagnostics.status);
    csv.flush();

    const Exponent two = Exponent::ratio(2);
    const MixedNormSpec sup_l2{two, Exponent::infinity(), NormOrder::TOuter};
    const SpaceTimeField fixed_point_gap = duhamel_map(res.solution, u0, cfg.dealias) - res.solution;
    const double scale = mixed_norm(res.solution, sup_l2);

    json doc = envelope("picard", cfg);
    doc["datum"] = datum_json(cfg);
    doc["C"] = cfg.scheme_constant();
    doc["theta"] = params ? params->theta : cfg.theta;
    doc["rho"] = params ? params->rho : 0.0;
    doc["T_selected"] = params ? json(params->T) : json(nullptr);
    doc["T"] = T;
    doc["r"] = cfg.r;
    doc["diagnostics"] = to_json(res.diagnostics);
    doc["fixed_point_residual"] = scale > 0.0 ? mixed_norm(fixed_point_gap, sup_l2) / scale : 0.0;
    write_json(out_dir / "picard.json", doc);
    log << "picard: " << res.diagnostics.status << " after " << res.diagnostics.iterations << " iterations, T = "
        << format_double(T) << '\n';
    return ok ? kExitOk : kExitFailed;
}

int cmd_persistence(const RunConfig& cfg, const fs::path& out_dir, std::ostream& log) {
    check_weight(cfg.r);
    const SpatialGrid grid = make_grid(cfg.grid.n_points, cfg.grid.length);
    const SpaceField u0 = make_real_datum(cfg, grid, "persistence");
    const double T = horizon_for(cfg, contraction_params(cfg, u0, cfg.r));
    const TimeGrid times = make_time_grid(T, cfg.time.n_steps);
    prepare(out_dir);

    PersistenceOptions opts;
    opts.solver = cfg.solver;
    opts.C = cfg.scheme_constant();
    opts.theta = cfg.theta;
    opts.picard = picard_options(cfg, cfg.r);
    opts.oracle = solver_config(cfg);
    opts.boundary_tol = cfg.tolerances.boundary_tol;
    const PersistenceReport rep = persistence_run(u0, cfg.r, times, opts);

    CsvWriter csv(out_dir / "persistence.csv", {"t", "l2", "h13", "weighted_l2", "h13_ceiling", "weighted_ceiling"});
    for (std::size_t m = 0; m < rep.times.size(); ++m) {
        csv.row({rep.times[m], rep.l2_norms[m], rep.h13_norms[m], rep.weighted_norms[m], rep.h13_ceiling,
                 rep.weighted_ceiling});
    }
    csv.comment("status=" + rep.status);
    csv.flush();

    json doc = envelope("persistence", cfg);
    doc["datum"] = datum_json(cfg);
    doc["T"] = T;
    doc["report"] = to_json(rep);
    write_json(out_dir / "persistence.json", doc);
    log << "persistence: verdict " << (rep.verdict ? "true" : "false") << " (" << rep.status << "), r = "
        << format_double(cfg.r) << ", T = " << format_double(T) << '\n';
    return rep.verdict ? kExitOk : kExitFailed;
}

namespace {
EstimateContext estimate_context(const RunConfig& cfg) {
    EstimateContext ctx;
    ctx.times = make_time_grid(cfg.estimates.horizon, cfg.estimates.n_steps);
    ctx.r = cfg.estimates.r;
    ctx.theta = cfg.theta;
    return ctx;
}
}  // namespace

int cmd_verify_estimates(const RunConfig& cfg, const std::vector<std::string>& ids, const fs::path& out_dir,
                         std::ostream& log) {
    const auto resolved = resolve_ids(ids.empty() ? cfg.estimates.ids : ids);
    const SpatialGrid grid = make_grid(cfg.estimates.n_points, cfg.estimates.length);
    const EstimateContext ctx = estimate_context(cfg);
    EstimateOptions opts;
    opts.refine = cfg.estimates.refine;
    opts.max_drift = cfg.estimates.max_drift;
    prepare(out_dir);

    const FunctionFamily family = FunctionFamily::standard();
    json reports = json::array();
    bool all_pass = true;
    for (const auto& id : resolved) {
        const EstimateReport rep = run_estimate(id, family, grid, ctx, opts);
        all_pass = all_pass && rep.pass;
        log << id << ": " << (rep.pass ? "PASS" : "FAIL") << " max_ratio = " << format_double(rep.max_ratio) << '\n';
        reports.push_back(to_json(rep));
    }
    json doc = envelope("verify-estimates", cfg);
    doc["ids"] = resolved;
    doc["reports"] = reports;
    doc["all_pass"] = all_pass;
    write_json(out_dir / "estimates.json", doc);
    return all_pass ? kExitOk : kExitFailed;
}

int cmd_soliton(const RunConfig& cfg, const fs::path& out_dir, std::ostream& log) {
    const double c = cfg.soliton.c;
    const SpatialGrid grid = make_grid(cfg.soliton.n_points, cfg.soliton.length);
    const SpaceField phi = soliton(SolitonParams{c, cfg.soliton.x0}, grid);
    const double residual = soliton_ode_residual(phi, c);
    prepare(out_dir);

    const bool ok = residual < cfg.tolerances.soliton_residual;
    CsvWriter csv(out_dir / "soliton.csv", {"x", "phi"});
    for (std::size_t j = 0; j < grid.size(); ++j) csv.row({grid.x(j), phi[j].real()});
    csv.comment(ok ? "status=ok" : "status=residual_exceeded");
    csv.flush();

    json doc = envelope("soliton", cfg);
    doc["c"] = c;
    doc["x0"] = cfg.soliton.x0;
    doc["peak"] = phi.max_abs();
    doc["peak_formula"] = std::cbrt(2.5 * c);
    doc["ode_residual"] = residual;
    doc["residual_tolerance"] = cfg.tolerances.soliton_residual;
    doc["pass"] = ok;
    write_json(out_dir / "soliton.json", doc);
    log << "soliton: c = " << format_double(c) << ", ODE residual = " << format_double(residual) << '\n';
    return ok ? kExitOk : kExitFailed;
}

int cmd_calibrate(const RunConfig& cfg, const std::vector<std::string>& ids, const fs::path& out_dir, std::ostream& log) {
    const auto resolved = resolve_ids(ids.empty() ? cfg.estimates.ids : ids);
    const SpatialGrid grid = make_grid(cfg.estimates.n_points, cfg.estimates.length);
    const FunctionFamily family = FunctionFamily::standard();
    const double C = calibrate_constant(family, resolved, grid, estimate_context(cfg));
    prepare(out_dir);

    json doc = envelope("calibrate", cfg);
    doc["ids"] = resolved;
    doc["family_description"] = family.description();
    doc["seeds"] = family.seeds();
    doc["C"] = C;
    doc["C_text"] = format_double(C);
    write_json(out_dir / "calibrate.json", doc);
    log << "calibrate: C = " << format_double(C) << '\n';
    return kExitOk;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"airylab: pseudo-spectral experiments for u_t + u_xxx + (u^4)_x = 0"};
    app.require_subcommand(1);
    std::string config_path;
    std::string ids_text;
    std::string out_dir;

    struct Sub {
        const char* name;
        const char* help;
        bool takes_ids;
    };
    const Sub subs[] = {
        {"evolve", "Reference integrating-factor RK4 evolution; writes the norm series", false},
        {"picard", "Picard iteration on the Duhamel formula at the selected (rho, T)", false},
        {"persistence", "Weighted persistence experiment", false},
        {"verify-estimates", "Run registry cases over the standard family", true},
        {"soliton", "Soliton profile and its ODE residual", false},
        {"calibrate", "Max LHS/RHS ratio over registry cases (the default C)", true},
    };
    for (const auto& s : subs) {
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        sub->add_option("--config", config_path, "JSON configuration (defaults apply to missing keys)")
            ->check(CLI::ExistingFile);
        sub->add_option("--out", out_dir, "Output directory (overrides output.dir)");
        if (s.takes_ids) sub->add_option("--ids", ids_text, "Comma-separated case ids, or all");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        const RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
        const fs::path dir = out_dir.empty() ? fs::path(cfg.output_dir) : fs::path(out_dir);
        const std::vector<std::string> ids = split_ids(ids_text);
        const std::string name = app.get_subcommands().front()->get_name();
        if (name == "evolve") return cmd_evolve(cfg, dir, out);
        if (name == "picard") return cmd_picard(cfg, dir, out);
        if (name == "persistence") return cmd_persistence(cfg, dir, out);
        if (name == "verify-estimates") return cmd_verify_estimates(cfg, ids, dir, out);
        if (name == "soliton") return cmd_soliton(cfg, dir, out);
        if (name == "calibrate") return cmd_calibrate(cfg, ids, dir, out);
    } catch (const DomainError& e) {
        err << "airylab: " << e.what() << '\n';
        return kExitUsage;
    } catch (const NumericalError& e) {
        err << "airylab: numerical failure: " << e.what() << '\n';
        return kExitFailed;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "airylab: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace airylab::cli
