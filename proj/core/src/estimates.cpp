#include "airylab/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "airylab/errors.hpp"
#include "airylab/evolution.hpp"
#include "airylab/norms.hpp"
#include "airylab/parallel.hpp"
#include "airylab/spectral.hpp"
#include "airylab/weighted.hpp"

namespace airylab {

namespace {

constexpr double kThird = 1.0 / 3.0;

MixedNormSpec xo(const char* p, const char* q) { return {Exponent::parse(p), Exponent::parse(q), NormOrder::XOuter}; }
MixedNormSpec to(const char* p, const char* q) { return {Exponent::parse(p), Exponent::parse(q), NormOrder::TOuter}; }

SpaceTimeField multiply(const SpaceTimeField& a, const SpaceTimeField& b) {
    SpaceTimeField out = a;
    for (std::size_t m = 0; m < out.n_frames(); ++m) {
        auto v = out.frame(m).values();
        const auto w = b.frame(m).values();
        for (std::size_t j = 0; j < v.size(); ++j) v[j] *= w[j];
    }
    return out;
}

SpaceTimeField power(const SpaceTimeField& u, int k) {
    SpaceTimeField out = u;
    for (int i = 1; i < k; ++i) out = multiply(out, u);
    return out;
}

SpaceTimeField weight(const SpaceTimeField& u, const std::vector<double>& w) {
    SpaceTimeField out = u;
    for (std::size_t m = 0; m < out.n_frames(); ++m) {
        auto v = out.frame(m).values();
        for (std::size_t j = 0; j < v.size(); ++j) v[j] *= w[j];
    }
    return out;
}

std::vector<double> sample_real(const SpatialGrid& grid, const std::function<double(double)>& f) {
    std::vector<double> w(grid.size());
    for (std::size_t j = 0; j < w.size(); ++j) w[j] = f(grid.x(j));
    return w;
}

double abs_power(double x, double r) { return r == 0.0 ? 1.0 : std::pow(std::abs(x), r); }

double sup_l2(const SpaceTimeField& u) { return mixed_norm(u, to("2", "inf")); }

// f(x - t): the datum carried rigidly at unit speed, used as a forcing.
SpaceTimeField translated_forcing(const SpaceField& u0, const TimeGrid& times) {
    std::vector<SpaceField> frames;
    frames.reserve(times.n_nodes());
    for (double t : times.nodes()) {
        MultiplierSymbol shift("shift", [t](double xi) { return std::polar(1.0, -xi * t); }, true, false);
        frames.push_back(apply_multiplier(u0, shift));
    }
    return SpaceTimeField(u0.grid(), times, std::move(frames));
}

// Composite trapezoid rule over the time nodes.
double trapezoid(const std::vector<double>& values, const TimeGrid& times) {
    const auto w = times.trapezoid_weights();
    double s = 0.0;
    for (std::size_t m = 0; m < values.size(); ++m) s += w[m] * values[m];
    return s;
}

CaseEvaluation eval_e1(const SpaceField& u0, const EstimateContext& ctx) {
    const SpaceTimeField u = airy_orbit(u0, ctx.times);
    const Exponent two = Exponent::ratio(2);
    const double rhs = lp_norm(u0, two);
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (const auto& f : u.frames()) {
        const double v = lp_norm(f, two);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return {{{"sup_t", hi, rhs}, {"inf_t", lo, rhs}}, std::nullopt};
}

CaseEvaluation eval_free(const SpaceField& u0, const EstimateContext& ctx, bool differentiate, const MixedNormSpec& spec,
                         bool sobolev_rhs) {
    SpaceTimeField u = airy_orbit(u0, ctx.times);
    if (differentiate) u = derivative(u);
    const double rhs = sobolev_rhs ? sobolev_norm(u0, kThird) : lp_norm(u0, Exponent::ratio(2));
    return {{{"main", mixed_norm(u, spec), rhs}}, std::nullopt};
}

CaseEvaluation eval_e6(const SpaceField& u0, const EstimateContext& ctx) {
    const SpaceTimeField f = translated_forcing(u0, ctx.times);
    const double lhs = sup_l2(derivative(retarded_integral(f)));
    return {{{"main", lhs, mixed_norm(f, xo("1", "2"))}}, std::nullopt};
}

CaseEvaluation eval_e7(const SpaceField& u0, const EstimateContext& ctx) {
    const SpaceTimeField f = translated_forcing(u0, ctx.times);
    const double lhs = sup_l2(retarded_integral(f));
    return {{{"main", lhs, mixed_norm(f, to("3/2", "18/17"))}}, std::nullopt};
}

SpaceTimeField leibniz_commutator(const SpaceTimeField& f, const SpaceTimeField& g) {
    SpaceTimeField c = frac_deriv(multiply(f, g), kThird);
    c -= multiply(f, frac_deriv(g, kThird));
    c -= multiply(g, frac_deriv(f, kThird));
    return c;
}

CaseEvaluation eval_e8(const SpaceField& u0, const EstimateContext& ctx) {
    const SpaceTimeField u = airy_orbit(u0, ctx.times);
    const SpaceTimeField u2 = multiply(u, u);
    const SpaceTimeField u3 = multiply(u2, u);
    const SpaceTimeField ux = derivative(u);

    const double lhs_a = mixed_norm(leibniz_commutator(u3, ux), xo("2", "2"));
    const double rhs_a = mixed_norm(frac_deriv(u3, kThird), xo("24/11", "8")) * mixed_norm(ux, xo("24", "8/3"));
    const double lhs_b = mixed_norm(leibniz_commutator(u2, u), xo("24/11", "8"));
    const double rhs_b = mixed_norm(u2, xo("3", "inf")) * mixed_norm(frac_deriv(u, kThird), xo("8", "8"));
    return {{{"cube_times_derivative", lhs_a, rhs_a}, {"square_times_orbit", lhs_b, rhs_b}}, std::nullopt};
}

CaseEvaluation eval_e9(const SpaceField& u0, const EstimateContext& ctx) {
    const SpaceTimeField u = airy_orbit(u0, ctx.times);
    const SpaceTimeField u2 = multiply(u, u);
    const double lhs = mixed_norm(frac_deriv(multiply(u2, u), kThird), xo("24/11", "8"));
    const double rhs = mixed_norm(u2, xo("3", "inf")) * mixed_norm(frac_deriv(u, kThird), xo("8", "8"));
    return {{{"main", lhs, rhs}}, std::nullopt};
}

// u^3 u_x; d_x(u^4) is four times this.
SpaceTimeField cubic_flux(const SpaceTimeField& u) { return multiply(power(u, 3), derivative(u)); }

CaseEvaluation eval_e10(const SpaceField& u0, const EstimateContext& ctx) {
    const SpaceTimeField u = airy_orbit(u0, ctx.times);
    const MuVector mu = mu_norms(u);
    const double lhs = mixed_norm(frac_deriv(cubic_flux(u), kThird), xo("2", "2"));
    const double rhs = mu[4] * mu[4] * mu[2] * mu[1] + mu[4] * mu[4] * mu[4] * mu[3];
    return {{{"main", lhs, rhs}}, std::nullopt};
}

CaseEvaluation eval_e11(const SpaceField& u0, const EstimateContext& ctx) {
    const SpaceTimeField u = airy_orbit(u0, ctx.times);
    const MuVector mu = mu_norms(u);
    const double lhs = mixed_norm(cubic_flux(u), xo("2", "2"));
    return {{{"main", lhs, mu[4] * mu[4] * mu[4] * mu[5]}}, std::nullopt};
}

CaseEvaluation eval_e12(const SpaceField& u0, const EstimateContext& ctx) {
    const FlpReport rep = flp_bound_check(u0, ctx.r, ctx.times);
    std::size_t best = 0;
    double best_ratio = -1.0;
    for (std::size_t m = 0; m < rep.times.size(); ++m) {
        const double q = rep.bound_values[m] > 0.0 ? rep.residual_norms[m] / rep.bound_values[m] : 0.0;
        if (q > best_ratio) {
            best_ratio = q;
            best = m;
        }
    }
    return {{{"max_t", rep.residual_norms[best], rep.bound_values[best]}}, std::nullopt};
}

// d_x(u^4) for every frame, without dealiasing.
SpaceTimeField quartic_flux(const SpaceTimeField& u) {
    return map_frames(u, [](const SpaceField& f) { return nonlinearity(f, false); });
}

double nl3_value(const SpaceTimeField& u, const std::vector<double>& outer_slope) {
    return sup_l2(retarded_integral(weight(power(u, 4), outer_slope)));
}

CaseEvaluation eval_e13(const SpaceField& u0, const EstimateContext& ctx) {
    const TimeGrid& times = ctx.times;
    const double r = ctx.r;
    const double T = times.horizon();
    const SpaceTimeField u = airy_orbit(u0, times);
    const SpatialGrid& grid = u0.grid();
    const CutoffFunction chi;

    const auto inner = sample_real(grid, [&](double x) { return abs_power(x, r) * chi(x); });
    const auto outer = sample_real(grid, [&](double x) { return abs_power(x, r) * (1.0 - chi(x)); });
    const auto outer_slope = sample_real(grid, [&](double x) {
        if (std::abs(x) <= 1.0) return 0.0;
        const double s = x > 0.0 ? 1.0 : -1.0;
        const double grow = r == 0.0 ? 0.0 : r * std::pow(std::abs(x), r - 1.0) * s;
        return grow * (1.0 - chi(x)) - abs_power(x, r) * chi.derivative(x);
    });

    const SpaceTimeField F = quartic_flux(u);
    const double xt = xt_norm(u, r);
    const double x4 = xt * xt * xt * xt;

    std::vector<double> inner_norms(times.n_nodes());
    const Exponent two = Exponent::ratio(2);
    for (std::size_t m = 0; m < times.n_nodes(); ++m) {
        SpaceField g = F.frame(m);
        for (std::size_t j = 0; j < g.size(); ++j) g[j] *= inner[j];
        inner_norms[m] = lp_norm(g, two);
    }
    const double nl1 = trapezoid(inner_norms, times);

    const double nl2 = sup_l2(retarded_integral(derivative(weight(power(u, 4), outer))));
    const double nl3 = nl3_value(u, outer_slope);

    // sup over lags of the commutator residual, on at most 64 lags per node
    // (always including the final lag T - t'). The Airy group is unitary, so
    // |residual_lag(F)| = | |x|^r E(lag)F - E(lag)(|x|^r F) |.
    std::vector<double> nl4_inner(times.n_nodes(), 0.0);
    if (r > 0.0) {
        const std::size_t M = times.n_steps();
        const auto w = sample_real(grid, [&](double x) { return abs_power(x, r); });
        std::vector<std::vector<Complex>> propagators(M + 1);
        for (std::size_t k = 0; k <= M; ++k) propagators[k] = symbols::airy(times.node(k)).on_grid(grid);
        const double dx = grid.dx();
        for (std::size_t m = 0; m < times.n_nodes(); ++m) {
            const Spectrum f_hat = to_spectrum(F.frame(m));
            SpaceField wf = F.frame(m);
            for (std::size_t j = 0; j < wf.size(); ++j) wf[j] *= w[j];
            const Spectrum wf_hat = to_spectrum(wf);

            const std::size_t lags = M - m;
            const std::size_t stride = std::max<std::size_t>(1, (lags + 63) / 64);
            std::vector<std::size_t> ks;
            for (std::size_t k = 0; k <= lags; k += stride) ks.push_back(k);
            if (ks.back() != lags) ks.push_back(lags);
            double best = 0.0;
            for (std::size_t k : ks) {
                Spectrum a = f_hat;
                Spectrum b = wf_hat;
                apply_multiplier_in_place(a, propagators[k]);
                apply_multiplier_in_place(b, propagators[k]);
                const SpaceField ea = from_spectrum(a);
                const SpaceField eb = from_spectrum(b);
                double sum = 0.0;
                for (std::size_t j = 0; j < ea.size(); ++j) sum += std::norm(w[j] * ea[j] - eb[j]);
                best = std::max(best, std::sqrt(sum * dx));
            }
            nl4_inner[m] = best;
        }
    }
    const double nl4 = trapezoid(nl4_inner, times);

    CaseEvaluation ev;
    ev.pieces = {
        {"NL1", nl1, std::sqrt(T) * x4},
        {"NL2", nl2, std::sqrt(T) * x4},
        {"NL3", nl3, std::pow(T, ctx.theta) * x4},
        {"NL4", nl4, (1.0 + T) * std::sqrt(T) * x4},
    };

    // Exponent fit of NL3 / |u|_X^4 between horizons T/2 and T.
    if (times.n_steps() % 2 == 0 && x4 > 0.0 && nl3 > 0.0) {
        const SpaceTimeField half = u.truncated(times.n_steps() / 2);
        const double xh = xt_norm(half, r);
        const double nl3_half = nl3_value(half, outer_slope);
        if (nl3_half > 0.0) ev.fitted_exponent = std::log2((nl3 / x4) / (nl3_half / (xh * xh * xh * xh)));
    }
    return ev;
}

std::vector<EstimateCase> build_registry() {
    std::vector<EstimateCase> reg;
    auto add = [&](std::string id, std::string desc, std::string anchor, InputKind kind, int degree, auto fn) {
        EstimateCase c;
        c.id = std::move(id);
        c.description = std::move(desc);
        c.anchor = std::move(anchor);
        c.input_kind = kind;
        c.degree = degree;
        c.evaluate = fn;
        reg.push_back(std::move(c));
        return &reg.back();
    };
    add("E1", "L2 isometry of the Airy group: |E(t)u0|_{L2} = |u0|_{L2} for every t", "Plancherel theorem easily provides",
        InputKind::Datum, 1, eval_e1)
        ->exact_ratio = 1.0;
    add("E2", "|E(t)u0|_{L8_x L8_T} <= C |u0|_{L2}", "$\\|e^{-it\\partial_x^3}u_0 \\|_{L^{8}_{x}L^{8}_T}$", InputKind::Datum,
        1, [](const SpaceField& u0, const EstimateContext& c) { return eval_free(u0, c, false, xo("8", "8"), false); });
    add("E3", "maximal function: |E(t)u0|_{L6_x Linf_T} <= C |u0|_{H^1/3}", "the linear maximal estimate",
        InputKind::Datum, 1,
        [](const SpaceField& u0, const EstimateContext& c) { return eval_free(u0, c, false, xo("6", "inf"), true); });
    add("E4", "local smoothing: |d_x E(t)u0|_{Linf_x L2_T} <= C |u0|_{L2}",
        "$\\|\\partial_x e^{-it\\partial^3_{x}}u_0 \\|_{L^{\\infty}_{x}L^{2}_T}$", InputKind::Datum, 1,
        [](const SpaceField& u0, const EstimateContext& c) { return eval_free(u0, c, true, xo("inf", "2"), false); });
    add("E5", "|d_x E(t)u0|_{L24_x L8/3_T} <= C |u0|_{H^1/3}", "Stein's theorem of analytic interpolation",
        InputKind::Datum, 1,
        [](const SpaceField& u0, const EstimateContext& c) { return eval_free(u0, c, true, xo("24", "8/3"), true); });
    add("E6", "retarded smoothing: |d_x int_0^t E(t-s)f(s)ds|_{Linf_T L2_x} <= C |f|_{L1_x L2_T}, f(x,t) = u0(x-t)",
        "two more crucial estimates involving integrals", InputKind::Orbit, 1, eval_e6);
    add("E7", "|int_0^t E(t-s)f(s)ds|_{Linf_T L2_x} <= C |f|_{L18/17_T L3/2_x}, f(x,t) = u0(x-t)",
        "provided that $p\\geq 2$", InputKind::Orbit, 1, eval_e7);
    add("E8",
        "fractional Leibniz commutator D^1/3(fg) - f D^1/3 g - g D^1/3 f for (f,g) = (u^3, u_x) in L2_x L2_T against "
        "|D^1/3 f|_{L24/11_x L8_T} |g|_{L24_x L8/3_T}, and for (f,g) = (u^2, u) in L24/11_x L8_T against "
        "|f|_{L3_x Linf_T} |D^1/3 g|_{L8_x L8_T}; u = E(t)u0",
        "fractional Leibniz rule-type inequality", InputKind::Pair, 3, eval_e8);
    // E8's two pieces have degrees 4 and 3; each piece is homogeneous on its own.
    add("E9", "|D^1/3(u^3)|_{L24/11_x L8_T} <= C |u^2|_{L3_x Linf_T} |D^1/3 u|_{L8_x L8_T}, u = E(t)u0",
        "chain rule for fractional derivatives", InputKind::Orbit, 3, eval_e9);
    add("E10", "|D^1/3(u^3 u_x)|_{L2_x L2_T} <= C (mu5^2 mu3 mu2 + mu5^3 mu4), u = E(t)u0",
        "An application of the Leibniz rule", InputKind::Orbit, 4, eval_e10);
    add("E11", "|u^3 u_x|_{L2_x L2_T} <= mu5^3 mu6 (Hoelder), u = E(t)u0", "which justifies the necessity of",
        InputKind::Orbit, 4, eval_e11)
        ->ratio_ceiling = 1.0 + 1e-8;
    add("E12", "|x|^r commutator residual of the Airy group <= C (1+t)(|u0|_{L2} + |D^2r u0|_{L2})",
        "FLP growth bound", InputKind::Datum, 1, eval_e12);
    add("E13",
        "weighted nonlinear pieces with cutoff chi, F = d_x(u^4): NL1 = int |x|^r chi F, NL2 = sup_t |int E d_x(|x|^r "
        "(1-chi) u^4)|, NL3 = sup_t |int E (d_x(|x|^r (1-chi))) u^4|, NL4 = int sup_lag |residual_lag(F)|; majorants "
        "T^1/2, T^1/2, T^theta, (1+T) T^1/2 times |u|_X^4",
        "taken with $q=18$ and $p=3$", InputKind::Orbit, 4, eval_e13);
    return reg;
}

const std::vector<EstimateCase>& registry() {
    static const std::vector<EstimateCase> reg = build_registry();
    return reg;
}

std::vector<InputRatio> evaluate_family(const EstimateCase& c, const std::vector<NamedDatum>& data,
                                        const EstimateContext& ctx, std::vector<std::string>& labels) {
    std::vector<InputRatio> out(data.size());
    std::vector<CaseEvaluation> evals(data.size());
    std::vector<bool> zero(data.size());
    parallel_for(data.size(), [&](std::size_t i) {
        zero[i] = data[i].field.max_abs() == 0.0;
        if (!zero[i]) evals[i] = c.evaluate(data[i].field, ctx);
    });
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (labels.empty() && !zero[i]) {
            for (const auto& p : evals[i].pieces) labels.push_back(p.label);
        }
    }
    for (std::size_t i = 0; i < data.size(); ++i) {
        out[i].name = data[i].name;
        if (zero[i]) {
            out[i].piece_ratios.assign(labels.size(), 0.0);
            continue;
        }
        for (const auto& p : evals[i].pieces) {
            const double q = piece_ratio(p);
            out[i].piece_ratios.push_back(q);
            out[i].ratio = std::max(out[i].ratio, q);
        }
        out[i].fitted_exponent = evals[i].fitted_exponent;
    }
    return out;
}

double max_of(const std::vector<InputRatio>& v) {
    double m = 0.0;
    for (const auto& x : v) m = std::max(m, x.ratio);
    return m;
}

void check_constraints(const EstimateCase& c, const std::vector<InputRatio>& ratios, const char* where,
                       std::vector<std::string>& violations) {
    for (const auto& in : ratios) {
        for (double q : in.piece_ratios) {
            std::ostringstream msg;
            msg.precision(17);
            if (!std::isfinite(q)) {
                msg << where << ": " << in.name << " has a non-finite ratio (rhs = 0 with lhs > 0)";
            } else if (c.exact_ratio && std::abs(q - *c.exact_ratio) > c.exact_tolerance) {
                msg << where << ": " << in.name << " ratio " << q << " differs from " << *c.exact_ratio << " by more than "
                    << c.exact_tolerance;
            } else if (c.ratio_ceiling && q > *c.ratio_ceiling) {
                msg << where << ": " << in.name << " ratio " << q << " exceeds " << *c.ratio_ceiling;
            } else {
                continue;
            }
            violations.push_back(msg.str());
        }
    }
}

}  // namespace

std::string to_string(InputKind kind) {
    switch (kind) {
        case InputKind::Datum: return "datum";
        case InputKind::Orbit: return "orbit";
        case InputKind::Pair: return "pair";
        case InputKind::Triple: return "triple";
    }
    return "datum";
}

std::vector<EstimateSummary> list_estimates() {
    std::vector<EstimateSummary> out;
    for (const auto& c : registry()) out.push_back({c.id, c.description, c.anchor});
    return out;
}

std::vector<std::string> estimate_ids() {
    std::vector<std::string> ids;
    for (const auto& c : registry()) ids.push_back(c.id);
    return ids;
}

const EstimateCase& find_estimate(const std::string& id) {
    for (const auto& c : registry()) {
        if (c.id == id) return c;
    }
    std::ostringstream msg;
    msg << "unknown estimate id '" << id << "'; valid ids:";
    for (const auto& c : registry()) msg << ' ' << c.id;
    throw DomainError(msg.str());
}

double piece_ratio(const PieceValue& p) {
    if (p.lhs == 0.0) return 0.0;
    if (p.rhs == 0.0) return std::numeric_limits<double>::infinity();
    return p.lhs / p.rhs;
}

EstimateReport run_estimate(const std::string& case_id, const FunctionFamily& family, const SpatialGrid& grid,
                            const EstimateContext& ctx, const EstimateOptions& opts) {
    const EstimateCase& c = find_estimate(case_id);
    if (family.empty()) throw DomainError("run_estimate: family is empty");

    EstimateReport rep;
    rep.id = c.id;
    rep.description = c.description;
    rep.anchor = c.anchor;
    rep.input_kind = c.input_kind;
    rep.family_description = family.description();
    rep.seeds = family.seeds();
    rep.r = ctx.r;
    rep.theta = ctx.theta;

    const auto data = family.realize(grid);
    rep.inputs = evaluate_family(c, data, ctx, rep.piece_labels);
    rep.max_ratio = max_of(rep.inputs);
    rep.refinement.push_back({grid.size(), ctx.times.n_steps(), rep.max_ratio});
    check_constraints(c, rep.inputs, "base", rep.violations);

    if (opts.scale_check) {
        std::vector<NamedDatum> scaled = data;
        for (auto& d : scaled) d.field *= Complex(opts.scale_factor, 0.0);
        std::vector<std::string> labels;
        const auto ratios = evaluate_family(c, scaled, ctx, labels);
        for (std::size_t i = 0; i < ratios.size(); ++i) {
            const double a = rep.inputs[i].ratio;
            const double b = ratios[i].ratio;
            const double dev = a > 0.0 ? std::abs(b - a) / a : (b == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
            rep.scale_deviation = std::max(rep.scale_deviation, dev);
        }
        if (!(rep.scale_deviation <= opts.scale_tolerance)) {
            std::ostringstream msg;
            msg << "scale deviation " << rep.scale_deviation << " at lambda = " << opts.scale_factor << " exceeds "
                << opts.scale_tolerance;
            rep.violations.push_back(msg.str());
        }
    }

    if (opts.refine) {
        const SpatialGrid fine = make_grid(2 * grid.size(), grid.length());
        EstimateContext fine_ctx = ctx;
        fine_ctx.times = make_time_grid(ctx.times.horizon(), 2 * ctx.times.n_steps());
        std::vector<std::string> labels;
        const auto ratios = evaluate_family(c, family.realize(fine), fine_ctx, labels);
        const double fine_max = max_of(ratios);
        rep.refinement.push_back({fine.size(), fine_ctx.times.n_steps(), fine_max});
        check_constraints(c, ratios, "refined", rep.violations);
        rep.refinement_drift =
            rep.max_ratio > 0.0 ? std::abs(fine_max - rep.max_ratio) / rep.max_ratio : (fine_max == 0.0 ? 0.0 : 1.0);
        if (!(rep.refinement_drift < opts.max_drift)) {
            std::ostringstream msg;
            msg << "refinement drift " << rep.refinement_drift << " is not below " << opts.max_drift;
            rep.violations.push_back(msg.str());
        }
    }

    rep.pass = rep.violations.empty() && std::isfinite(rep.max_ratio);
    return rep;
}

double calibrate_constant(const FunctionFamily& family, const std::vector<std::string>& ids, const SpatialGrid& grid,
                          const EstimateContext& ctx) {
    if (ids.empty()) throw DomainError("calibrate_constant: no estimate ids given");
    if (family.empty()) throw DomainError("calibrate_constant: family is empty");
    for (const auto& id : ids) find_estimate(id);
    const auto data = family.realize(grid);
    double C = 0.0;
    for (const auto& id : ids) {
        std::vector<std::string> labels;
        const auto ratios = evaluate_family(find_estimate(id), data, ctx, labels);
        for (const auto& in : ratios) {
            if (!std::isfinite(in.ratio)) throw NumericalError("calibrate_constant: infinite ratio in case " + id + " for " + in.name);
            C = std::max(C, in.ratio);
        }
    }
    if (!(C > 0.0)) throw NumericalError("calibrate_constant: all ratios vanish");
    return C;
}

SpatialGrid default_estimate_grid() { return make_grid(1024, 128.0); }

namespace {
double bump_h(double y) { return y > 0.0 ? std::exp(-1.0 / y) : 0.0; }

double step(double y) {
    if (y <= 0.0) return 0.0;
    if (y >= 1.0) return 1.0;
    const double a = bump_h(y);
    return a / (a + bump_h(1.0 - y));
}

double step_slope(double y) {
    if (y <= 0.0 || y >= 1.0) return 0.0;
    const double a = bump_h(y);
    const double b = bump_h(1.0 - y);
    const double da = a / (y * y);
    const double db = b / ((1.0 - y) * (1.0 - y));
    return (da * b + a * db) / ((a + b) * (a + b));
}
}  // namespace

double CutoffFunction::operator()(double x) const { return 1.0 - step(std::abs(x) - 1.0); }

double CutoffFunction::derivative(double x) const {
    const double s = x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
    return -s * step_slope(std::abs(x) - 1.0);
}

}  // namespace airylab
