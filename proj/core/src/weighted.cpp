#include "airylab/weighted.hpp"

#include <cmath>
#include <sstream>

#include "airylab/parallel.hpp"
#include "airylab/spectral.hpp"

namespace airylab {

namespace {

void check_weight_exponent(double r, const char* who) {
    if (!(r > 0.0 && r <= kMaxWeightExponent)) {
        std::ostringstream msg;
        msg << who << ": r must lie in (0, 1/6], got " << r;
        throw DomainError(msg.str());
    }
}

void check_boundary_decay(const SpaceField& u0, double tol, const char* who) {
    const double edge = std::max(std::abs(u0[0]), std::abs(u0[u0.size() - 1]));
    if (edge > tol) {
        std::ostringstream msg;
        msg << who << ": datum is " << edge << " at the grid boundary (needs <= " << tol << ")";
        throw DomainError(msg.str());
    }
}

}  // namespace

SpaceField times_abs_x_power(const SpaceField& f, double r) {
    if (!(r >= 0.0)) throw DomainError("times_abs_x_power: r must be >= 0");
    if (r == 0.0) return f;
    const SpatialGrid& grid = f.grid();
    const std::size_t n = grid.size();
    const long half = static_cast<long>(n / 2);

    // Trigonometric interpolant on the fine grid; the unpaired Nyquist
    // coefficient is split between +-n/2 so real data stay real.
    const SpatialGrid fine = make_grid(kWeightOversampling * n, grid.length());
    const Spectrum coarse = to_spectrum(f);
    Spectrum lifted(fine);
    for (long k = -half + 1; k < half; ++k) lifted[fine.index_of_mode(k)] = coarse.mode(k);
    lifted[fine.index_of_mode(-half)] = 0.5 * coarse.mode(-half);
    lifted[fine.index_of_mode(half)] = 0.5 * coarse.mode(-half);

    SpaceField product = from_spectrum(lifted);
    for (std::size_t j = 0; j < product.size(); ++j) product[j] *= std::pow(std::abs(fine.x(j)), r);
    const Spectrum p = to_spectrum(product);

    Spectrum out(grid);
    // Symmetric truncation |k| < n/2: the unpaired Nyquist mode is left at
    // zero, where the real-field Airy group is unitary.
    for (long k = -half + 1; k < half; ++k) out[grid.index_of_mode(k)] = p.mode(k);
    SpaceField g = from_spectrum(out);
    return f.is_real() ? real_part(std::move(g)) : g;
}

SpaceField flp_residual(const SpaceField& u0, double r, double t, double boundary_tol) {
    check_weight_exponent(r, "flp_residual");
    check_boundary_decay(u0, boundary_tol, "flp_residual");
    const SpaceField weighted_then_propagated = times_abs_x_power(airy_propagate(u0, t), r);
    return airy_propagate(weighted_then_propagated, -t) - times_abs_x_power(u0, r);
}

FlpReport flp_bound_check(const SpaceField& u0, double r, const TimeGrid& times, double boundary_tol) {
    check_weight_exponent(r, "flp_bound_check");
    check_boundary_decay(u0, boundary_tol, "flp_bound_check");
    FlpReport rep;
    rep.r = r;
    rep.times.assign(times.nodes().begin(), times.nodes().end());
    rep.residual_norms.resize(times.n_nodes());
    rep.bound_values.resize(times.n_nodes());
    const Exponent two = Exponent::ratio(2);
    const double data_size = lp_norm(u0, two) + lp_norm(frac_deriv(u0, 2.0 * r), two);
    parallel_for(times.n_nodes(), [&](std::size_t m) {
        const double t = times.node(m);
        rep.residual_norms[m] = lp_norm(flp_residual(u0, r, t, boundary_tol), two);
        rep.bound_values[m] = (1.0 + t) * data_size;
    });
    for (std::size_t m = 0; m < times.n_nodes(); ++m) {
        if (rep.bound_values[m] > 0.0) rep.max_ratio = std::max(rep.max_ratio, rep.residual_norms[m] / rep.bound_values[m]);
    }
    return rep;
}

std::string to_string(SolverKind kind) { return kind == SolverKind::Picard ? "picard" : "oracle"; }

SolverKind parse_solver_kind(const std::string& name) {
    if (name == "picard") return SolverKind::Picard;
    if (name == "oracle") return SolverKind::Oracle;
    throw DomainError("unknown solver '" + name + "' (expected picard or oracle)");
}

PersistenceReport persistence_run(const SpaceField& u0, double r, const TimeGrid& times,
                                  const PersistenceOptions& opts) {
    if (!(r >= 0.0 && r <= kMaxWeightExponent)) {
        std::ostringstream msg;
        msg << "persistence_run: r = " << r << " is outside the admissible weight range [0, 1/6]";
        throw DomainError(msg.str());
    }
    PersistenceReport rep;
    rep.r = r;
    rep.solver = opts.solver;

    const double h0 = sobolev_norm(u0, 1.0 / 3.0);
    const double w0 = weighted_l2(u0, r);
    const double T = times.horizon();
    if (h0 > 0.0) {
        rep.params = (r == 0.0) ? select_parameters_unweighted(u0, opts.C)
                                : select_parameters_weighted(u0, opts.C, r, opts.theta);
    } else {
        rep.params = ContractionParams{opts.C, 0.0, T, opts.theta, r};
    }
    if (r > 0.0 && h0 > 0.0) {
        const FlpReport flp = flp_bound_check(u0, r, times, opts.boundary_tol);
        for (std::size_t m = 0; m < flp.times.size(); ++m) {
            rep.flp_constant = std::max(rep.flp_constant, flp.residual_norms[m] / ((1.0 + flp.times[m]) * h0));
        }
    }
    const double rho4 = std::pow(rep.params.rho, 4);
    const double theta_used = (r == 0.0) ? 0.5 : opts.theta;
    rep.h13_ceiling = h0 + opts.C * std::sqrt(T) * rho4;
    rep.linear_weighted_ceiling = w0 + rep.flp_constant * (1.0 + T) * h0;
    rep.weighted_ceiling = rep.linear_weighted_ceiling + opts.C * std::pow(T, theta_used) * rho4;

    std::optional<SpaceTimeField> u;
    if (opts.solver == SolverKind::Picard) {
        PicardOptions po = opts.picard;
        po.norm = (r == 0.0) ? PicardNorm::yt() : PicardNorm::xt(r);
        PicardResult res = picard_solve(u0, times, po);
        rep.picard = res.diagnostics;
        if (!res.diagnostics.converged) {
            rep.status = "picard " + res.diagnostics.status;
            rep.failure_time = T;
            rep.verdict = false;
            return rep;
        }
        u.emplace(std::move(res.solution));
    } else {
        try {
            u.emplace(evolve_oracle(u0, times, opts.oracle));
        } catch (const SolverBreakdown& e) {
            rep.status = e.what();
            rep.failure_time = e.time();
            rep.verdict = false;
            return rep;
        }
    }

    const Exponent two = Exponent::ratio(2);
    rep.times.assign(times.nodes().begin(), times.nodes().end());
    for (const auto& fr : u->frames()) {
        rep.l2_norms.push_back(lp_norm(fr, two));
        rep.h13_norms.push_back(sobolev_norm(fr, 1.0 / 3.0));
        rep.weighted_norms.push_back(weighted_l2(fr, r));
    }
    rep.mu = mu_norms(*u);
    rep.xt_norm = rep.mu.sum() + sup_weighted_l2(*u, r);

    bool ok = std::isfinite(rep.xt_norm);
    for (std::size_t m = 0; m < rep.times.size(); ++m) {
        ok = ok && std::isfinite(rep.h13_norms[m]) && std::isfinite(rep.weighted_norms[m]);
        ok = ok && rep.h13_norms[m] <= rep.h13_ceiling && rep.weighted_norms[m] <= rep.weighted_ceiling;
    }
    rep.verdict = ok;
    if (!ok) rep.status = "norm exceeded ceiling";
    return rep;
}

}  // namespace airylab
