#include "airylab/picard.hpp"

#include <cmath>
#include <optional>

#include "airylab/evolution.hpp"
#include "airylab/norms.hpp"
#include "airylab/parallel.hpp"
#include "airylab/spectral.hpp"

namespace airylab {

double PicardNorm::operator()(const SpaceTimeField& u) const {
    return kind == Kind::YT ? yt_norm(u) : xt_norm(u, r);
}

std::string PicardNorm::to_string() const {
    if (kind == Kind::YT) return "YT";
    return "XT(r=" + std::to_string(r) + ")";
}

double ContractionParams::condition_slack(double h13_norm_u0) const {
    const double growth = (r == 0.0) ? std::pow(rho, 4) : h13_norm_u0 + std::pow(rho, 4);
    return 0.5 * rho + C * std::pow(T, theta) * growth - rho;
}

SpaceTimeField duhamel_map(const SpaceTimeField& u, const SpaceField& u0, bool dealias) {
    if (!(u.grid() == u0.grid())) throw DomainError("duhamel_map: iterate and datum live on different grids");
    const SpatialGrid& grid = u.grid();
    const TimeGrid& times = u.times();

    std::vector<Spectrum> forcing(u.n_frames(), Spectrum(grid));
    parallel_for(u.n_frames(), [&](std::size_t m) { forcing[m] = nonlinearity_spectrum(u.frame(m), dealias); });
    const std::vector<Spectrum> integral = retarded_integral(forcing, times);

    const Spectrum s0 = to_spectrum(u0);
    const bool keep_real = u0.is_real() && u.is_real();
    std::vector<SpaceField> frames(u.n_frames(), SpaceField(grid));
    frames[0] = u0;
    parallel_for(u.n_frames() - 1, [&](std::size_t idx) {
        const std::size_t m = idx + 1;
        Spectrum s(grid);
        const double t = times.node(m);
        const auto xi = grid.wavenumbers();
        for (std::size_t i = 0; i < s.size(); ++i) {
            s[i] = std::polar(1.0, t * xi[i] * xi[i] * xi[i]) * s0[i] - integral[m][i];
        }
        SpaceField f = from_spectrum(s);
        frames[m] = keep_real ? real_part(std::move(f)) : std::move(f);
    });
    return SpaceTimeField(grid, times, std::move(frames));
}

PicardResult picard_solve(const SpaceField& u0, const TimeGrid& times, const PicardOptions& opts) {
    if (!(opts.tol > 0.0)) throw DomainError("picard_solve: tol must be positive");
    if (opts.max_iter < 1) throw DomainError("picard_solve: max_iter must be >= 1");

    PicardDiagnostics diag;
    diag.norm = opts.norm;
    diag.status = "max_iter";
    SpaceTimeField u = airy_orbit(u0, times);
    diag.iterate_norms.push_back(opts.norm(u));

    std::size_t growth_streak = 0;
    for (std::size_t n = 1; n <= opts.max_iter; ++n) {
        diag.iterations = n;
        std::optional<SpaceTimeField> next;
        try {
            next.emplace(duhamel_map(u, u0, opts.dealias));
        } catch (const NumericalError&) {
            diag.status = "non_finite";
            break;
        }
        const double inc = opts.norm(*next - u);
        diag.increments.push_back(inc);
        if (diag.increments.size() >= 2) {
            const double prev = diag.increments[diag.increments.size() - 2];
            diag.contraction_factors.push_back(inc / prev);
            growth_streak = (inc > prev) ? growth_streak + 1 : 0;
        }
        if (!std::isfinite(inc)) {
            diag.status = "non_finite";
            break;
        }
        u = std::move(*next);
        diag.iterate_norms.push_back(opts.norm(u));
        if (inc < opts.tol) {
            diag.converged = true;
            diag.status = "converged";
            break;
        }
        if (growth_streak >= 3) {
            diag.status = "diverged";
            break;
        }
    }
    return {std::move(u), std::move(diag)};
}

ContractionParams select_parameters_unweighted(const SpaceField& u0, double C) {
    if (!(C > 0.0)) throw DomainError("select_parameters: C must be positive");
    const double h = sobolev_norm(u0, 1.0 / 3.0);
    if (h == 0.0) throw DomainError("select_parameters: zero datum (rho would vanish); run picard_solve directly");
    ContractionParams p;
    p.C = C;
    p.rho = 2.0 * C * h;
    const double root = 1.0 / (2.0 * C * p.rho * p.rho * p.rho);
    p.T = root * root;
    p.theta = 0.5;
    p.r = 0.0;
    return p;
}

ContractionParams select_parameters_weighted(const SpaceField& u0, double C, double r, double theta) {
    if (!(C > 0.0)) throw DomainError("select_parameters: C must be positive");
    if (!(r > 0.0 && r <= kMaxWeightExponent)) {
        throw DomainError("select_parameters_weighted: r must lie in (0, 1/6]; use the unweighted path for r = 0");
    }
    if (!(theta > 0.0 && theta <= 1.0)) throw DomainError("select_parameters_weighted: theta must lie in (0, 1]");
    const double h = sobolev_norm(u0, 1.0 / 3.0);
    if (h == 0.0) throw DomainError("select_parameters: zero datum (rho would vanish); run picard_solve directly");
    const double w = weighted_l2(u0, r);
    ContractionParams p;
    p.C = C;
    p.rho = 2.0 * C * (h + w);
    p.theta = theta;
    p.r = r;
    p.T = std::pow(p.rho / (2.0 * C * (h + std::pow(p.rho, 4))), 1.0 / theta);
    return p;
}

double desk_horizon(const ContractionParams& params, double max_horizon) {
    if (!(max_horizon > 0.0)) throw DomainError("desk_horizon: max_horizon must be positive");
    return std::min(params.T, max_horizon);
}

double empirical_contraction(const SpaceTimeField& u, const SpaceTimeField& v, const SpaceField& u0, bool dealias) {
    const double denom = yt_norm(u - v);
    if (denom == 0.0) throw DomainError("empirical_contraction: u and v coincide");
    return yt_norm(duhamel_map(u, u0, dealias) - duhamel_map(v, u0, dealias)) / denom;
}

}  // namespace airylab
