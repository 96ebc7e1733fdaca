#include "airylab/evolution.hpp"

#include <cmath>
#include <sstream>

namespace airylab {

namespace {

void dealias_in_place(Spectrum& s) {
    const long cutoff = static_cast<long>(s.size() / 3);
    for (std::size_t i = 0; i < s.size(); ++i) {
        const long k = s.grid().mode(i);
        if (std::abs(k) > cutoff) s[i] = 0.0;
    }
}

bool all_finite(const Spectrum& s) {
    for (const auto& c : s.coeffs()) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    }
    return true;
}

// Right-hand side of the transformed system: -i xi (u^4)^ for real u.
Spectrum rhs(const Spectrum& u_hat, const std::vector<Complex>& minus_derivative, bool dealias) {
    SpaceField u = real_part(from_spectrum(u_hat));
    for (auto& v : u.values()) {
        const double a = v.real();
        const double a2 = a * a;
        v = Complex(a2 * a2, 0.0);
    }
    Spectrum p = to_spectrum(u);
    if (dealias) dealias_in_place(p);
    apply_multiplier_in_place(p, minus_derivative);
    return p;
}

}  // namespace

void SolverConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("SolverConfig: dt must be positive");
    if (substeps_per_frame < 1) throw DomainError("SolverConfig: substeps_per_frame must be >= 1");
}

Spectrum nonlinearity_spectrum(const SpaceField& f, bool dealias) {
    const double peak = f.max_abs();
    const double peak4 = peak * peak * peak * peak;
    if (!std::isfinite(peak4)) {
        std::ostringstream msg;
        msg << "nonlinearity: u^4 overflows (max |u| = " << peak << ")";
        throw NumericalError(msg.str());
    }
    const bool real = f.is_real();
    SpaceField p(f.grid());
    for (std::size_t j = 0; j < f.size(); ++j) {
        const Complex v2 = f[j] * f[j];
        p[j] = real ? Complex((v2 * v2).real(), 0.0) : v2 * v2;
    }
    Spectrum s = to_spectrum(p);
    if (dealias) dealias_in_place(s);
    apply_multiplier_in_place(s, symbols::derivative().on_grid(f.grid()));
    return s;
}

SpaceField nonlinearity(const SpaceField& f, bool dealias) {
    SpaceField out = from_spectrum(nonlinearity_spectrum(f, dealias));
    return f.is_real() ? real_part(std::move(out)) : out;
}

double soliton_profile(double c, double y) {
    const double amplitude = std::cbrt(2.5 * c);
    const double sech = 1.0 / std::cosh(1.5 * std::sqrt(c) * y);
    return amplitude * std::cbrt(sech * sech);
}

SpaceField soliton(const SolitonParams& params, const SpatialGrid& grid, double boundary_tol) {
    if (!(params.c > 0.0) || !std::isfinite(params.c)) throw DomainError("soliton: wave speed c must be positive");
    // Periodized by images so the sampled field is smooth across the wrap; the
    // images differ from the plain profile by at most the boundary value.
    const double L = grid.length();
    SpaceField phi = sample(
        [&](double x) {
            double v = 0.0;
            for (int k = -2; k <= 2; ++k) v += soliton_profile(params.c, x - params.x0 + k * L);
            return v;
        },
        grid);
    const double edge = std::max(soliton_profile(params.c, -0.5 * L - params.x0), soliton_profile(params.c, 0.5 * L - params.x0));
    if (edge > boundary_tol) {
        std::ostringstream msg;
        msg << "soliton: profile is " << edge << " at the domain boundary (> " << boundary_tol
            << "); enlarge the domain or increase c";
        throw DomainError(msg.str());
    }
    return phi;
}

double soliton_ode_residual(const SpaceField& phi, double c) {
    const MultiplierSymbol second("-xi^2", [](double xi) { return Complex(-xi * xi, 0.0); }, true, false);
    const SpaceField dd = apply_multiplier(phi, second);
    double worst = 0.0;
    for (std::size_t j = 0; j < phi.size(); ++j) {
        const Complex v = phi[j];
        worst = std::max(worst, std::abs(dd[j] - c * v + v * v * v * v));
    }
    return worst;
}

SpaceTimeField evolve_oracle(const SpaceField& u0, const TimeGrid& times, const SolverConfig& cfg) {
    cfg.validate();
    if (!u0.is_real()) throw DomainError("evolve_oracle: initial datum must be real-valued");
    const SpatialGrid& grid = u0.grid();
    const std::size_t n = grid.size();

    const double frame_dt = times.step();
    const auto by_dt = static_cast<std::size_t>(std::ceil(frame_dt / cfg.dt - 1e-9));
    const std::size_t substeps = std::max({cfg.substeps_per_frame, by_dt, std::size_t{1}});
    const double h = frame_dt / static_cast<double>(substeps);

    std::vector<Complex> minus_d = symbols::derivative().on_grid(grid);
    for (auto& v : minus_d) v = -v;
    std::vector<Complex> e_full(n), e_half(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = grid.wavenumber(i);
        e_full[i] = std::polar(1.0, h * xi * xi * xi);
        e_half[i] = std::polar(1.0, 0.5 * h * xi * xi * xi);
    }

    std::vector<SpaceField> frames;
    frames.reserve(times.n_nodes());
    frames.push_back(u0);
    Spectrum u_hat = to_spectrum(u0);
    Spectrum tmp(grid);
    std::size_t step_index = 0;

    for (std::size_t m = 1; m < times.n_nodes(); ++m) {
        for (std::size_t s = 0; s < substeps; ++s, ++step_index) {
            const Spectrum k1 = rhs(u_hat, minus_d, cfg.dealias);
            for (std::size_t i = 0; i < n; ++i) tmp[i] = e_half[i] * (u_hat[i] + 0.5 * h * k1[i]);
            const Spectrum k2 = rhs(tmp, minus_d, cfg.dealias);
            for (std::size_t i = 0; i < n; ++i) tmp[i] = e_half[i] * u_hat[i] + 0.5 * h * k2[i];
            const Spectrum k3 = rhs(tmp, minus_d, cfg.dealias);
            for (std::size_t i = 0; i < n; ++i) tmp[i] = e_full[i] * u_hat[i] + h * e_half[i] * k3[i];
            const Spectrum k4 = rhs(tmp, minus_d, cfg.dealias);
            for (std::size_t i = 0; i < n; ++i) {
                u_hat[i] = e_full[i] * u_hat[i] +
                           (h / 6.0) * (e_full[i] * k1[i] + 2.0 * e_half[i] * (k2[i] + k3[i]) + k4[i]);
            }
            if (!all_finite(u_hat)) {
                const double t_fail = times.node(m - 1) + static_cast<double>(s + 1) * h;
                std::ostringstream msg;
                msg << "evolve_oracle: state became non-finite at step " << step_index << " (t = " << t_fail << ")";
                throw SolverBreakdown(msg.str(), step_index, t_fail);
            }
        }
        frames.push_back(real_part(from_spectrum(u_hat)));
    }
    return SpaceTimeField(grid, times, std::move(frames));
}

}  // namespace airylab
