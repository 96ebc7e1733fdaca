#pragma once

// The Duhamel map
//
//     Phi(u)(t) = exp(-t d^3) u0 - int_0^t exp(-(t-s) d^3) d_x(u^4)(s) ds,
//
// Picard iteration to its fixed point, contraction diagnostics, and the
// (rho, T) choices that make Phi a self-map of the working ball.

#include <string>
#include <vector>

#include "airylab/grid.hpp"

namespace airylab {

/// Norm in which Picard increments are measured: Y_T, or X_T with weight r.
struct PicardNorm {
    enum class Kind { YT, XT };
    Kind kind = Kind::YT;
    double r = 0.0;

    static PicardNorm yt() { return {Kind::YT, 0.0}; }
    static PicardNorm xt(double r) { return {Kind::XT, r}; }

    double operator()(const SpaceTimeField& u) const;
    std::string to_string() const;
};

struct PicardDiagnostics {
    /// |u^(n+1) - u^(n)| in `norm`, one entry per iteration.
    std::vector<double> increments;
    /// increments[n+1] / increments[n].
    std::vector<double> contraction_factors;
    /// Norm of every iterate u^(0), u^(1), ... in `norm`.
    std::vector<double> iterate_norms;
    PicardNorm norm;
    bool converged = false;
    std::size_t iterations = 0;
    /// "converged", "max_iter", "diverged" or "non_finite".
    std::string status;
};

struct PicardOptions {
    double tol = 1e-12;
    std::size_t max_iter = 50;
    PicardNorm norm = PicardNorm::yt();
    bool dealias = true;
};

struct PicardResult {
    SpaceTimeField solution;
    PicardDiagnostics diagnostics;
};

/// Parameters of the contraction ball and horizon.
struct ContractionParams {
    double C = 1.0;
    double rho = 0.0;
    double T = 0.0;
    double theta = 0.5;
    double r = 0.0;

    /// Left side of the self-mapping condition minus rho (<= 0 when it holds).
    /// Uses rho/2 + C T^theta rho^4 for r = 0 and rho/2 + C T^theta (|u0|_{H^{1/3}} + rho^4) otherwise.
    double condition_slack(double h13_norm_u0) const;
};

/// Frame m = airy_propagate(u0, t_m) minus the trapezoid Duhamel integral of
/// d_x(u^4) over nodes 0..m. Frame 0 is u0. Grids of u and u0 must match.
SpaceTimeField duhamel_map(const SpaceTimeField& u, const SpaceField& u0, bool dealias = true);

/// Iterates u^(0) = airy_orbit(u0), u^(n+1) = duhamel_map(u^(n), u0) until the
/// increment drops below tol, max_iter is reached, or the increment grows on
/// three consecutive iterations (reported as divergence, not thrown).
PicardResult picard_solve(const SpaceField& u0, const TimeGrid& times, const PicardOptions& opts = {});

/// rho = 2 C |u0|_{H^{1/3}}, T = (1 / (2 C rho^3))^2, theta = 1/2, r = 0.
ContractionParams select_parameters_unweighted(const SpaceField& u0, double C);

/// rho = 2 C (|u0|_{H^{1/3}} + | |x|^r u0 |_{L^2}),
/// T = (rho / (2 C (|u0|_{H^{1/3}} + rho^4)))^(1/theta). Requires 0 < r <= 1/6, 0 < theta <= 1.
ContractionParams select_parameters_weighted(const SpaceField& u0, double C, double r, double theta);

/// Selected horizon clipped to max_horizon, the horizon actually simulated.
double desk_horizon(const ContractionParams& params, double max_horizon);

/// Default scheme constant C: calibrate_constant over the standard family and
/// every registry case on default_estimate_grid() with the default context.
/// Regenerate with `airylab calibrate` after changing any estimate.
inline constexpr double kDefaultSchemeConstant = 1.3881524943838228;

/// yt_norm(Phi(u) - Phi(v)) / yt_norm(u - v) with Phi built on datum u0.
double empirical_contraction(const SpaceTimeField& u, const SpaceTimeField& v, const SpaceField& u0,
                             bool dealias = true);

}  // namespace airylab
