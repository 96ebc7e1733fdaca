#pragma once

// Weighted-space machinery: the commutator residual between |x|^r and the
// Airy group, its (1 + t) growth bound, and the persistence experiment in
// H^{1/3} intersected with L^2(|x|^{2r} dx).

#include <optional>
#include <string>
#include <vector>

#include "airylab/evolution.hpp"
#include "airylab/grid.hpp"
#include "airylab/norms.hpp"
#include "airylab/picard.hpp"

namespace airylab {

/// Data must be below this at the grid boundary before |x|^r is applied.
inline constexpr double kWeightBoundaryTol = 1e-12;

/// Oversampling factor used when forming |x|^r f.
inline constexpr std::size_t kWeightOversampling = 8;

/// |x|^r f on the fundamental domain, projected onto the grid's Fourier modes.
/// The cusp of |x|^r at 0 has a slowly decaying spectrum; sampling the product
/// directly would fold that tail back onto the resolved modes. Instead the
/// trigonometric interpolant of f is multiplied on a grid kWeightOversampling
/// times finer and the result truncated to the modes |k| < n/2 (Nyquist
/// coefficient zero). r = 0 returns f.
SpaceField times_abs_x_power(const SpaceField& f, double r);

/// exp(+t d^3) [ |x|^r exp(-t d^3) u0 - exp(-t d^3)(|x|^r u0) ], the field
/// that completes the commutation of |x|^r past the Airy group:
///
///     |x|^r E(t) u0 = E(t)(|x|^r u0) + E(t) residual.
///
/// Requires 0 < r <= 1/6 and |u0| <= boundary_tol at both ends of the grid.
SpaceField flp_residual(const SpaceField& u0, double r, double t, double boundary_tol = kWeightBoundaryTol);

struct FlpReport {
    double r = 0.0;
    std::vector<double> times;
    /// |residual(t)|_{L^2}
    std::vector<double> residual_norms;
    /// (1 + t)(|u0|_{L^2} + |D^{2r} u0|_{L^2})
    std::vector<double> bound_values;
    /// max_t residual / bound (0 for the zero datum).
    double max_ratio = 0.0;
};

FlpReport flp_bound_check(const SpaceField& u0, double r, const TimeGrid& times,
                          double boundary_tol = kWeightBoundaryTol);

enum class SolverKind { Picard, Oracle };

std::string to_string(SolverKind kind);
SolverKind parse_solver_kind(const std::string& name);

struct PersistenceOptions {
    SolverKind solver = SolverKind::Picard;
    /// Scheme constant used for rho and the ceilings.
    double C = 1.0;
    /// Time exponent of the weighted self-mapping condition.
    double theta = 0.5;
    PicardOptions picard{};
    SolverConfig oracle{};
    double boundary_tol = kWeightBoundaryTol;
};

struct PersistenceReport {
    double r = 0.0;
    SolverKind solver = SolverKind::Picard;
    std::vector<double> times;
    std::vector<double> l2_norms;
    std::vector<double> h13_norms;
    std::vector<double> weighted_norms;
    MuVector mu;
    double xt_norm = 0.0;

    ContractionParams params;
    /// max_t |residual(t)|_{L^2} / ((1 + t) |u0|_{H^{1/3}}); 0 for r = 0.
    double flp_constant = 0.0;
    /// |u0|_{H^{1/3}} + C T^{1/2} rho^4.
    double h13_ceiling = 0.0;
    /// | |x|^r u0 | + K (1 + T) |u0|_{H^{1/3}}, the linear part of the weighted bound.
    double linear_weighted_ceiling = 0.0;
    /// linear_weighted_ceiling + C T^theta rho^4.
    double weighted_ceiling = 0.0;

    std::optional<PicardDiagnostics> picard;
    /// "ok", or the reason the solver stopped.
    std::string status = "ok";
    std::optional<double> failure_time;
    bool verdict = false;
};

/// Evolves u0 on `times`, records the H^{1/3}, L^2 and weighted norms at every
/// node, and sets verdict iff every tracked norm is finite and below its ceiling.
/// Solver failures produce verdict = false, never an exception.
PersistenceReport persistence_run(const SpaceField& u0, double r, const TimeGrid& times,
                                  const PersistenceOptions& opts = {});

}  // namespace airylab
