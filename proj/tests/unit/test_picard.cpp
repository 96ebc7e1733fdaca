#include <doctest.h>

#include <cmath>

#include "airylab/errors.hpp"
#include "airylab/evolution.hpp"
#include "airylab/norms.hpp"
#include "airylab/picard.hpp"
#include "airylab/spectral.hpp"

using namespace airylab;

namespace {
SpaceField gauss(const SpatialGrid& g, double A, double x0 = 0.0) {
    return sample([=](double x) { return A * std::exp(-(x - x0) * (x - x0)); }, g);
}
}  // namespace

TEST_CASE("zero datum is a fixed point") {
    const SpatialGrid g(128, 32.0);
    const PicardResult res = picard_solve(SpaceField(g), make_time_grid(0.5, 16));
    CHECK(res.diagnostics.converged);
    CHECK(res.diagnostics.iterations == 1);
    CHECK(res.diagnostics.status == "converged");
    for (const auto& f : res.solution.frames()) CHECK(f.max_abs() == 0.0);
}

TEST_CASE("duhamel map of zero nonlinearity is the free flow") {
    const SpatialGrid g(128, 32.0);
    const TimeGrid t(0.5, 16);
    const SpaceField u0 = gauss(g, 1.0);
    const SpaceTimeField phi = duhamel_map(airy_orbit(SpaceField(g), t), u0);
    const SpaceTimeField lin = airy_orbit(u0, t);
    for (std::size_t m = 0; m < t.n_nodes(); ++m) CHECK((phi.frame(m) - lin.frame(m)).max_abs() == 0.0);
    CHECK_THROWS_AS(duhamel_map(lin, SpaceField(make_grid(64, 32.0))), DomainError);
}

TEST_CASE("small data converge geometrically to a fixed point") {
    const SpatialGrid g(256, 40.0);
    const TimeGrid t(0.5, 64);
    const SpaceField u0 = gauss(g, 0.05);
    const PicardResult res = picard_solve(u0, t);
    REQUIRE(res.diagnostics.converged);
    CHECK(res.diagnostics.increments.back() < 1e-12);
    for (double q : res.diagnostics.contraction_factors) CHECK(q < 1.0);
    CHECK(res.diagnostics.iterate_norms.size() == res.diagnostics.increments.size() + 1);
    const SpaceTimeField again = duhamel_map(res.solution, u0);
    CHECK(yt_norm(again - res.solution) < 1e-11);
    CHECK(res.solution.is_real());
}

TEST_CASE("fixed point agrees with the RK4 oracle") {
    const SpatialGrid g(256, 40.0);
    const TimeGrid t(0.25, 128);
    const SpaceField u0 = gauss(g, 0.3);
    const PicardResult res = picard_solve(u0, t);
    REQUIRE(res.diagnostics.converged);
    const SpaceTimeField ref = evolve_oracle(u0, t, {1e-3, true, 1});
    // Trapezoid Duhamel quadrature is second order in the frame spacing.
    const Exponent two = Exponent::ratio(2);
    CHECK(lp_norm(res.solution.frame(128) - ref.frame(128), two) / lp_norm(ref.frame(128), two) < 1e-5);
}

TEST_CASE("large data are reported, not thrown") {
    const SpatialGrid g(128, 20.0);
    PicardOptions opts;
    opts.max_iter = 30;
    const PicardResult res = picard_solve(gauss(g, 6.0), make_time_grid(1.0, 32), opts);
    CHECK_FALSE(res.diagnostics.converged);
    CHECK(res.diagnostics.status != "converged");
}

TEST_CASE("parameter selection formulas") {
    const SpatialGrid g(512, 40.0);
    const SpaceField u0 = gauss(g, 0.1);
    const double C = 1.5;
    const double h = sobolev_norm(u0, 1.0 / 3.0);

    const ContractionParams p = select_parameters_unweighted(u0, C);
    CHECK(p.rho == doctest::Approx(2 * C * h).epsilon(1e-15));
    CHECK(p.T == doctest::Approx(std::pow(1.0 / (2 * C * std::pow(p.rho, 3)), 2)).epsilon(1e-14));
    CHECK(p.theta == 0.5);
    CHECK(p.r == 0.0);
    CHECK(p.condition_slack(h) <= 1e-15 * p.rho);

    const double r = 1.0 / 12.0;
    const ContractionParams w = select_parameters_weighted(u0, C, r, 0.5);
    CHECK(w.rho == doctest::Approx(2 * C * (h + weighted_l2(u0, r))).epsilon(1e-15));
    CHECK(w.T == doctest::Approx(std::pow(w.rho / (2 * C * (h + std::pow(w.rho, 4))), 2.0)).epsilon(1e-14));
    CHECK(w.condition_slack(h) <= 1e-15 * w.rho);

    CHECK(desk_horizon(p, 1.0) == std::min(p.T, 1.0));
    CHECK_THROWS_AS(desk_horizon(p, 0.0), DomainError);
    CHECK_THROWS_AS(select_parameters_unweighted(SpaceField(g), C), DomainError);
    CHECK_THROWS_AS(select_parameters_unweighted(u0, 0.0), DomainError);
    CHECK_THROWS_AS(select_parameters_weighted(u0, C, 0.0, 0.5), DomainError);
    CHECK_THROWS_AS(select_parameters_weighted(u0, C, 0.2, 0.5), DomainError);
    CHECK_THROWS_AS(select_parameters_weighted(u0, C, r, 0.0), DomainError);
}

TEST_CASE("empirical contraction on the ball") {
    const SpatialGrid g(256, 40.0);
    const TimeGrid t(1.0, 64);
    const SpaceField u0 = gauss(g, 0.05);
    const SpaceTimeField u = 0.5 * airy_orbit(u0, t);
    const SpaceTimeField v = 0.5 * airy_orbit(gauss(g, 0.05, 1.0), t);
    const double q = empirical_contraction(u, v, u0);
    CHECK(q > 0.0);
    CHECK(q < 0.5);
    CHECK_THROWS_AS(empirical_contraction(u, u, u0), DomainError);
}

TEST_CASE("picard norm selection") {
    CHECK(PicardNorm::yt().to_string() == "YT");
    CHECK(PicardNorm::xt(1.0 / 6.0).to_string().rfind("XT", 0) == 0);
    const SpatialGrid g(128, 30.0);
    const SpaceTimeField u = airy_orbit(gauss(g, 1.0), make_time_grid(0.2, 8));
    CHECK(PicardNorm::yt()(u) == yt_norm(u));
    CHECK(PicardNorm::xt(0.1)(u) == xt_norm(u, 0.1));
    PicardOptions bad;
    bad.tol = 0.0;
    CHECK_THROWS_AS(picard_solve(SpaceField(g), make_time_grid(0.2, 8), bad), DomainError);
}
