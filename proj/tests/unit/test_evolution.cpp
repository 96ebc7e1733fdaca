#include <doctest.h>

#include <cmath>

#include "airylab/errors.hpp"
#include "airylab/evolution.hpp"
#include "airylab/norms.hpp"
#include "airylab/spectral.hpp"

using namespace airylab;

namespace {
double rel_l2(const SpaceField& a, const SpaceField& b) {
    const Exponent two = Exponent::ratio(2);
    return lp_norm(a - b, two) / lp_norm(b, two);
}
SpaceField gauss(const SpatialGrid& g, double A, double a = 1.0) {
    return sample([=](double x) { return A * std::exp(-a * x * x); }, g);
}
double mass(const SpaceField& f) {
    double s = 0.0;
    for (const auto& v : f.values()) s += v.real();
    return s * f.grid().dx();
}
}  // namespace

TEST_CASE("nonlinearity of trivial fields") {
    const SpatialGrid g(64, 10.0);
    CHECK(SpaceField(g).max_abs() == 0.0);
    CHECK(nonlinearity(SpaceField(g)).max_abs() == 0.0);
    const SpaceField c = sample([](double) { return 1.7; }, g);
    CHECK(nonlinearity(c).max_abs() < 1e-12);
}

TEST_CASE("nonlinearity overflow is reported") {
    const SpatialGrid g(64, 10.0);
    const SpaceField big = gauss(g, 1e100);
    CHECK_THROWS_AS(nonlinearity(big), NumericalError);
}

TEST_CASE("soliton balances dispersion and nonlinearity") {
    const SpatialGrid g(1024, 64.0);
    const double c = 1.0;
    const SpaceField phi = soliton({c, 0.0}, g);
    const SpaceField rhs = c * derivative(phi) - derivative(derivative(derivative(phi)));
    CHECK(rel_l2(nonlinearity(phi, false), rhs) < 1e-6);
}

TEST_CASE("soliton profile") {
    CHECK(soliton_profile(1.0, 0.0) == doctest::Approx(std::cbrt(2.5)));
    CHECK(soliton_profile(8.0, 0.0) / soliton_profile(1.0, 0.0) == doctest::Approx(2.0));
    const SpatialGrid g(4096, 64.0);
    for (double c : {0.5, 1.0, 2.0, 4.0}) {
        const SpaceField phi = soliton({c, 0.0}, g);
        CHECK(phi.max_abs() == doctest::Approx(std::cbrt(2.5 * c)).epsilon(1e-12));
        CHECK(soliton_ode_residual(phi, c) < 1e-8);
    }
    CHECK_THROWS_AS(soliton({0.0, 0.0}, g), DomainError);
    CHECK_THROWS_AS(soliton({-1.0, 0.0}, g), DomainError);
    CHECK_THROWS_AS(soliton({0.1, 0.0}, make_grid(256, 16.0)), DomainError);
}

TEST_CASE("oracle evolution of zero stays zero") {
    const SpatialGrid g(64, 20.0);
    const SpaceTimeField u = evolve_oracle(SpaceField(g), make_time_grid(0.1, 4));
    for (const auto& f : u.frames()) CHECK(f.max_abs() == 0.0);
}

TEST_CASE("tiny data follow the Airy group") {
    const SpatialGrid g(512, 64.0);
    const TimeGrid t(1.0, 4);
    const SpaceField u0 = gauss(g, 1e-6);
    const SpaceTimeField u = evolve_oracle(u0, t, {1e-3, true, 1});
    const SpaceTimeField lin = airy_orbit(u0, t);
    CHECK(rel_l2(u.frame(4), lin.frame(4)) < 1e-8);
}

TEST_CASE("soliton translates at speed c") {
    const SpatialGrid g(1024, 64.0);
    const SpaceField phi = soliton({1.0, 0.0}, g);
    const SpaceTimeField u = evolve_oracle(phi, make_time_grid(1.0, 1), {1e-4, true, 1});
    CHECK(rel_l2(u.frame(1), soliton({1.0, 1.0}, g)) < 1e-6);
}

TEST_CASE("conservation and realness") {
    const SpatialGrid g(256, 40.0);
    const SpaceField u0 = gauss(g, 0.8, 1.5);
    const SpaceTimeField u = evolve_oracle(u0, make_time_grid(1.0, 8), {1e-3, true, 1});
    const double m0 = mass(u0);
    const double l0 = lp_norm(u0, Exponent::ratio(2));
    for (const auto& f : u.frames()) {
        CHECK(std::abs(mass(f) - m0) < 1e-10);
        CHECK(std::abs(lp_norm(f, Exponent::ratio(2)) - l0) / l0 < 1e-6);
        CHECK(f.is_real());
    }
}

TEST_CASE("fourth-order convergence in dt") {
    const SpatialGrid g(256, 40.0);
    const SpaceField phi = soliton({1.0, 0.0}, g);
    const TimeGrid t(0.2, 1);
    auto run = [&](double dt) { return evolve_oracle(phi, t, {dt, true, 1}).frame(1); };
    const SpaceField ref = run(2.5e-4 / 8);
    const double e1 = rel_l2(run(2.5e-4), ref);
    const double e2 = rel_l2(run(1.25e-4), ref);
    CHECK(e1 / e2 == doctest::Approx(16.0).epsilon(0.25));
}

TEST_CASE("breakdown names the failing step") {
    const SpatialGrid g(128, 20.0);
    const SpaceField u0 = gauss(g, 40.0, 4.0);
    try {
        evolve_oracle(u0, make_time_grid(1.0, 1), {1e-2, false, 1});
        FAIL("expected a breakdown");
    } catch (const SolverBreakdown& e) {
        CHECK(e.step() >= 1);
        CHECK(e.time() > 0.0);
        CHECK(std::string(e.what()).find("step") != std::string::npos);
    }
}

TEST_CASE("solver config and input validation") {
    CHECK_THROWS_AS((SolverConfig{0.0, true, 1}.validate()), DomainError);
    CHECK_THROWS_AS((SolverConfig{1e-3, true, 0}.validate()), DomainError);
    const SpatialGrid g(64, 20.0);
    const SpaceField complex_datum = sample([](double x) { return std::polar(std::exp(-x * x), x); }, g);
    CHECK_THROWS_AS(evolve_oracle(complex_datum, make_time_grid(0.1, 1)), DomainError);
}
