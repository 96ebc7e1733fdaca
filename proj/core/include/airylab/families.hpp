#pragma once

// Named generators for test data. A family stores generator parameters, not
// samples, so the same family can be realized on successively refined grids.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "airylab/grid.hpp"

namespace airylab {

/// amplitude * exp(-width (x - center)^2)
struct GaussianSpec {
    double amplitude = 1.0;
    double width = 1.0;
    double center = 0.0;
};

/// amplitude * exp(i k x) * exp(-width x^2)
struct ModulatedGaussianSpec {
    double amplitude = 1.0;
    double width = 1.0;
    double k = 1.0;
};

/// Traveling-wave profile phi_c(x - center), scaled by amplitude.
struct SolitonSpec {
    double amplitude = 1.0;
    double c = 1.0;
    double center = 0.0;
};

/// amplitude * exp(-width x^2) * (a_0 + sum_k a_k cos(kappa_k x) + b_k sin(kappa_k x)),
/// coefficients in [-1, 1] and frequencies in [0, max_frequency] drawn from a
/// 64-bit Mersenne twister seeded with `seed`.
struct RandomSpec {
    double amplitude = 1.0;
    double width = 1.0;
    double max_frequency = 3.0;
    std::size_t modes = 6;
    std::uint64_t seed = 1;
};

using GeneratorSpec = std::variant<GaussianSpec, ModulatedGaussianSpec, SolitonSpec, RandomSpec>;

struct NamedGenerator {
    std::string name;
    GeneratorSpec spec;
};

struct NamedDatum {
    std::string name;
    SpaceField field;
};

SpaceField realize(const GeneratorSpec& spec, const SpatialGrid& grid);

/// One-line description of a generator, e.g. "gaussian(A=1, a=1, x0=0)".
std::string describe(const GeneratorSpec& spec);

class FunctionFamily {
public:
    FunctionFamily() = default;
    FunctionFamily(std::string name, std::vector<NamedGenerator> members);

    const std::string& name() const noexcept { return name_; }
    const std::vector<NamedGenerator>& members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }

    std::vector<NamedDatum> realize(const SpatialGrid& grid) const;
    std::vector<std::uint64_t> seeds() const;
    std::string description() const;

    /// Only the Gaussian members.
    FunctionFamily gaussians() const;

    /// Ten smooth decaying data: four Gaussians, two modulated Gaussians, two
    /// solitons and two seeded random fields.
    static FunctionFamily standard();

    /// Five small real data for the nonlinear experiments: Gaussians of
    /// amplitude 1e-3, 0.05 and 0.2, a scaled soliton and a seeded random field.
    static FunctionFamily small_data();

private:
    std::string name_;
    std::vector<NamedGenerator> members_;
};

}  // namespace airylab
