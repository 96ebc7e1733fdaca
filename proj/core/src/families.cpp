#include "airylab/families.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "airylab/evolution.hpp"

namespace airylab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Uniform double in [lo, hi] from the top 53 bits; independent of the
// standard library's distribution implementations.
double uniform(std::mt19937_64& gen, double lo, double hi) {
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

struct RandomCoefficients {
    double a0;
    std::vector<double> a, b, kappa;
};

RandomCoefficients draw(const RandomSpec& s) {
    std::mt19937_64 gen(s.seed);
    RandomCoefficients c;
    c.a0 = uniform(gen, -1.0, 1.0);
    for (std::size_t k = 0; k < s.modes; ++k) {
        c.a.push_back(uniform(gen, -1.0, 1.0));
        c.b.push_back(uniform(gen, -1.0, 1.0));
        c.kappa.push_back(uniform(gen, 0.0, s.max_frequency));
    }
    return c;
}

}  // namespace

SpaceField realize(const GeneratorSpec& spec, const SpatialGrid& grid) {
    return std::visit(
        overloaded{
            [&](const GaussianSpec& g) {
                return sample([&](double x) { return g.amplitude * std::exp(-g.width * (x - g.center) * (x - g.center)); },
                              grid);
            },
            [&](const ModulatedGaussianSpec& g) {
                return sample([&](double x) { return g.amplitude * std::polar(std::exp(-g.width * x * x), g.k * x); },
                              grid);
            },
            [&](const SolitonSpec& s) {
                return s.amplitude * soliton(SolitonParams{s.c, s.center}, grid);
            },
            [&](const RandomSpec& s) {
                const RandomCoefficients c = draw(s);
                return sample(
                    [&](double x) {
                        double v = c.a0;
                        for (std::size_t k = 0; k < c.a.size(); ++k) {
                            v += c.a[k] * std::cos(c.kappa[k] * x) + c.b[k] * std::sin(c.kappa[k] * x);
                        }
                        return s.amplitude * std::exp(-s.width * x * x) * v;
                    },
                    grid);
            },
        },
        spec);
}

std::string describe(const GeneratorSpec& spec) {
    std::ostringstream o;
    std::visit(overloaded{
                   [&](const GaussianSpec& g) {
                       o << "gaussian(A=" << g.amplitude << ", a=" << g.width << ", x0=" << g.center << ")";
                   },
                   [&](const ModulatedGaussianSpec& g) {
                       o << "modulated_gaussian(A=" << g.amplitude << ", a=" << g.width << ", k=" << g.k << ")";
                   },
                   [&](const SolitonSpec& s) {
                       o << "soliton(A=" << s.amplitude << ", c=" << s.c << ", x0=" << s.center << ")";
                   },
                   [&](const RandomSpec& s) {
                       o << "random(A=" << s.amplitude << ", a=" << s.width << ", kmax=" << s.max_frequency
                         << ", modes=" << s.modes << ", seed=" << s.seed << ")";
                   },
               },
               spec);
    return o.str();
}

FunctionFamily::FunctionFamily(std::string name, std::vector<NamedGenerator> members)
    : name_(std::move(name)), members_(std::move(members)) {}

std::vector<NamedDatum> FunctionFamily::realize(const SpatialGrid& grid) const {
    std::vector<NamedDatum> out;
    out.reserve(members_.size());
    for (const auto& m : members_) out.push_back({m.name, airylab::realize(m.spec, grid)});
    return out;
}

std::vector<std::uint64_t> FunctionFamily::seeds() const {
    std::vector<std::uint64_t> s;
    for (const auto& m : members_) {
        if (const auto* r = std::get_if<RandomSpec>(&m.spec)) s.push_back(r->seed);
    }
    return s;
}

std::string FunctionFamily::description() const {
    std::ostringstream o;
    o << name_ << ": ";
    for (std::size_t i = 0; i < members_.size(); ++i) {
        if (i) o << "; ";
        o << members_[i].name << "=" << describe(members_[i].spec);
    }
    return o.str();
}

FunctionFamily FunctionFamily::gaussians() const {
    std::vector<NamedGenerator> g;
    for (const auto& m : members_) {
        if (std::holds_alternative<GaussianSpec>(m.spec)) g.push_back(m);
    }
    return FunctionFamily(name_ + "/gaussians", std::move(g));
}

FunctionFamily FunctionFamily::standard() {
    return FunctionFamily("standard",
                          {
                              {"gauss_unit", GaussianSpec{1.0, 1.0, 0.0}},
                              {"gauss_wide", GaussianSpec{1.0, 0.5, 2.0}},
                              {"gauss_narrow", GaussianSpec{1.0, 2.0, 0.0}},
                              {"gauss_shifted", GaussianSpec{2.0, 1.0, -3.0}},
                              {"modulated_k3", ModulatedGaussianSpec{1.0, 1.0, 3.0}},
                              {"modulated_km5", ModulatedGaussianSpec{1.0, 2.0, -5.0}},
                              {"soliton_c1", SolitonSpec{1.0, 1.0, 0.0}},
                              {"soliton_c2", SolitonSpec{1.0, 2.0, 1.0}},
                              {"random_s1", RandomSpec{1.0, 1.0, 3.0, 6, 1}},
                              {"random_s2", RandomSpec{1.0, 0.5, 2.0, 6, 2}},
                          });
}

FunctionFamily FunctionFamily::small_data() {
    return FunctionFamily("small",
                          {
                              {"tiny_gaussian", GaussianSpec{1e-3, 1.0, 0.0}},
                              {"small_gaussian", GaussianSpec{0.05, 1.0, 0.0}},
                              {"moderate_gaussian", GaussianSpec{0.2, 1.0, 0.0}},
                              {"scaled_soliton", SolitonSpec{0.05, 1.0, 0.0}},
                              {"small_random", RandomSpec{0.05, 1.0, 2.0, 4, 7}},
                          });
}

}  // namespace airylab
