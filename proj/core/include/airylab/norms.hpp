#pragma once

// Lebesgue, mixed space-time, Sobolev and weighted norms, and the composite
// Y_T / X_T functionals of the contraction argument.

#include <array>
#include <string>
#include <string_view>

#include "airylab/grid.hpp"

namespace airylab {

/// A Lebesgue exponent in (0, inf], kept as an exact rational (or infinity)
/// so that values like 24/11 survive config files and reports unchanged.
class Exponent {
public:
    static Exponent ratio(long num, long den = 1);
    static Exponent infinity() noexcept { return Exponent(); }
    /// Parses "8", "24/11", "inf".
    static Exponent parse(std::string_view text);

    bool is_infinite() const noexcept { return den_ == 0; }
    long num() const noexcept { return num_; }
    long den() const noexcept { return den_; }
    double value() const noexcept;
    std::string to_string() const;

    friend bool operator==(const Exponent&, const Exponent&) = default;

private:
    Exponent() = default;
    long num_ = 1;
    long den_ = 0;
};

enum class NormOrder {
    XOuter,  ///< L^p_x L^q_T: time norm inside, space norm outside.
    TOuter,  ///< L^q_T L^p_x: space norm inside, time norm outside.
};

struct MixedNormSpec {
    Exponent p;  ///< spatial exponent
    Exponent q;  ///< temporal exponent
    NormOrder order = NormOrder::XOuter;

    std::string to_string() const;
};

/// Fixed regularity s = 1/3 and weight exponent r of the weighted space.
struct SobolevParams {
    double s = 1.0 / 3.0;
    double r = 0.0;

    /// Throws unless 0 <= r <= 1/6 and r <= s/2.
    void validate() const;
};

/// The six functionals whose sum is the Y_T norm.
struct MuVector {
    std::array<double, 6> mu{};

    double operator[](std::size_t i) const { return mu[i]; }
    double& operator[](std::size_t i) { return mu[i]; }
    double sum() const noexcept;
};

/// Largest admissible weight exponent.
inline constexpr double kMaxWeightExponent = 1.0 / 6.0;

/// (sum_j |f_j|^p dx)^(1/p), or max_j |f_j| for p = inf.
double lp_norm(const SpaceField& f, Exponent p);

/// Trapezoid-rule L^q norm of node values over the time grid (max for q = inf).
double time_norm(std::span<const double> values, const TimeGrid& times, Exponent q);

double mixed_norm(const SpaceTimeField& u, const MixedNormSpec& spec);

/// Discrete Plancherel form: (L * sum_k (1 + xi_k^2)^s |c_k|^2)^(1/2).
/// For s = 0 this equals lp_norm(f, 2).
double sobolev_norm(const SpaceField& f, double s);

/// (sum_j |x_j|^(2r) |f_j|^2 dx)^(1/2) on the fundamental domain; |0|^0 = 1.
double weighted_l2(const SpaceField& f, double r);

/// max over frames of weighted_l2.
double sup_weighted_l2(const SpaceTimeField& u, double r);

/// mu_1 = sup_t |u|_{H^{1/3}}, mu_2 = |d_x u|_{L^24_x L^{8/3}_T}, mu_3 = |D^{1/3} u|_{L^8_x L^8_T},
/// mu_4 = |D^{1/3} d_x u|_{L^inf_x L^2_T}, mu_5 = |u|_{L^6_x L^inf_T}, mu_6 = |d_x u|_{L^inf_x L^2_T}.
MuVector mu_norms(const SpaceTimeField& u);

double yt_norm(const SpaceTimeField& u);

/// yt_norm(u) + sup_t weighted_l2(u(t), r); requires 0 <= r <= 1/6.
double xt_norm(const SpaceTimeField& u, double r);

/// The exponent pairs of mu_2..mu_6.
namespace mu_specs {
MixedNormSpec mu2();
MixedNormSpec mu3();
MixedNormSpec mu4();
MixedNormSpec mu5();
MixedNormSpec mu6();
}  // namespace mu_specs

}  // namespace airylab
