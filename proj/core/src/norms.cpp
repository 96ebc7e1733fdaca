#include "airylab/norms.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include "airylab/spectral.hpp"

namespace airylab {

namespace {

// (sum_i w_i |v_i|^p)^(1/p), scaled by max |v| so large exponents neither
// underflow nor overflow.
double weighted_power_sum_norm(std::span<const double> abs_values, std::span<const double> weights, double p) {
    double peak = 0.0;
    for (double v : abs_values) peak = std::max(peak, v);
    if (peak == 0.0) return 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < abs_values.size(); ++i) {
        if (abs_values[i] != 0.0) acc += weights[i] * std::pow(abs_values[i] / peak, p);
    }
    return peak * std::pow(acc, 1.0 / p);
}

double max_of(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, x);
    return m;
}

long gcd_long(long a, long b) { return std::gcd(a, b); }

}  // namespace

Exponent Exponent::ratio(long num, long den) {
    if (num <= 0 || den <= 0) throw DomainError("Exponent: numerator and denominator must be positive");
    const long g = gcd_long(num, den);
    Exponent e;
    e.num_ = num / g;
    e.den_ = den / g;
    return e;
}

Exponent Exponent::parse(std::string_view text) {
    if (text == "inf" || text == "infinity") return infinity();
    const auto slash = text.find('/');
    auto parse_long = [&](std::string_view s) {
        long v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size()) {
            throw DomainError("Exponent: cannot parse '" + std::string(text) + "'");
        }
        return v;
    };
    if (slash == std::string_view::npos) return ratio(parse_long(text), 1);
    return ratio(parse_long(text.substr(0, slash)), parse_long(text.substr(slash + 1)));
}

double Exponent::value() const noexcept {
    if (is_infinite()) return std::numeric_limits<double>::infinity();
    return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Exponent::to_string() const {
    if (is_infinite()) return "inf";
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::string MixedNormSpec::to_string() const {
    if (order == NormOrder::XOuter) return "L^" + p.to_string() + "_x L^" + q.to_string() + "_T";
    return "L^" + q.to_string() + "_T L^" + p.to_string() + "_x";
}

void SobolevParams::validate() const {
    if (!(r >= 0.0 && r <= kMaxWeightExponent)) {
        throw DomainError("weight exponent r must lie in [0, 1/6]");
    }
    if (!(r <= 0.5 * s)) throw DomainError("weight exponent r must satisfy r <= s/2");
}

double MuVector::sum() const noexcept { return std::accumulate(mu.begin(), mu.end(), 0.0); }

double lp_norm(const SpaceField& f, Exponent p) {
    std::vector<double> a(f.size());
    for (std::size_t j = 0; j < a.size(); ++j) a[j] = std::abs(f[j]);
    if (p.is_infinite()) return max_of(a);
    const std::vector<double> w(a.size(), f.grid().dx());
    return weighted_power_sum_norm(a, w, p.value());
}

double time_norm(std::span<const double> values, const TimeGrid& times, Exponent q) {
    if (values.size() != times.n_nodes()) throw DomainError("time_norm: need one value per time node");
    std::vector<double> a(values.size());
    for (std::size_t m = 0; m < a.size(); ++m) a[m] = std::abs(values[m]);
    if (q.is_infinite()) return max_of(a);
    return weighted_power_sum_norm(a, times.trapezoid_weights(), q.value());
}

double mixed_norm(const SpaceTimeField& u, const MixedNormSpec& spec) {
    const std::size_t n = u.grid().size();
    const std::size_t nt = u.n_frames();
    if (spec.order == NormOrder::XOuter) {
        std::vector<double> column(nt);
        std::vector<double> inner(n);
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t m = 0; m < nt; ++m) column[m] = std::abs(u.at(m, j));
            inner[j] = time_norm(column, u.times(), spec.q);
        }
        if (spec.p.is_infinite()) return max_of(inner);
        const std::vector<double> w(n, u.grid().dx());
        return weighted_power_sum_norm(inner, w, spec.p.value());
    }
    std::vector<double> inner(nt);
    for (std::size_t m = 0; m < nt; ++m) inner[m] = lp_norm(u.frame(m), spec.p);
    return time_norm(inner, u.times(), spec.q);
}

namespace {

double sobolev_from_spectrum(const Spectrum& c, double s) {
    const auto xi = c.grid().wavenumbers();
    double acc = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double w = (s == 0.0) ? 1.0 : std::pow(1.0 + xi[i] * xi[i], s);
        acc += w * std::norm(c[i]);
    }
    return std::sqrt(c.grid().length() * acc);
}

}  // namespace

double sobolev_norm(const SpaceField& f, double s) { return sobolev_from_spectrum(to_spectrum(f), s); }

double weighted_l2(const SpaceField& f, double r) {
    if (!(r >= 0.0)) throw DomainError("weighted_l2: r must be >= 0");
    if (r == 0.0) return lp_norm(f, Exponent::ratio(2));
    const auto& g = f.grid();
    double acc = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) {
        const double w = std::pow(std::abs(g.x(j)), 2.0 * r);
        acc += w * std::norm(f[j]);
    }
    return std::sqrt(acc * g.dx());
}

double sup_weighted_l2(const SpaceTimeField& u, double r) {
    double m = 0.0;
    for (const auto& fr : u.frames()) m = std::max(m, weighted_l2(fr, r));
    return m;
}

namespace mu_specs {
MixedNormSpec mu2() { return {Exponent::ratio(24), Exponent::ratio(8, 3), NormOrder::XOuter}; }
MixedNormSpec mu3() { return {Exponent::ratio(8), Exponent::ratio(8), NormOrder::XOuter}; }
MixedNormSpec mu4() { return {Exponent::infinity(), Exponent::ratio(2), NormOrder::XOuter}; }
MixedNormSpec mu5() { return {Exponent::ratio(6), Exponent::infinity(), NormOrder::XOuter}; }
MixedNormSpec mu6() { return {Exponent::infinity(), Exponent::ratio(2), NormOrder::XOuter}; }
}  // namespace mu_specs

MuVector mu_norms(const SpaceTimeField& u) {
    const SpatialGrid& grid = u.grid();
    const auto d1 = symbols::derivative().on_grid(grid);
    const auto d13 = symbols::frac_deriv(1.0 / 3.0).on_grid(grid);
    const auto d13d1 = (symbols::frac_deriv(1.0 / 3.0) * symbols::derivative()).on_grid(grid);
    const bool keep_real = u.is_real();

    std::vector<SpaceField> dx, dfrac, dfrac_dx;
    dx.reserve(u.n_frames());
    dfrac.reserve(u.n_frames());
    dfrac_dx.reserve(u.n_frames());
    double sup_h13 = 0.0;
    auto derived = [&](const Spectrum& s, std::span<const Complex> sym) {
        Spectrum t = s;
        apply_multiplier_in_place(t, sym);
        SpaceField f = from_spectrum(t);
        return keep_real ? real_part(std::move(f)) : f;
    };
    for (const auto& fr : u.frames()) {
        const Spectrum s = to_spectrum(fr);
        dx.push_back(derived(s, d1));
        dfrac.push_back(derived(s, d13));
        dfrac_dx.push_back(derived(s, d13d1));
        sup_h13 = std::max(sup_h13, sobolev_from_spectrum(s, 1.0 / 3.0));
    }
    const SpaceTimeField ux(grid, u.times(), std::move(dx));
    const SpaceTimeField u13(grid, u.times(), std::move(dfrac));
    const SpaceTimeField u13x(grid, u.times(), std::move(dfrac_dx));

    MuVector v;
    v[0] = sup_h13;
    v[1] = mixed_norm(ux, mu_specs::mu2());
    v[2] = mixed_norm(u13, mu_specs::mu3());
    v[3] = mixed_norm(u13x, mu_specs::mu4());
    v[4] = mixed_norm(u, mu_specs::mu5());
    v[5] = mixed_norm(ux, mu_specs::mu6());
    return v;
}

double yt_norm(const SpaceTimeField& u) { return mu_norms(u).sum(); }

double xt_norm(const SpaceTimeField& u, double r) {
    if (!(r >= 0.0 && r <= kMaxWeightExponent)) throw DomainError("xt_norm: r must lie in [0, 1/6]");
    return yt_norm(u) + sup_weighted_l2(u, r);
}

}  // namespace airylab
