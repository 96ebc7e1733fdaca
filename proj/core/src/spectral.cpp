#include "airylab/spectral.hpp"

#include <cmath>
#include <sstream>

#include "fft.hpp"

namespace airylab {

namespace {

// (-1)^k for the centered index i (k = i - n/2).
double mode_sign(std::size_t i, std::size_t n) {
    const long k = static_cast<long>(i) - static_cast<long>(n / 2);
    return (k % 2 == 0) ? 1.0 : -1.0;
}

SpaceField project(SpaceField f, bool keep_real) {
    if (keep_real) {
        for (auto& v : f.values()) v = Complex(v.real(), 0.0);
    }
    return f;
}

// Symbol values for exp(i t xi^3) on the grid; the Airy symbol has no
// Nyquist special case because real projection handles that mode.
std::vector<Complex> airy_values(const SpatialGrid& grid, double t) {
    std::vector<Complex> e(grid.size());
    const auto xi = grid.wavenumbers();
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::polar(1.0, t * xi[i] * xi[i] * xi[i]);
    return e;
}

}  // namespace

Spectrum::Spectrum(SpatialGrid grid) : grid_(std::move(grid)), coeffs_(grid_.size()) {}

Spectrum::Spectrum(SpatialGrid grid, std::vector<Complex> coeffs)
    : grid_(std::move(grid)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != grid_.size()) throw DomainError("Spectrum: coefficient count does not match grid");
}

Spectrum to_spectrum(const SpaceField& f) {
    const std::size_t n = f.size();
    const auto plan = detail::FftPlan::get(n);
    std::vector<Complex> raw(n);
    plan->forward(f.values().data(), raw.data());
    Spectrum s(f.grid());
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        s[i] = raw[(i + n / 2) % n] * (mode_sign(i, n) * inv_n);
    }
    return s;
}

SpaceField from_spectrum(const Spectrum& s) {
    const std::size_t n = s.size();
    const auto plan = detail::FftPlan::get(n);
    std::vector<Complex> raw(n);
    for (std::size_t i = 0; i < n; ++i) raw[(i + n / 2) % n] = s[i] * mode_sign(i, n);
    SpaceField f(s.grid());
    plan->backward(raw.data(), f.values().data());
    return f;
}

SpaceField real_part(SpaceField f) { return project(std::move(f), true); }

MultiplierSymbol::MultiplierSymbol(std::string label, Rule rule, bool real_preserving, bool zero_nyquist)
    : label_(std::move(label)), rule_(std::move(rule)), real_preserving_(real_preserving), zero_nyquist_(zero_nyquist) {}

std::vector<Complex> MultiplierSymbol::on_grid(const SpatialGrid& grid) const {
    std::vector<Complex> values(grid.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const Complex v = rule_(grid.wavenumber(i));
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            std::ostringstream msg;
            msg << "multiplier '" << label_ << "' is not finite at xi = " << grid.wavenumber(i);
            throw DomainError(msg.str());
        }
        values[i] = v;
    }
    if (zero_nyquist_) values[SpatialGrid::nyquist_index()] = 0.0;
    return values;
}

MultiplierSymbol operator*(const MultiplierSymbol& a, const MultiplierSymbol& b) {
    return MultiplierSymbol(a.label_ + "*" + b.label_,
                            [ra = a.rule_, rb = b.rule_](double xi) { return ra(xi) * rb(xi); },
                            a.real_preserving_ && b.real_preserving_, a.zero_nyquist_ || b.zero_nyquist_);
}

namespace symbols {

MultiplierSymbol identity() {
    return MultiplierSymbol("1", [](double) { return Complex(1.0, 0.0); }, true, false);
}

MultiplierSymbol derivative() {
    return MultiplierSymbol("i*xi", [](double xi) { return Complex(0.0, xi); }, true, true);
}

MultiplierSymbol frac_deriv(double alpha) {
    if (!(alpha >= 0.0)) throw DomainError("frac_deriv: alpha must be >= 0 (use bessel for smoothing orders)");
    if (alpha == 0.0) return identity();
    return MultiplierSymbol("|xi|^" + std::to_string(alpha),
                            [alpha](double xi) { return Complex(xi == 0.0 ? 0.0 : std::pow(std::abs(xi), alpha), 0.0); },
                            true, false);
}

MultiplierSymbol bessel(double alpha) {
    return MultiplierSymbol("(1+xi^2)^" + std::to_string(alpha),
                            [alpha](double xi) { return Complex(std::pow(1.0 + xi * xi, alpha), 0.0); }, true, false);
}

MultiplierSymbol hilbert() {
    return MultiplierSymbol("-i*sgn(xi)",
                            [](double xi) { return Complex(0.0, xi > 0.0 ? -1.0 : (xi < 0.0 ? 1.0 : 0.0)); }, true,
                            true);
}

MultiplierSymbol airy(double t) {
    return MultiplierSymbol("exp(i*" + std::to_string(t) + "*xi^3)",
                            [t](double xi) { return std::polar(1.0, t * xi * xi * xi); }, true, false);
}

}  // namespace symbols

void apply_multiplier_in_place(Spectrum& s, std::span<const Complex> symbol_values) {
    if (symbol_values.size() != s.size()) throw DomainError("apply_multiplier: symbol length mismatch");
    for (std::size_t i = 0; i < s.size(); ++i) s[i] *= symbol_values[i];
}

SpaceField apply_multiplier(const SpaceField& f, const MultiplierSymbol& m) {
    const auto values = m.on_grid(f.grid());
    Spectrum s = to_spectrum(f);
    apply_multiplier_in_place(s, values);
    return project(from_spectrum(s), m.real_preserving() && f.is_real());
}

SpaceTimeField apply_multiplier(const SpaceTimeField& u, const MultiplierSymbol& m) {
    const auto values = m.on_grid(u.grid());
    return map_frames(u, [&](const SpaceField& f) {
        Spectrum s = to_spectrum(f);
        apply_multiplier_in_place(s, values);
        return project(from_spectrum(s), m.real_preserving() && f.is_real());
    });
}

SpaceField derivative(const SpaceField& f) { return apply_multiplier(f, symbols::derivative()); }
SpaceTimeField derivative(const SpaceTimeField& u) { return apply_multiplier(u, symbols::derivative()); }

SpaceField frac_deriv(const SpaceField& f, double alpha) {
    const auto m = symbols::frac_deriv(alpha);
    if (alpha == 0.0) return f;
    return apply_multiplier(f, m);
}

SpaceTimeField frac_deriv(const SpaceTimeField& u, double alpha) {
    const auto m = symbols::frac_deriv(alpha);
    if (alpha == 0.0) return u;
    return apply_multiplier(u, m);
}

SpaceField bessel(const SpaceField& f, double alpha) {
    if (alpha == 0.0) return f;
    return apply_multiplier(f, symbols::bessel(alpha));
}

SpaceField hilbert(const SpaceField& f) { return apply_multiplier(f, symbols::hilbert()); }

SpaceField airy_propagate(const SpaceField& f, double t) {
    if (t == 0.0) return f;
    Spectrum s = to_spectrum(f);
    apply_multiplier_in_place(s, airy_values(f.grid(), t));
    return project(from_spectrum(s), f.is_real());
}

SpaceTimeField airy_orbit(const SpaceField& u0, const TimeGrid& times) {
    const Spectrum s0 = to_spectrum(u0);
    const bool keep_real = u0.is_real();
    std::vector<SpaceField> frames;
    frames.reserve(times.n_nodes());
    frames.push_back(u0);
    for (std::size_t m = 1; m < times.n_nodes(); ++m) {
        Spectrum s = s0;
        apply_multiplier_in_place(s, airy_values(u0.grid(), times.node(m)));
        frames.push_back(project(from_spectrum(s), keep_real));
    }
    return SpaceTimeField(u0.grid(), times, std::move(frames));
}

std::vector<Spectrum> retarded_integral(const std::vector<Spectrum>& f, const TimeGrid& times) {
    if (f.size() != times.n_nodes()) throw DomainError("retarded_integral: need one spectrum per time node");
    const SpatialGrid& grid = f.front().grid();
    const std::size_t n = grid.size();
    const double dt = times.step();
    const auto step = airy_values(grid, dt);

    // acc_m = sum_{j<=m} E(t_m - t_j) f_j, advanced by acc_m = E(dt) acc_{m-1} + f_m.
    // The trapezoid sum is then dt * (acc_m - E(t_m) f_0 / 2 - f_m / 2).
    std::vector<Spectrum> out;
    out.reserve(f.size());
    out.emplace_back(grid);
    std::vector<Complex> acc(f.front().coeffs().begin(), f.front().coeffs().end());
    for (std::size_t m = 1; m < f.size(); ++m) {
        const auto e_tm = airy_values(grid, times.node(m));
        Spectrum integral(grid);
        for (std::size_t i = 0; i < n; ++i) {
            acc[i] = step[i] * acc[i] + f[m][i];
            integral[i] = dt * (acc[i] - 0.5 * e_tm[i] * f[0][i] - 0.5 * f[m][i]);
        }
        out.push_back(std::move(integral));
    }
    return out;
}

SpaceTimeField retarded_integral(const SpaceTimeField& f) {
    std::vector<Spectrum> spectra;
    spectra.reserve(f.n_frames());
    for (const auto& fr : f.frames()) spectra.push_back(to_spectrum(fr));
    const auto integrals = retarded_integral(spectra, f.times());
    const bool keep_real = f.is_real();
    std::vector<SpaceField> frames;
    frames.reserve(f.n_frames());
    for (const auto& s : integrals) frames.push_back(project(from_spectrum(s), keep_real));
    return SpaceTimeField(f.grid(), f.times(), std::move(frames));
}

}  // namespace airylab
