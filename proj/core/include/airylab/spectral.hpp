#pragma once

// Fourier-multiplier engine on the periodic grid.
//
// Coefficients are stored in centered order (index i <-> wavenumber
// grid.wavenumber(i)) and normalized so that
//
//     f(x_j) = sum_k c_k exp(i xi_k x_j),
//
// i.e. a pure mode exp(i xi_1 x) has c_1 = 1 exactly.

#include <functional>
#include <string>
#include <vector>

#include "airylab/grid.hpp"

namespace airylab {

/// Fourier coefficients of a SpaceField, indexed like grid.wavenumbers().
class Spectrum {
public:
    explicit Spectrum(SpatialGrid grid);
    Spectrum(SpatialGrid grid, std::vector<Complex> coeffs);

    const SpatialGrid& grid() const noexcept { return grid_; }
    std::size_t size() const noexcept { return coeffs_.size(); }
    std::span<const Complex> coeffs() const noexcept { return coeffs_; }
    std::span<Complex> coeffs() noexcept { return coeffs_; }
    const Complex& operator[](std::size_t i) const { return coeffs_[i]; }
    Complex& operator[](std::size_t i) { return coeffs_[i]; }

    /// Coefficient of mode k in -n/2..n/2-1.
    const Complex& mode(long k) const { return coeffs_[grid_.index_of_mode(k)]; }

private:
    SpatialGrid grid_;
    std::vector<Complex> coeffs_;
};

Spectrum to_spectrum(const SpaceField& f);
/// Inverse of to_spectrum. Does not project onto real values.
SpaceField from_spectrum(const Spectrum& s);

/// A Fourier multiplier m(xi).
///
/// real_preserving marks symbols with m(-xi) = conj(m(xi)); applying one to a
/// real field returns a real field (the Hermitian part of the spectrum is
/// kept). zero_nyquist marks odd symbols, whose value at the unpaired Nyquist
/// mode is replaced by 0.
class MultiplierSymbol {
public:
    using Rule = std::function<Complex(double)>;

    MultiplierSymbol(std::string label, Rule rule, bool real_preserving = false, bool zero_nyquist = false);

    const std::string& label() const noexcept { return label_; }
    bool real_preserving() const noexcept { return real_preserving_; }
    bool zero_nyquist() const noexcept { return zero_nyquist_; }
    Complex operator()(double xi) const { return rule_(xi); }

    /// Symbol sampled on the grid wavenumbers, Nyquist rule applied.
    /// Throws DomainError if any value is non-finite.
    std::vector<Complex> on_grid(const SpatialGrid& grid) const;

    friend MultiplierSymbol operator*(const MultiplierSymbol& a, const MultiplierSymbol& b);

private:
    std::string label_;
    Rule rule_;
    bool real_preserving_;
    bool zero_nyquist_;
};

namespace symbols {

MultiplierSymbol identity();
/// i*xi, the spectral first derivative.
MultiplierSymbol derivative();
/// |xi|^alpha with |0|^alpha = 0 for alpha > 0; identity for alpha = 0.
MultiplierSymbol frac_deriv(double alpha);
/// (1 + xi^2)^alpha.
MultiplierSymbol bessel(double alpha);
/// -i sgn(xi), sgn(0) = 0.
MultiplierSymbol hilbert();
/// exp(i t xi^3), the Airy propagator.
MultiplierSymbol airy(double t);

}  // namespace symbols

void apply_multiplier_in_place(Spectrum& s, std::span<const Complex> symbol_values);

SpaceField apply_multiplier(const SpaceField& f, const MultiplierSymbol& m);
SpaceTimeField apply_multiplier(const SpaceTimeField& u, const MultiplierSymbol& m);

/// Spectral d/dx.
SpaceField derivative(const SpaceField& f);
SpaceTimeField derivative(const SpaceTimeField& u);

/// D^alpha, alpha >= 0. alpha = 0 is the identity map.
SpaceField frac_deriv(const SpaceField& f, double alpha);
SpaceTimeField frac_deriv(const SpaceTimeField& u, double alpha);

/// (1 + D^2)^alpha, any real alpha.
SpaceField bessel(const SpaceField& f, double alpha);

SpaceField hilbert(const SpaceField& f);

/// exp(-t d^3/dx^3) f, i.e. spectrum times exp(i t xi^3). Negative t propagates backward.
SpaceField airy_propagate(const SpaceField& f, double t);

/// Frame m = airy_propagate(u0, t_m); frame 0 is u0 exactly.
SpaceTimeField airy_orbit(const SpaceField& u0, const TimeGrid& times);

/// Frame m = int_0^{t_m} exp(-(t_m - s) d^3/dx^3) f(s) ds by the composite
/// trapezoid rule on the time nodes 0..m. Frame 0 is zero.
SpaceTimeField retarded_integral(const SpaceTimeField& f);

/// Spectral-domain form of retarded_integral: input and output are spectra
/// per time node.
std::vector<Spectrum> retarded_integral(const std::vector<Spectrum>& f, const TimeGrid& times);

/// Real part of every sample, i.e. the Hermitian part of the spectrum.
SpaceField real_part(SpaceField f);

}  // namespace airylab
