#pragma once

// Reference computations that share no code with the library: direct DFT
// sums, composite Simpson quadrature and closed forms for Gaussians.

#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
inline constexpr double pi = std::numbers::pi;

/// Composite Simpson rule on [a, b] with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 4000) {
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3.0;
}

/// Coefficients c_k, k = -n/2..n/2-1, of f(x_j) = sum_k c_k exp(i 2 pi k x_j / L)
/// with x_j = -L/2 + j L/n, by the O(n^2) sum in long double.
inline std::vector<cplx> direct_dft(const std::vector<cplx>& f, double L) {
    const std::size_t n = f.size();
    const long double dx = static_cast<long double>(L) / n;
    std::vector<cplx> c(n);
    for (std::size_t i = 0; i < n; ++i) {
        const long k = static_cast<long>(i) - static_cast<long>(n / 2);
        const long double xi = 2.0L * std::numbers::pi_v<long double> * k / L;
        long double re = 0, im = 0;
        for (std::size_t j = 0; j < n; ++j) {
            const long double x = -0.5L * L + j * dx;
            const long double ph = -xi * x;
            re += f[j].real() * std::cos(ph) - f[j].imag() * std::sin(ph);
            im += f[j].real() * std::sin(ph) + f[j].imag() * std::cos(ph);
        }
        c[i] = cplx(static_cast<double>(re / n), static_cast<double>(im / n));
    }
    return c;
}

/// |exp(-a x^2)|_{L^p(R)} = (pi / (a p))^{1/(2p)}.
inline double gaussian_lp(double a, double p) { return std::pow(pi / (a * p), 1.0 / (2.0 * p)); }

/// H^s norm of exp(-a x^2) on R: (1/2pi) int (1 + xi^2)^s (pi/a) exp(-xi^2/(2a)) dxi.
inline double gaussian_sobolev(double a, double s) {
    const double cut = 40.0 * std::sqrt(a);
    const double v = simpson([&](double xi) { return std::pow(1.0 + xi * xi, s) * (pi / a) * std::exp(-xi * xi / (2.0 * a)); },
                             -cut, cut, 20000);
    return std::sqrt(v / (2.0 * pi));
}

/// (E(t) exp(-a x^2))(x) = (1/2pi) int sqrt(pi/a) exp(-xi^2/(4a)) exp(i (xi x + t xi^3)) dxi.
inline cplx airy_gaussian(double a, double t, double x) {
    const double cut = 12.0 * std::sqrt(a);
    auto amp = [&](double xi) { return std::sqrt(pi / a) * std::exp(-xi * xi / (4.0 * a)) / (2.0 * pi); };
    const double re = simpson([&](double xi) { return amp(xi) * std::cos(xi * x + t * xi * xi * xi); }, -cut, cut, 200000);
    const double im = simpson([&](double xi) { return amp(xi) * std::sin(xi * x + t * xi * xi * xi); }, -cut, cut, 200000);
    return {re, im};
}

/// Scratch directory for a test, under AIRYLAB_TEST_TMP when set.
inline std::filesystem::path scratch(const std::string& name) {
    const char* root = std::getenv("AIRYLAB_TEST_TMP");
    std::filesystem::path p = root ? std::filesystem::path(root) : std::filesystem::temp_directory_path() / "airylab_tests";
    p /= name;
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

}  // namespace oracle
