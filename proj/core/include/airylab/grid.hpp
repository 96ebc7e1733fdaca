#pragma once

// Discretization substrate: periodic spatial grids standing in for the real
// line, uniform time grids on [0, T], and the field containers built on them.

#include <cmath>
#include <complex>
#include <concepts>
#include <cstddef>
#include <memory>
#include <span>
#include <sstream>
#include <vector>

#include "airylab/errors.hpp"

namespace airylab {

using Complex = std::complex<double>;

/// Periodic grid x_j = -L/2 + j*dx on [-L/2, L/2) with n a power of two.
///
/// Copies share the immutable coordinate/wavenumber tables, so passing a grid
/// by value is cheap and safe across threads.
class SpatialGrid {
public:
    SpatialGrid(std::size_t n_points, double length);

    std::size_t size() const noexcept { return data_->n; }
    double length() const noexcept { return data_->length; }
    double dx() const noexcept { return data_->dx; }

    double x(std::size_t j) const { return data_->x[j]; }
    std::span<const double> points() const noexcept { return data_->x; }

    /// Wavenumbers xi_k = 2*pi*k/L in centered order k = -n/2, ..., n/2-1.
    /// Index i of this table corresponds to mode k = i - n/2.
    std::span<const double> wavenumbers() const noexcept { return data_->xi; }
    double wavenumber(std::size_t i) const { return data_->xi[i]; }
    long mode(std::size_t i) const noexcept { return static_cast<long>(i) - static_cast<long>(size() / 2); }
    std::size_t index_of_mode(long k) const noexcept {
        return static_cast<std::size_t>(k + static_cast<long>(size() / 2));
    }
    /// Index of the unpaired Nyquist mode k = -n/2 (always 0 in centered order).
    static constexpr std::size_t nyquist_index() noexcept { return 0; }
    double max_abs_wavenumber() const noexcept { return std::abs(data_->xi.front()); }

    friend bool operator==(const SpatialGrid& a, const SpatialGrid& b) noexcept {
        return a.data_ == b.data_ || (a.size() == b.size() && a.length() == b.length());
    }

private:
    struct Data {
        std::size_t n;
        double length;
        double dx;
        std::vector<double> x;
        std::vector<double> xi;
    };
    std::shared_ptr<const Data> data_;
};

SpatialGrid make_grid(std::size_t n_points, double length);

/// Uniform nodes t_m = m*T/M, m = 0..M, with t_0 = 0 and t_M = T exactly.
class TimeGrid {
public:
    TimeGrid(double horizon, std::size_t n_steps);

    double horizon() const noexcept { return horizon_; }
    std::size_t n_steps() const noexcept { return n_steps_; }
    std::size_t n_nodes() const noexcept { return nodes_.size(); }
    double step() const noexcept { return horizon_ / static_cast<double>(n_steps_); }
    double node(std::size_t m) const { return nodes_[m]; }
    std::span<const double> nodes() const noexcept { return nodes_; }

    /// Composite trapezoid weights on all nodes (dt/2 at both ends).
    std::vector<double> trapezoid_weights() const;

    friend bool operator==(const TimeGrid& a, const TimeGrid& b) noexcept {
        return a.horizon_ == b.horizon_ && a.n_steps_ == b.n_steps_;
    }

private:
    double horizon_;
    std::size_t n_steps_;
    std::vector<double> nodes_;
};

TimeGrid make_time_grid(double horizon, std::size_t n_steps);

/// Complex samples of a function of x on a SpatialGrid.
class SpaceField {
public:
    explicit SpaceField(SpatialGrid grid);
    SpaceField(SpatialGrid grid, std::vector<Complex> values);

    const SpatialGrid& grid() const noexcept { return grid_; }
    std::size_t size() const noexcept { return values_.size(); }

    std::span<const Complex> values() const noexcept { return values_; }
    std::span<Complex> values() noexcept { return values_; }
    const Complex& operator[](std::size_t j) const { return values_[j]; }
    Complex& operator[](std::size_t j) { return values_[j]; }

    /// True when every sample has an exactly zero imaginary part.
    bool is_real() const noexcept;
    double max_abs() const noexcept;

    SpaceField& operator+=(const SpaceField& other);
    SpaceField& operator-=(const SpaceField& other);
    SpaceField& operator*=(Complex scale) noexcept;

    friend SpaceField operator+(SpaceField a, const SpaceField& b) { return a += b; }
    friend SpaceField operator-(SpaceField a, const SpaceField& b) { return a -= b; }
    friend SpaceField operator*(Complex s, SpaceField a) { return a *= s; }
    friend SpaceField operator*(double s, SpaceField a) { return a *= Complex(s, 0.0); }

private:
    SpatialGrid grid_;
    std::vector<Complex> values_;
};

/// Time-indexed sequence of SpaceFields, one frame per TimeGrid node.
class SpaceTimeField {
public:
    SpaceTimeField(SpatialGrid grid, TimeGrid times);
    SpaceTimeField(SpatialGrid grid, TimeGrid times, std::vector<SpaceField> frames);

    const SpatialGrid& grid() const noexcept { return grid_; }
    const TimeGrid& times() const noexcept { return times_; }
    std::size_t n_frames() const noexcept { return frames_.size(); }

    const SpaceField& frame(std::size_t m) const { return frames_[m]; }
    SpaceField& frame(std::size_t m) { return frames_[m]; }
    std::span<const SpaceField> frames() const noexcept { return frames_; }

    /// Value at spatial index j of frame m.
    const Complex& at(std::size_t m, std::size_t j) const { return frames_[m][j]; }

    bool is_real() const noexcept;

    SpaceTimeField& operator+=(const SpaceTimeField& other);
    SpaceTimeField& operator-=(const SpaceTimeField& other);
    SpaceTimeField& operator*=(Complex scale) noexcept;

    friend SpaceTimeField operator+(SpaceTimeField a, const SpaceTimeField& b) { return a += b; }
    friend SpaceTimeField operator-(SpaceTimeField a, const SpaceTimeField& b) { return a -= b; }
    friend SpaceTimeField operator*(double s, SpaceTimeField a) { return a *= Complex(s, 0.0); }

    /// The first n_steps+1 frames as a field on the truncated horizon t_{n_steps}.
    SpaceTimeField truncated(std::size_t n_steps) const;

private:
    void check_compatible(const SpaceTimeField& other) const;

    SpatialGrid grid_;
    TimeGrid times_;
    std::vector<SpaceField> frames_;
};

/// Apply f pointwise to every frame of u.
template <class F>
SpaceTimeField map_frames(const SpaceTimeField& u, F&& f) {
    std::vector<SpaceField> frames;
    frames.reserve(u.n_frames());
    for (const auto& fr : u.frames()) frames.push_back(f(fr));
    return SpaceTimeField(u.grid(), u.times(), std::move(frames));
}

/// Pointwise map of sample values.
template <class F>
SpaceField map_values(const SpaceField& f, F&& op) {
    SpaceField out(f.grid());
    for (std::size_t j = 0; j < f.size(); ++j) out[j] = op(f[j]);
    return out;
}

/// values[j] = f(x_j). Rejects non-finite samples, naming the offending x_j.
template <class F>
    requires std::invocable<F, double>
SpaceField sample(F&& f, const SpatialGrid& grid) {
    SpaceField out(grid);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const Complex v(f(grid.x(j)));
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            std::ostringstream msg;
            msg << "sample: non-finite value at x_" << j << " = " << grid.x(j);
            throw DomainError(msg.str());
        }
        out[j] = v;
    }
    return out;
}

}  // namespace airylab
