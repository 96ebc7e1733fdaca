#include "airylab/grid.hpp"

#include <algorithm>
#include <numbers>

namespace airylab {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

SpatialGrid::SpatialGrid(std::size_t n_points, double length) {
    if (!is_power_of_two(n_points)) {
        throw DomainError("make_grid: n_points must be a power of two, got " + std::to_string(n_points));
    }
    if (!(length > 0.0) || !std::isfinite(length)) {
        throw DomainError("make_grid: length must be positive and finite");
    }
    auto d = std::make_shared<Data>();
    d->n = n_points;
    d->length = length;
    d->dx = length / static_cast<double>(n_points);
    d->x.resize(n_points);
    d->xi.resize(n_points);
    const long half = static_cast<long>(n_points / 2);
    for (std::size_t j = 0; j < n_points; ++j) {
        d->x[j] = -0.5 * length + static_cast<double>(j) * d->dx;
        const long k = static_cast<long>(j) - half;
        d->xi[j] = 2.0 * std::numbers::pi * static_cast<double>(k) / length;
    }
    data_ = std::move(d);
}

SpatialGrid make_grid(std::size_t n_points, double length) { return SpatialGrid(n_points, length); }

TimeGrid::TimeGrid(double horizon, std::size_t n_steps) : horizon_(horizon), n_steps_(n_steps) {
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        throw DomainError("make_time_grid: horizon must be positive and finite");
    }
    if (n_steps < 1) throw DomainError("make_time_grid: n_steps must be at least 1");
    nodes_.resize(n_steps + 1);
    for (std::size_t m = 0; m <= n_steps; ++m) {
        nodes_[m] = horizon * (static_cast<double>(m) / static_cast<double>(n_steps));
    }
}

std::vector<double> TimeGrid::trapezoid_weights() const {
    std::vector<double> w(nodes_.size(), step());
    w.front() *= 0.5;
    w.back() *= 0.5;
    return w;
}

TimeGrid make_time_grid(double horizon, std::size_t n_steps) { return TimeGrid(horizon, n_steps); }

SpaceField::SpaceField(SpatialGrid grid) : grid_(std::move(grid)), values_(grid_.size()) {}

SpaceField::SpaceField(SpatialGrid grid, std::vector<Complex> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.size()) {
        throw DomainError("SpaceField: value count does not match grid size");
    }
}

bool SpaceField::is_real() const noexcept {
    return std::all_of(values_.begin(), values_.end(), [](const Complex& v) { return v.imag() == 0.0; });
}

double SpaceField::max_abs() const noexcept {
    double m = 0.0;
    for (const auto& v : values_) m = std::max(m, std::abs(v));
    return m;
}

SpaceField& SpaceField::operator+=(const SpaceField& other) {
    if (!(grid_ == other.grid_)) throw DomainError("SpaceField: grid mismatch");
    for (std::size_t j = 0; j < values_.size(); ++j) values_[j] += other.values_[j];
    return *this;
}

SpaceField& SpaceField::operator-=(const SpaceField& other) {
    if (!(grid_ == other.grid_)) throw DomainError("SpaceField: grid mismatch");
    for (std::size_t j = 0; j < values_.size(); ++j) values_[j] -= other.values_[j];
    return *this;
}

SpaceField& SpaceField::operator*=(Complex scale) noexcept {
    for (auto& v : values_) v *= scale;
    return *this;
}

SpaceTimeField::SpaceTimeField(SpatialGrid grid, TimeGrid times)
    : grid_(std::move(grid)), times_(std::move(times)) {
    frames_.assign(times_.n_nodes(), SpaceField(grid_));
}

SpaceTimeField::SpaceTimeField(SpatialGrid grid, TimeGrid times, std::vector<SpaceField> frames)
    : grid_(std::move(grid)), times_(std::move(times)), frames_(std::move(frames)) {
    if (frames_.size() != times_.n_nodes()) {
        throw DomainError("SpaceTimeField: need one frame per time node");
    }
    for (const auto& f : frames_) {
        if (!(f.grid() == grid_)) throw DomainError("SpaceTimeField: frames must share the grid");
    }
}

bool SpaceTimeField::is_real() const noexcept {
    return std::all_of(frames_.begin(), frames_.end(), [](const SpaceField& f) { return f.is_real(); });
}

void SpaceTimeField::check_compatible(const SpaceTimeField& other) const {
    if (!(grid_ == other.grid_) || !(times_ == other.times_)) {
        throw DomainError("SpaceTimeField: grid or time-grid mismatch");
    }
}

SpaceTimeField& SpaceTimeField::operator+=(const SpaceTimeField& other) {
    check_compatible(other);
    for (std::size_t m = 0; m < frames_.size(); ++m) frames_[m] += other.frames_[m];
    return *this;
}

SpaceTimeField& SpaceTimeField::operator-=(const SpaceTimeField& other) {
    check_compatible(other);
    for (std::size_t m = 0; m < frames_.size(); ++m) frames_[m] -= other.frames_[m];
    return *this;
}

SpaceTimeField& SpaceTimeField::operator*=(Complex scale) noexcept {
    for (auto& f : frames_) f *= scale;
    return *this;
}

SpaceTimeField SpaceTimeField::truncated(std::size_t n_steps) const {
    if (n_steps < 1 || n_steps > times_.n_steps()) {
        throw DomainError("SpaceTimeField::truncated: step count out of range");
    }
    TimeGrid sub(times_.node(n_steps), n_steps);
    std::vector<SpaceField> frames(frames_.begin(), frames_.begin() + static_cast<long>(n_steps) + 1);
    return SpaceTimeField(grid_, sub, std::move(frames));
}

}  // namespace airylab
