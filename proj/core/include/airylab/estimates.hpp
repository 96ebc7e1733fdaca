#pragma once

// Registry of space-time inequalities as executable (lhs, rhs) pairs, and a
// harness that measures their empirical constants over a function family.
//
// A case evaluates one or more named pieces on a datum (building Airy orbits
// or forcings from it as needed); the datum's ratio is the largest piece ratio
// lhs / rhs.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "airylab/families.hpp"
#include "airylab/grid.hpp"

namespace airylab {

enum class InputKind { Datum, Orbit, Pair, Triple };

std::string to_string(InputKind kind);

struct EstimateContext {
    TimeGrid times{1.0, 256};
    /// Weight exponent for the weighted cases.
    double r = 1.0 / 6.0;
    /// Time exponent of the third nonlinear piece's majorant.
    double theta = 0.5;
};

struct PieceValue {
    std::string label;
    double lhs = 0.0;
    double rhs = 0.0;
};

struct CaseEvaluation {
    std::vector<PieceValue> pieces;
    /// Empirical time exponent, for cases that fit one.
    std::optional<double> fitted_exponent;
};

struct EstimateCase {
    std::string id;
    std::string description;
    std::string anchor;
    InputKind input_kind = InputKind::Datum;
    /// Common homogeneity degree of both sides in the datum.
    int degree = 1;
    std::function<CaseEvaluation(const SpaceField& datum, const EstimateContext& ctx)> evaluate;
    /// Every piece ratio must equal this within exact_tolerance.
    std::optional<double> exact_ratio;
    double exact_tolerance = 1e-12;
    /// No piece ratio may exceed this at any resolution.
    std::optional<double> ratio_ceiling;
};

struct EstimateSummary {
    std::string id;
    std::string description;
    std::string anchor;
};

std::vector<EstimateSummary> list_estimates();

/// Throws DomainError naming the valid ids when `id` is unknown.
const EstimateCase& find_estimate(const std::string& id);
std::vector<std::string> estimate_ids();

/// lhs / rhs with 0/0 = 0 and x/0 = +inf for x > 0.
double piece_ratio(const PieceValue& p);

struct InputRatio {
    std::string name;
    double ratio = 0.0;
    std::vector<double> piece_ratios;
    std::optional<double> fitted_exponent;
};

struct RefinementPoint {
    std::size_t n_points = 0;
    std::size_t n_steps = 0;
    double max_ratio = 0.0;
};

struct EstimateOptions {
    bool refine = true;
    bool scale_check = true;
    double scale_factor = 3.0;
    double max_drift = 0.10;
    double scale_tolerance = 1e-8;
};

struct EstimateReport {
    std::string id;
    std::string description;
    std::string anchor;
    InputKind input_kind = InputKind::Datum;
    std::string family_description;
    std::vector<std::uint64_t> seeds;
    double r = 0.0;
    double theta = 0.0;

    std::vector<InputRatio> inputs;
    std::vector<std::string> piece_labels;
    double max_ratio = 0.0;
    std::vector<RefinementPoint> refinement;
    double refinement_drift = 0.0;
    /// max over inputs of |ratio(lambda u0) - ratio(u0)| / ratio(u0).
    double scale_deviation = 0.0;
    std::vector<std::string> violations;
    bool pass = false;
};

/// Evaluates the case on every member at (grid, ctx.times), then on the
/// scaled family and at doubled n_points and n_steps, and judges PASS:
/// finite ratios, scale deviation and refinement drift within tolerance, and
/// the case's exact/ceiling constraints.
EstimateReport run_estimate(const std::string& case_id, const FunctionFamily& family, const SpatialGrid& grid,
                            const EstimateContext& ctx = {}, const EstimateOptions& opts = {});

/// Max ratio over ids and members at the given resolution. Throws
/// NumericalError naming the case if any ratio is infinite.
double calibrate_constant(const FunctionFamily& family, const std::vector<std::string>& ids,
                          const SpatialGrid& grid, const EstimateContext& ctx = {});

SpatialGrid default_estimate_grid();

/// Even C-infinity cutoff: 1 on [-1, 1], 0 outside (-2, 2), monotone between,
/// built from the smooth step h(y) / (h(y) + h(1 - y)) with h(y) = exp(-1/y).
class CutoffFunction {
public:
    double operator()(double x) const;
    double derivative(double x) const;
};

}  // namespace airylab
