#pragma once

// Run configuration: one JSON document, every field defaulted. The effective
// configuration (defaults filled in) is echoed into every report.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "airylab/families.hpp"
#include "airylab/weighted.hpp"

namespace airylab::cli {

inline constexpr int kSchemaVersion = 1;

struct GridConfig {
    std::size_t n_points = 1024;
    double length = 64.0;
};

struct TimeConfig {
    /// nullopt selects the horizon from the contraction parameters.
    std::optional<double> horizon;
    std::size_t n_steps = 256;
    /// Cap applied to an automatically selected horizon.
    double max_horizon = 1.0;
};

struct DatumConfig {
    /// gaussian | modulated_gaussian | soliton | random | zero
    std::string kind = "gaussian";
    double amplitude = 1e-3;
    double width = 1.0;
    double center = 0.0;
    double k = 1.0;
    double c = 1.0;
    std::uint64_t seed = 1;
    std::size_t modes = 6;
    double max_frequency = 3.0;
};

struct Tolerances {
    double picard_tol = 1e-12;
    std::size_t max_iter = 50;
    double dt = 1e-4;
    std::size_t substeps_per_frame = 1;
    double boundary_tol = kWeightBoundaryTol;
    double soliton_residual = 1e-8;
};

struct EstimatesConfig {
    std::vector<std::string> ids{"all"};
    std::size_t n_points = 1024;
    double length = 128.0;
    double horizon = 1.0;
    std::size_t n_steps = 256;
    bool refine = true;
    double max_drift = 0.10;
    /// Weight exponent of the weighted cases (must be positive).
    double r = 1.0 / 6.0;
};

struct SolitonConfig {
    double c = 1.0;
    double x0 = 0.0;
    std::size_t n_points = 4096;
    double length = 64.0;
};

struct RunConfig {
    int schema_version = kSchemaVersion;
    GridConfig grid;
    TimeConfig time;
    DatumConfig datum;
    double r = 0.0;
    SolverKind solver = SolverKind::Picard;
    bool dealias = true;
    Tolerances tolerances;
    /// Scheme constant; nullopt uses the calibrated default.
    std::optional<double> C;
    double theta = 0.5;
    EstimatesConfig estimates;
    SolitonConfig soliton;
    std::string output_dir = ".";

    double scheme_constant() const;
};

/// Parses a configuration document. Unknown keys and wrong types are rejected
/// with DomainError naming the offending key. Range checks on r are left to
/// the commands so that their messages can name the admissible range.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);
nlohmann::json to_json(const RunConfig& cfg);

GeneratorSpec datum_generator(const DatumConfig& d);

}  // namespace airylab::cli
