#pragma once

// CSV and JSON emission. CSV numbers use 17 significant digits, '.' as the
// decimal point and no locale; JSON numbers are shortest round-trip and
// non-finite values serialize as null.

#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "airylab/estimates.hpp"
#include "airylab/norms.hpp"
#include "airylab/picard.hpp"
#include "airylab/weighted.hpp"

namespace airylab::cli {

std::string format_double(double v);

class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

    void row(const std::vector<double>& values);
    /// Trailing "# key=value" record.
    void comment(const std::string& text);
    void flush();

private:
    std::ofstream out_;
    std::size_t columns_;
};

/// Columns of the norm-series CSV.
const std::vector<std::string>& norm_series_header();

struct NormSeriesRow {
    double t = 0.0;
    double l2 = 0.0;
    double h13 = 0.0;
    double weighted_l2 = 0.0;
    MuVector mu;

    std::vector<double> values() const;
};

/// Row for node m of u: the mu entries are taken over [0, t_m].
NormSeriesRow norm_series_row(const SpaceTimeField& u, std::size_t m, double r);
std::vector<NormSeriesRow> norm_series(const SpaceTimeField& u, double r);

nlohmann::json to_json(const PicardDiagnostics& d);
nlohmann::json to_json(const ContractionParams& p);
nlohmann::json to_json(const EstimateReport& rep);
nlohmann::json to_json(const PersistenceReport& rep);
nlohmann::json to_json(const MuVector& mu);

void write_json(const std::filesystem::path& path, const nlohmann::json& doc);

}  // namespace airylab::cli
