#include "airylab/cli/report.hpp"

#include <charconv>
#include <cmath>

#include "airylab/errors.hpp"
#include "airylab/spectral.hpp"

namespace airylab::cli {

using nlohmann::json;

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : out_(path, std::ios::binary), columns_(header.size()) {
    if (!out_) throw DomainError("cannot write '" + path.string() + "'");
    for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
    out_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != columns_) throw DomainError("CsvWriter: row width does not match the header");
    for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format_double(values[i]);
    out_ << '\n';
}

void CsvWriter::comment(const std::string& text) { out_ << "# " << text << '\n'; }

void CsvWriter::flush() { out_.flush(); }

const std::vector<std::string>& norm_series_header() {
    static const std::vector<std::string> h{"t", "l2", "h13", "weighted_l2", "mu1", "mu2", "mu3", "mu4", "mu5", "mu6"};
    return h;
}

std::vector<double> NormSeriesRow::values() const {
    return {t, l2, h13, weighted_l2, mu[0], mu[1], mu[2], mu[3], mu[4], mu[5]};
}

NormSeriesRow norm_series_row(const SpaceTimeField& u, std::size_t m, double r) {
    const SpaceField& f = u.frame(m);
    NormSeriesRow row;
    row.t = u.times().node(m);
    row.l2 = lp_norm(f, Exponent::ratio(2));
    row.h13 = sobolev_norm(f, 1.0 / 3.0);
    row.weighted_l2 = weighted_l2(f, r);
    if (m == 0) {
        // A single instant: sup-in-time entries reduce to the frame, the
        // time-integrated ones vanish.
        row.mu[0] = row.h13;
        row.mu[4] = lp_norm(f, Exponent::ratio(6));
    } else {
        row.mu = mu_norms(u.truncated(m));
    }
    return row;
}

std::vector<NormSeriesRow> norm_series(const SpaceTimeField& u, double r) {
    std::vector<NormSeriesRow> rows;
    rows.reserve(u.n_frames());
    for (std::size_t m = 0; m < u.n_frames(); ++m) rows.push_back(norm_series_row(u, m, r));
    return rows;
}

json to_json(const MuVector& mu) { return json(std::vector<double>(mu.mu.begin(), mu.mu.end())); }

json to_json(const PicardDiagnostics& d) {
    return {{"status", d.status},
            {"converged", d.converged},
            {"iterations", d.iterations},
            {"norm", d.norm.to_string()},
            {"increments", d.increments},
            {"contraction_factors", d.contraction_factors},
            {"iterate_norms", d.iterate_norms}};
}

json to_json(const ContractionParams& p) {
    return {{"C", p.C}, {"rho", p.rho}, {"T", p.T}, {"theta", p.theta}, {"r", p.r}};
}

json to_json(const EstimateReport& rep) {
    json inputs = json::array();
    for (const auto& in : rep.inputs) {
        json j{{"name", in.name}, {"ratio", in.ratio}, {"piece_ratios", in.piece_ratios}};
        j["fitted_exponent"] = in.fitted_exponent ? json(*in.fitted_exponent) : json(nullptr);
        inputs.push_back(std::move(j));
    }
    json refinement = json::array();
    for (const auto& p : rep.refinement) {
        refinement.push_back({{"n_points", p.n_points}, {"n_steps", p.n_steps}, {"max_ratio", p.max_ratio}});
    }
    return {{"id", rep.id},
            {"description", rep.description},
            {"anchor", rep.anchor},
            {"input_kind", to_string(rep.input_kind)},
            {"family_description", rep.family_description},
            {"seeds", rep.seeds},
            {"r", rep.r},
            {"theta", rep.theta},
            {"piece_labels", rep.piece_labels},
            {"inputs", inputs},
            {"max_ratio", rep.max_ratio},
            {"refinement_ratios", refinement},
            {"refinement_drift", rep.refinement_drift},
            {"scale_deviation", rep.scale_deviation},
            {"violations", rep.violations},
            {"verdict", rep.pass ? "PASS" : "FAIL"}};
}

json to_json(const PersistenceReport& rep) {
    json j{{"r", rep.r},
           {"solver", to_string(rep.solver)},
           {"params", to_json(rep.params)},
           {"flp_constant", rep.flp_constant},
           {"h13_ceiling", rep.h13_ceiling},
           {"linear_weighted_ceiling", rep.linear_weighted_ceiling},
           {"weighted_ceiling", rep.weighted_ceiling},
           {"xt_norm", rep.xt_norm},
           {"mu", to_json(rep.mu)},
           {"status", rep.status},
           {"verdict", rep.verdict}};
    j["failure_time"] = rep.failure_time ? json(*rep.failure_time) : json(nullptr);
    j["picard"] = rep.picard ? to_json(*rep.picard) : json(nullptr);
    return j;
}

void write_json(const std::filesystem::path& path, const json& doc) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot write '" + path.string() + "'");
    out << doc.dump(2) << '\n';
}

}  // namespace airylab::cli
