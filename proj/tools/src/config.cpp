#include "airylab/cli/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "airylab/errors.hpp"
#include "airylab/picard.hpp"

namespace airylab::cli {

using nlohmann::json;

namespace {

void check_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
    if (!obj.is_object()) throw DomainError("config: '" + where + "' must be an object");
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.count(key)) {
            std::ostringstream msg;
            msg << "config: unknown key '" << (where.empty() ? "" : where + ".") << key << "'";
            throw DomainError(msg.str());
        }
    }
}

template <class T>
void read(const json& obj, const char* key, const std::string& where, T& out) {
    if (!obj.contains(key)) return;
    try {
        out = obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw DomainError("config: '" + (where.empty() ? "" : where + ".") + key + "' has the wrong type");
    }
}

void read_count(const json& obj, const char* key, const std::string& where, std::size_t& out) {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw DomainError("config: '" + where + "." + key + "' must be a non-negative integer");
    }
    out = v.get<std::size_t>();
}

}  // namespace

double RunConfig::scheme_constant() const { return C ? *C : kDefaultSchemeConstant; }

GeneratorSpec datum_generator(const DatumConfig& d) {
    if (d.kind == "gaussian") return GaussianSpec{d.amplitude, d.width, d.center};
    if (d.kind == "modulated_gaussian") return ModulatedGaussianSpec{d.amplitude, d.width, d.k};
    if (d.kind == "soliton") return SolitonSpec{d.amplitude, d.c, d.center};
    if (d.kind == "random") return RandomSpec{d.amplitude, d.width, d.max_frequency, d.modes, d.seed};
    if (d.kind == "zero") return GaussianSpec{0.0, 1.0, 0.0};
    throw DomainError("config: unknown datum kind '" + d.kind +
                      "' (expected gaussian, modulated_gaussian, soliton, random or zero)");
}

RunConfig parse_config(const json& doc) {
    RunConfig cfg;
    check_keys(doc, "", {"schema_version", "grid", "time", "datum", "r", "solver", "dealias", "tolerances", "C", "theta",
                         "estimates", "soliton", "output"});
    read(doc, "schema_version", "", cfg.schema_version);
    if (cfg.schema_version != kSchemaVersion) {
        throw DomainError("config: unsupported schema_version " + std::to_string(cfg.schema_version) + " (expected " +
                          std::to_string(kSchemaVersion) + ")");
    }
    if (doc.contains("grid")) {
        const json& g = doc["grid"];
        check_keys(g, "grid", {"n_points", "length"});
        read_count(g, "n_points", "grid", cfg.grid.n_points);
        read(g, "length", "grid", cfg.grid.length);
    }
    if (doc.contains("time")) {
        const json& t = doc["time"];
        check_keys(t, "time", {"horizon", "n_steps", "max_horizon"});
        if (t.contains("horizon")) {
            const json& h = t["horizon"];
            if (h.is_string() && h.get<std::string>() == "auto") {
                cfg.time.horizon.reset();
            } else if (h.is_number()) {
                cfg.time.horizon = h.get<double>();
            } else {
                throw DomainError("config: 'time.horizon' must be a number or \"auto\"");
            }
        }
        read_count(t, "n_steps", "time", cfg.time.n_steps);
        read(t, "max_horizon", "time", cfg.time.max_horizon);
    }
    if (doc.contains("datum")) {
        const json& d = doc["datum"];
        check_keys(d, "datum", {"kind", "amplitude", "width", "center", "k", "c", "seed", "modes", "max_frequency"});
        read(d, "kind", "datum", cfg.datum.kind);
        read(d, "amplitude", "datum", cfg.datum.amplitude);
        read(d, "width", "datum", cfg.datum.width);
        read(d, "center", "datum", cfg.datum.center);
        read(d, "k", "datum", cfg.datum.k);
        read(d, "c", "datum", cfg.datum.c);
        read(d, "seed", "datum", cfg.datum.seed);
        read_count(d, "modes", "datum", cfg.datum.modes);
        read(d, "max_frequency", "datum", cfg.datum.max_frequency);
        datum_generator(cfg.datum);
    }
    read(doc, "r", "", cfg.r);
    if (doc.contains("solver")) {
        std::string s;
        read(doc, "solver", "", s);
        cfg.solver = parse_solver_kind(s);
    }
    read(doc, "dealias", "", cfg.dealias);
    if (doc.contains("tolerances")) {
        const json& t = doc["tolerances"];
        check_keys(t, "tolerances",
                   {"picard_tol", "max_iter", "dt", "substeps_per_frame", "boundary_tol", "soliton_residual"});
        read(t, "picard_tol", "tolerances", cfg.tolerances.picard_tol);
        read_count(t, "max_iter", "tolerances", cfg.tolerances.max_iter);
        read(t, "dt", "tolerances", cfg.tolerances.dt);
        read_count(t, "substeps_per_frame", "tolerances", cfg.tolerances.substeps_per_frame);
        read(t, "boundary_tol", "tolerances", cfg.tolerances.boundary_tol);
        read(t, "soliton_residual", "tolerances", cfg.tolerances.soliton_residual);
    }
    if (doc.contains("C") && !doc["C"].is_null()) {
        double c = 0.0;
        read(doc, "C", "", c);
        if (!(c > 0.0)) throw DomainError("config: 'C' must be positive");
        cfg.C = c;
    }
    read(doc, "theta", "", cfg.theta);
    if (doc.contains("estimates")) {
        const json& e = doc["estimates"];
        check_keys(e, "estimates", {"ids", "n_points", "length", "horizon", "n_steps", "refine", "max_drift", "r"});
        read(e, "ids", "estimates", cfg.estimates.ids);
        read_count(e, "n_points", "estimates", cfg.estimates.n_points);
        read(e, "length", "estimates", cfg.estimates.length);
        read(e, "horizon", "estimates", cfg.estimates.horizon);
        read_count(e, "n_steps", "estimates", cfg.estimates.n_steps);
        read(e, "refine", "estimates", cfg.estimates.refine);
        read(e, "max_drift", "estimates", cfg.estimates.max_drift);
        read(e, "r", "estimates", cfg.estimates.r);
    }
    if (doc.contains("soliton")) {
        const json& s = doc["soliton"];
        check_keys(s, "soliton", {"c", "x0", "n_points", "length"});
        read(s, "c", "soliton", cfg.soliton.c);
        read(s, "x0", "soliton", cfg.soliton.x0);
        read_count(s, "n_points", "soliton", cfg.soliton.n_points);
        read(s, "length", "soliton", cfg.soliton.length);
    }
    if (doc.contains("output")) {
        const json& o = doc["output"];
        check_keys(o, "output", {"dir"});
        read(o, "dir", "output", cfg.output_dir);
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("config: cannot open '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw DomainError("config: '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_config(doc);
}

json to_json(const RunConfig& cfg) {
    json j;
    j["schema_version"] = cfg.schema_version;
    j["grid"] = {{"n_points", cfg.grid.n_points}, {"length", cfg.grid.length}};
    j["time"] = {{"horizon", cfg.time.horizon ? json(*cfg.time.horizon) : json("auto")},
                 {"n_steps", cfg.time.n_steps},
                 {"max_horizon", cfg.time.max_horizon}};
    j["datum"] = {{"kind", cfg.datum.kind},   {"amplitude", cfg.datum.amplitude}, {"width", cfg.datum.width},
                  {"center", cfg.datum.center}, {"k", cfg.datum.k},             {"c", cfg.datum.c},
                  {"seed", cfg.datum.seed},   {"modes", cfg.datum.modes},       {"max_frequency", cfg.datum.max_frequency}};
    j["r"] = cfg.r;
    j["solver"] = to_string(cfg.solver);
    j["dealias"] = cfg.dealias;
    j["tolerances"] = {{"picard_tol", cfg.tolerances.picard_tol},
                       {"max_iter", cfg.tolerances.max_iter},
                       {"dt", cfg.tolerances.dt},
                       {"substeps_per_frame", cfg.tolerances.substeps_per_frame},
                       {"boundary_tol", cfg.tolerances.boundary_tol},
                       {"soliton_residual", cfg.tolerances.soliton_residual}};
    j["C"] = cfg.C ? json(*cfg.C) : json(nullptr);
    j["theta"] = cfg.theta;
    j["estimates"] = {{"ids", cfg.estimates.ids},           {"n_points", cfg.estimates.n_points},
                      {"length", cfg.estimates.length},     {"horizon", cfg.estimates.horizon},
                      {"n_steps", cfg.estimates.n_steps},   {"refine", cfg.estimates.refine},
                      {"max_drift", cfg.estimates.max_drift}, {"r", cfg.estimates.r}};
    j["soliton"] = {{"c", cfg.soliton.c},
                    {"x0", cfg.soliton.x0},
                    {"n_points", cfg.soliton.n_points},
                    {"length", cfg.soliton.length}};
    j["output"] = {{"dir", cfg.output_dir}};
    return j;
}

}  // namespace airylab::cli
