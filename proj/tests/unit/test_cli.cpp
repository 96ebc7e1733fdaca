#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "airylab/cli/commands.hpp"
#include "airylab/cli/config.hpp"
#include "airylab/cli/report.hpp"
#include "airylab/errors.hpp"
#include "support/oracles.hpp"

using namespace airylab;
using namespace airylab::cli;
using nlohmann::json;

namespace {
std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> comments;
};

Csv read_csv(const std::filesystem::path& p) {
    Csv out;
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);
    std::stringstream hs(line);
    for (std::string cell; std::getline(hs, cell, ',');) out.header.push_back(cell);
    while (std::getline(in, line)) {
        if (line.rfind('#', 0) == 0) {
            out.comments.push_back(line);
            continue;
        }
        std::stringstream ls(line);
        std::vector<double> row;
        for (std::string cell; std::getline(ls, cell, ',');) row.push_back(std::stod(cell));
        out.rows.push_back(row);
    }
    return out;
}

std::size_t column(const Csv& c, const std::string& name) {
    for (std::size_t i = 0; i < c.header.size(); ++i)
        if (c.header[i] == name) return i;
    FAIL("missing column " << name);
    return 0;
}

RunConfig small_config(const std::string& kind = "gaussian") {
    return parse_config(json{{"grid", {{"n_points", 128}, {"length", 32.0}}},
                             {"time", {{"horizon", 0.2}, {"n_steps", 8}}},
                             {"datum", {{"kind", kind}, {"amplitude", 0.05}}},
                             {"tolerances", {{"dt", 1e-3}}}});
}

int run(const std::vector<std::string>& args, std::string* out_text = nullptr, std::string* err_text = nullptr) {
    std::vector<const char*> argv{"airylab"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    if (out_text) *out_text = out.str();
    if (err_text) *err_text = err.str();
    return code;
}

std::filesystem::path write_config(const std::string& name, const json& doc) {
    const auto p = oracle::scratch("configs") / (name + ".json");
    std::ofstream(p) << doc.dump();
    return p;
}
}  // namespace

TEST_CASE("config defaults and round trip") {
    const RunConfig cfg = parse_config(json::object());
    CHECK(cfg.grid.n_points == 1024);
    CHECK_FALSE(cfg.time.horizon);
    CHECK(cfg.scheme_constant() == kDefaultSchemeConstant);
    const RunConfig again = parse_config(to_json(cfg));
    CHECK(to_json(again) == to_json(cfg));
    CHECK(parse_config(json{{"C", 2.5}}).scheme_constant() == 2.5);
    CHECK(*parse_config(json{{"time", {{"horizon", 0.5}}}}).time.horizon == 0.5);
    CHECK_FALSE(parse_config(json{{"time", {{"horizon", "auto"}}}}).time.horizon);
}

TEST_CASE("config errors name the key") {
    auto message = [](const json& doc) {
        try {
            parse_config(doc);
        } catch (const DomainError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(message(json{{"gird", 1}}).find("gird") != std::string::npos);
    CHECK(message(json{{"grid", {{"n_points", "many"}}}}).find("grid.n_points") != std::string::npos);
    CHECK(message(json{{"schema_version", 2}}).find("schema_version") != std::string::npos);
    CHECK(message(json{{"C", -1.0}}).find("C") != std::string::npos);
    CHECK_THROWS_AS(datum_generator(DatumConfig{"triangle"}), DomainError);
}

TEST_CASE("number formatting round-trips") {
    for (double v : {0.1, 1.0 / 3.0, 1e-300, -2.5e17, 1.3881524943838228}) CHECK(std::stod(format_double(v)) == v);
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(std::nan("")) == "nan");
    CHECK(format_double(INFINITY) == "inf");
}

TEST_CASE("id resolution") {
    CHECK(resolve_ids({"all"}).size() == 13);
    CHECK(resolve_ids({}).size() == 13);
    CHECK(split_ids("E1,E5") == std::vector<std::string>{"E1", "E5"});
    CHECK(resolve_ids({"E5", "E1"}) == std::vector<std::string>{"E5", "E1"});
    CHECK_THROWS_AS(resolve_ids({"E0"}), DomainError);
}

TEST_CASE("evolve: zero datum gives zero norms") {
    const auto dir = oracle::scratch("evolve_zero");
    std::ostringstream log;
    CHECK(cmd_evolve(small_config("zero"), dir, log) == kExitOk);
    const Csv csv = read_csv(dir / "evolve.csv");
    CHECK(csv.header == norm_series_header());
    CHECK(csv.rows.size() == 9);
    for (const auto& row : csv.rows)
        for (std::size_t i = 1; i < row.size(); ++i) CHECK(row[i] == 0.0);
    REQUIRE(csv.comments.size() == 1);
    CHECK(csv.comments[0] == "# status=ok");
    const json doc = json::parse(slurp(dir / "evolve.json"));
    CHECK(doc["schema_version"] == 1);
    CHECK(doc["command"] == "evolve");
    CHECK(doc["status"] == "ok");
}

TEST_CASE("evolve: soliton conserves L2") {
    const auto dir = oracle::scratch("evolve_soliton");
    RunConfig cfg = small_config("soliton");
    cfg.datum.amplitude = 1.0;
    cfg.grid = {256, 64.0};
    std::ostringstream log;
    CHECK(cmd_evolve(cfg, dir, log) == kExitOk);
    const Csv csv = read_csv(dir / "evolve.csv");
    const std::size_t l2 = column(csv, "l2");
    for (const auto& row : csv.rows) CHECK(std::abs(row[l2] - csv.rows[0][l2]) < 1e-6);
}

TEST_CASE("picard command") {
    const auto dir = oracle::scratch("picard");
    std::ostringstream log;
    CHECK(cmd_picard(small_config(), dir, log) == kExitOk);
    const json doc = json::parse(slurp(dir / "picard.json"));
    for (const char* key : {"C", "theta", "rho", "T_selected", "T", "r", "diagnostics", "fixed_point_residual", "config"})
        CHECK_MESSAGE(doc.contains(key), key);
    CHECK(doc["diagnostics"]["converged"] == true);
    CHECK(doc["fixed_point_residual"].get<double>() < 1e-10);
    CHECK(read_csv(dir / "picard.csv").rows.size() == 9);
}

TEST_CASE("persistence command") {
    const auto dir = oracle::scratch("persistence");
    RunConfig cfg = small_config();
    std::ostringstream log;
    CHECK(cmd_persistence(cfg, dir, log) == kExitOk);
    const Csv csv = read_csv(dir / "persistence.csv");
    for (const auto& row : csv.rows) CHECK(row[column(csv, "l2")] == row[column(csv, "weighted_l2")]);

    cfg.r = 0.5;
    const auto cpath = write_config("bad_r", to_json(cfg));
    std::string err;
    CHECK(run({"persistence", "--config", cpath.string(), "--out", dir.string()}, nullptr, &err) == kExitUsage);
    CHECK(err.find("[0, 1/6]") != std::string::npos);
}

TEST_CASE("verify-estimates front end") {
    const auto dir = oracle::scratch("estimates");
    json doc = to_json(RunConfig{});
    doc["estimates"]["n_points"] = 512;
    doc["estimates"]["length"] = 64.0;
    doc["estimates"]["n_steps"] = 32;
    doc["estimates"]["refine"] = false;
    const auto cpath = write_config("est", doc);
    std::string out;
    std::string err0;
    CHECK(run({"verify-estimates", "--config", cpath.string(), "--ids", "E1", "--out", dir.string()}, &out, &err0) == kExitOk);
    INFO(out, err0);
    CHECK(out.find("E1: PASS") != std::string::npos);
    const json rep = json::parse(slurp(dir / "estimates.json"));
    CHECK(rep["reports"][0]["verdict"] == "PASS");

    std::string err;
    CHECK(run({"verify-estimates", "--ids", "E42", "--out", dir.string()}, nullptr, &err) == kExitUsage);
    CHECK(err.find("E13") != std::string::npos);
}

TEST_CASE("soliton command") {
    const auto dir = oracle::scratch("soliton");
    json doc = to_json(RunConfig{});
    doc["soliton"]["n_points"] = 1024;
    std::string out;
    CHECK(run({"soliton", "--config", write_config("sol", doc).string(), "--out", dir.string()}, &out) == kExitOk);
    const json rep = json::parse(slurp(dir / "soliton.json"));
    CHECK(rep["peak"].get<double>() == doctest::Approx(std::cbrt(2.5)).epsilon(1e-10));
    CHECK(rep["ode_residual"].get<double>() < 1e-8);

    doc["soliton"]["c"] = -1.0;
    std::string err;
    CHECK(run({"soliton", "--config", write_config("sol_bad", doc).string(), "--out", dir.string()}, nullptr, &err) ==
          kExitUsage);
    CHECK_FALSE(err.empty());
}

TEST_CASE("usage errors") {
    CHECK(run({}) == kExitUsage);
    CHECK(run({"frobnicate"}) == kExitUsage);
    CHECK(run({"evolve", "--config", "/nonexistent/config.json"}) == kExitUsage);
    std::string out;
    CHECK(run({"--help"}, &out) == kExitOk);
    CHECK(out.find("verify-estimates") != std::string::npos);
}

TEST_CASE("outputs are byte-identical across runs") {
    const auto a = oracle::scratch("det_a");
    const auto b = oracle::scratch("det_b");
    std::ostringstream log;
    CHECK(cmd_picard(small_config(), a, log) == kExitOk);
    CHECK(cmd_picard(small_config(), b, log) == kExitOk);
    CHECK(slurp(a / "picard.csv") == slurp(b / "picard.csv"));
    CHECK(slurp(a / "picard.json") == slurp(b / "picard.json"));
}
