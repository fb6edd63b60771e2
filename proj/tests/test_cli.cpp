#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "cli_main.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path work_dir() {
    const fs::path dir = fs::temp_directory_path() / "quasispec-cli-tests";
    fs::create_directories(dir);
    return dir;
}

fs::path out_path(const std::string& name) {
    return work_dir() / name;
}

int run_cli(std::vector<std::string> args) {
    return qs::cli::run(args);
}

json read_json(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    return json::parse(in);
}

std::string read_text(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---- minimal JSON-Schema checker (type / enum / properties / required /
// ---- items / minItems / maxItems / anyOf / $ref to a sibling file)

json load_schema(const std::string& file) {
    std::ifstream in(std::string(QS_SCHEMA_DIR) + "/" + file);
    REQUIRE(in.good());
    return json::parse(in);
}

bool type_matches(const json& v, const std::string& t) {
    if (t == "object") return v.is_object();
    if (t == "array") return v.is_array();
    if (t == "string") return v.is_string();
    if (t == "number") return v.is_number();
    if (t == "integer") return v.is_number_integer();
    if (t == "boolean") return v.is_boolean();
    if (t == "null") return v.is_null();
    return false;
}

void check_schema(const json& schema, const json& v, const std::string& where,
                  std::vector<std::string>& errors) {
    if (schema.contains("$ref")) {
        check_schema(load_schema(schema["$ref"].get<std::string>()), v, where,
                     errors);
        return;
    }
    if (schema.contains("anyOf")) {
        for (const json& branch : schema["anyOf"]) {
            std::vector<std::string> branch_errors;
            check_schema(branch, v, where, branch_errors);
            if (branch_errors.empty()) {
                return;
            }
        }
        errors.push_back(where + ": no anyOf branch matched");
        return;
    }
    if (schema.contains("enum")) {
        for (const json& allowed : schema["enum"]) {
            if (v == allowed) {
                return;
            }
        }
        errors.push_back(where + ": value " + v.dump() + " not in enum");
        return;
    }
    if (schema.contains("type")) {
        const std::string t = schema["type"].get<std::string>();
        if (!type_matches(v, t)) {
            errors.push_back(where + ": expected " + t + ", got " + v.dump());
            return;
        }
    }
    if (schema.contains("required")) {
        for (const json& key : schema["required"]) {
            if (!v.contains(key.get<std::string>())) {
                errors.push_back(where + ": missing required key '" +
                                 key.get<std::string>() + "'");
            }
        }
    }
    if (schema.contains("properties") && v.is_object()) {
        for (const auto& [key, sub] : schema["properties"].items()) {
            if (v.contains(key)) {
                check_schema(sub, v[key], where + "." + key, errors);
            }
        }
    }
    if (v.is_array()) {
        if (schema.contains("minItems") &&
            v.size() < schema["minItems"].get<std::size_t>()) {
            errors.push_back(where + ": fewer than minItems entries");
        }
        if (schema.contains("maxItems") &&
            v.size() > schema["maxItems"].get<std::size_t>()) {
            errors.push_back(where + ": more than maxItems entries");
        }
        if (schema.contains("items")) {
            for (std::size_t i = 0; i < v.size(); ++i) {
                check_schema(schema["items"], v[i],
                             where + "[" + std::to_string(i) + "]", errors);
            }
        }
    }
}

void expect_valid(const json& doc, const std::string& schema_file) {
    std::vector<std::string> errors;
    check_schema(load_schema(schema_file), doc, "$", errors);
    for (const std::string& e : errors) {
        FAIL_CHECK(schema_file << ": " << e);
    }
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("generate: substitution and rotation words") {
    const fs::path p = out_path("generate.json");

    REQUIRE(run_cli({"generate", "--model", "fibonacci", "--length", "8",
                     "--out", p.string()}) == 0);
    json doc = read_json(p);
    expect_valid(doc, "generate.schema.json");
    CHECK(doc["word"] == "abaababa");
    CHECK(doc["potential"] ==
          json::array({0.0, 1.0, 0.0, 0.0, 1.0, 0.0, 1.0, 0.0}));

    REQUIRE(run_cli({"generate", "--model", "sturmian", "--alpha", "golden",
                     "--length", "5", "--out", p.string()}) == 0);
    doc = read_json(p);
    expect_valid(doc, "generate.schema.json");
    CHECK(doc["word"] == "10110");
    CHECK(doc["potential"] == json::array({1.0, 0.0, 1.0, 1.0, 0.0}));
    CHECK(doc["model"]["alpha_value"].get<double>() ==
          doctest::Approx(0.6180339887498949).epsilon(1e-15));

    REQUIRE(run_cli({"generate", "--model", "rudin-shapiro", "--length", "4",
                     "--out", p.string()}) == 0);
    doc = read_json(p);
    expect_valid(doc, "generate.schema.json");
    CHECK(doc["word"] == "abac");
    CHECK(doc["potential"] == json::array({0.0, 1.0, 0.0, 2.0}));
}

TEST_CASE("generate: csv format and usage errors") {
    const fs::path p = out_path("generate.csv");
    REQUIRE(run_cli({"generate", "--model", "sturmian", "--alpha", "golden",
                     "--length", "5", "--format", "csv", "--out",
                     p.string()}) == 0);
    CHECK(read_text(p) ==
          "site,symbol,value\n1,1,1\n2,0,0\n3,1,1\n4,1,1\n5,0,0\n");

    CHECK(run_cli({"generate", "--model", "nosuch", "--length", "4"}) == 2);
    CHECK(run_cli({"generate", "--model", "fibonacci"}) == 2); // no --length
    CHECK(run_cli({"generate", "--model", "fibonacci", "--length", "0"}) ==
          2);
    CHECK(run_cli({"nosuchcommand"}) == 2);
}

TEST_CASE("complexity: Sturmian law and the cache") {
    const fs::path p = out_path("complexity.json");
    unsetenv("QUASISPEC_CACHE");

    REQUIRE(run_cli({"complexity", "--model", "fibonacci", "--nmax", "12",
                     "--length", "400", "--out", p.string()}) == 0);
    json doc = read_json(p);
    expect_valid(doc, "complexity.schema.json");
    CHECK(doc["cache"] == "off");
    CHECK(doc["stabilized"] == true);
    REQUIRE(doc["p"].size() == 12);
    for (std::size_t n = 1; n <= 12; ++n) {
        CHECK(doc["p"][n - 1].get<std::int64_t>() ==
              static_cast<std::int64_t>(n + 1));
    }
    const json p_uncached = doc["p"];

    const fs::path cache_dir = work_dir() / "cache";
    fs::remove_all(cache_dir);
    setenv("QUASISPEC_CACHE", cache_dir.c_str(), 1);
    REQUIRE(run_cli({"complexity", "--model", "fibonacci", "--nmax", "12",
                     "--length", "400", "--out", p.string()}) == 0);
    doc = read_json(p);
    CHECK(doc["cache"] == "miss");
    CHECK(doc["p"] == p_uncached);
    REQUIRE(run_cli({"complexity", "--model", "fibonacci", "--nmax", "12",
                     "--length", "400", "--out", p.string()}) == 0);
    doc = read_json(p);
    CHECK(doc["cache"] == "hit");
    CHECK(doc["p"] == p_uncached);
    unsetenv("QUASISPEC_CACHE");

    // prefix too short for the requested n_max
    CHECK(run_cli({"complexity", "--model", "fibonacci", "--nmax", "50",
                   "--length", "60"}) == 2);
}

TEST_CASE("spectrum: free measure, counts, and preconditions") {
    const fs::path p = out_path("spectrum.json");
    REQUIRE(run_cli({"spectrum", "--model", "sturmian", "--alpha", "golden",
                     "--lambda", "0", "--level", "6", "--out",
                     p.string()}) == 0);
    const json doc = read_json(p);
    expect_valid(doc, "spectrum.schema.json");
    CHECK(doc["q_n"].get<std::int64_t>() == 13);
    CHECK(doc["bands"].size() == 13);
    CHECK(doc["measure"].get<double>() == doctest::Approx(4.0).epsilon(1e-6));
    REQUIRE(doc["intervals"].size() == 1);
    CHECK(doc["intervals"][0][0].get<double>() ==
          doctest::Approx(-2.0).epsilon(1e-6));
    CHECK(doc["intervals"][0][1].get<double>() ==
          doctest::Approx(2.0).epsilon(1e-6));

    // rational alpha and substitution models are usage errors
    CHECK(run_cli({"spectrum", "--model", "sturmian", "--alpha",
                   "quad:1,0,5,2", "--level", "4"}) == 2);
    CHECK(run_cli({"spectrum", "--model", "fibonacci", "--level", "4"}) == 2);
    CHECK(run_cli({"spectrum", "--model", "sturmian", "--alpha", "0.618",
                   "--level", "4"}) == 2);
}

TEST_CASE("tracemap: compiled map, orbit, classification grid") {
    const fs::path p = out_path("tracemap.json");

    REQUIRE(run_cli({"tracemap", "--model", "fibonacci", "--level", "3",
                     "--energy", "0.5", "--out", p.string()}) == 0);
    json doc = read_json(p);
    expect_valid(doc, "tracemap.schema.json");
    CHECK(doc["map"]["x"] == "z");
    CHECK(doc["map"]["y"] == "x");
    CHECK(doc["map"]["z"] == "x*z - y");
    CHECK(doc["orbit"].size() == 4);

    REQUIRE(run_cli({"tracemap", "--model", "sturmian", "--alpha", "golden",
                     "--lambda", "1", "--level", "8", "--energy", "0.5",
                     "--out", p.string()}) == 0);
    doc = read_json(p);
    expect_valid(doc, "tracemap.schema.json");
    CHECK(doc["bound"].get<double>() == doctest::Approx(5.0).epsilon(1e-12));
    REQUIRE(doc["orbit"].size() == 10); // n = -1 .. 8
    CHECK(doc["orbit"][9]["n"].get<std::int64_t>() == 8);
    CHECK(doc["orbit"][9]["x"].get<double>() ==
          doctest::Approx(4.155175019463).epsilon(1e-9));
    CHECK(doc["class"] == "undecided_in");

    REQUIRE(run_cli({"tracemap", "--model", "sturmian", "--alpha", "golden",
                     "--lambda", "1", "--level", "12", "--energies",
                     "-3:4:36", "--out", p.string()}) == 0);
    doc = read_json(p);
    expect_valid(doc, "tracemap.schema.json");
    CHECK(doc["energies"].size() == 36);
    CHECK(doc["certified_out"].get<std::int64_t>() +
              doc["undecided_in"].get<std::int64_t>() ==
          36);
    CHECK(doc["certified_out"].get<std::int64_t>() > 0);

    // no compiled 3-variable map for a 4-letter substitution
    CHECK(run_cli({"tracemap", "--model", "rudin-shapiro", "--level", "3"}) ==
          2);
    // rotation model needs --energy or --energies
    CHECK(run_cli({"tracemap", "--model", "sturmian", "--alpha", "golden",
                   "--level", "3"}) == 2);
    // malformed grid
    CHECK(run_cli({"tracemap", "--model", "sturmian", "--alpha", "golden",
                   "--level", "3", "--energies", "1:2"}) == 2);
}

TEST_CASE("gordon: two-block certificates on the golden model") {
    const fs::path p = out_path("gordon.json");
    REQUIRE(run_cli({"gordon", "--model", "sturmian", "--alpha", "golden",
                     "--lambda", "1", "--nmax", "6", "--energies-count",
                     "12", "--seed", "5", "--out", p.string()}) == 0);
    const json doc = read_json(p);
    expect_valid(doc, "gordon.schema.json");
    // C_1 = 2 + sqrt(8 + 1) = 5
    CHECK(doc["C"].get<double>() == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(doc["squares_found"].get<std::int64_t>() == 6);
    // golden run multiplicities never reach 3: no block-aligned cubes
    CHECK(doc["cubes_found"].get<std::int64_t>() == 0);
    REQUIRE(doc["certificates"].size() == 6);
    for (const json& cert : doc["certificates"]) {
        CHECK(cert["kind"] == "two-block");
        CHECK(cert["pass"].get<std::int64_t>() == 12);
        CHECK(cert["trace_rejected"].get<std::int64_t>() == 0);
        CHECK(cert["min_attained"].get<double>() >= 0.1 - 1e-9);
        CHECK(cert["max_ch_residual"].get<double>() <= 1e-8);
    }
}

TEST_CASE("gordon: substitution paths") {
    const fs::path p = out_path("gordon_sub.json");
    // binary-non-pisot contains aaaa: three-block certificates from a
    // fourth power
    REQUIRE(run_cli({"gordon", "--model", "binary-non-pisot", "--lambda",
                     "1", "--energies-count", "10", "--seed", "3", "--out",
                     p.string()}) == 0);
    json doc = read_json(p);
    expect_valid(doc, "gordon.schema.json");
    REQUIRE(doc["certificates"].size() == 1);
    CHECK(doc["certificates"][0]["kind"] == "three-block");
    CHECK(doc["certificates"][0]["pass"].get<std::int64_t>() == 10);
    CHECK(doc["cubes_found"].get<std::int64_t>() == 1);

    // rudin-shapiro has no fourth powers of short bases
    REQUIRE(run_cli({"gordon", "--model", "rudin-shapiro", "--nmax", "6",
                     "--energies-count", "5", "--out", p.string()}) == 0);
    doc = read_json(p);
    expect_valid(doc, "gordon.schema.json");
    CHECK(doc["certificates"].empty());
    CHECK(doc["note"] == "no power structure found up to scanned length");
}

TEST_CASE("gordon: fixed seed makes runs identical") {
    const fs::path p1 = out_path("gordon_a.json");
    const fs::path p2 = out_path("gordon_b.json");
    const std::vector<std::string> base{
        "gordon", "--model", "sturmian", "--alpha", "golden",
        "--lambda", "2",      "--nmax",  "4",       "--energies-count",
        "8",      "--seed",  "11"};
    std::vector<std::string> a = base;
    a.insert(a.end(), {"--out", p1.string()});
    std::vector<std::string> b = base;
    b.insert(b.end(), {"--out", p2.string()});
    REQUIRE(run_cli(a) == 0);
    REQUIRE(run_cli(b) == 0);
    CHECK(read_text(p1) == read_text(p2));
}

TEST_CASE("lyapunov: csv output and positivity off the spectrum") {
    const fs::path p = out_path("lyapunov.csv");
    REQUIRE(run_cli({"lyapunov", "--model", "sturmian", "--alpha", "golden",
                     "--lambda", "2", "--energies", "10:10:1", "--n", "3000",
                     "--format", "csv", "--out", p.string()}) == 0);
    const std::string text = read_text(p);
    CHECK(text.rfind("E,gamma\n", 0) == 0);
    std::stringstream ss(text.substr(text.find('\n') + 1));
    double E = 0.0, gamma = 0.0;
    char comma = 0;
    REQUIRE((ss >> E >> comma >> gamma));
    CHECK(E == doctest::Approx(10.0));
    CHECK(gamma > 1.0);

    const fs::path pj = out_path("lyapunov.json");
    REQUIRE(run_cli({"lyapunov", "--model", "sturmian", "--alpha", "golden",
                     "--lambda", "2", "--energies", "0:4:5", "--n", "1000",
                     "--out", pj.string()}) == 0);
    const json doc = read_json(pj);
    expect_valid(doc, "lyapunov.schema.json");
    CHECK(doc["points"].size() == 5);

    CHECK(run_cli({"lyapunov", "--model", "sturmian", "--alpha", "golden",
                   "--energies", "0:4:5", "--n", "0"}) == 2);
}

TEST_CASE("dynamics: ballistic fit, null fit, strict contamination") {
    const fs::path p = out_path("dynamics.json");
    REQUIRE(run_cli({"dynamics", "--model", "sturmian", "--alpha", "golden",
                     "--lambda", "0", "--N", "60", "--tmin", "1", "--tmax",
                     "12", "--ntimes", "9", "--out", p.string()}) == 0);
    json doc = read_json(p);
    expect_valid(doc, "dynamics.schema.json");
    REQUIRE(doc["samples"].size() == 9);
    CHECK(doc["fit"]["exponent"].get<double>() ==
          doctest::Approx(2.0).epsilon(0.03));
    CHECK(doc["fit"]["contaminated"] == false);

    // too few samples for a fit: document still written, fit is null
    REQUIRE(run_cli({"dynamics", "--model", "sturmian", "--alpha", "golden",
                     "--lambda", "0", "--N", "40", "--tmin", "1", "--tmax",
                     "12", "--ntimes", "6", "--out", p.string()}) == 0);
    doc = read_json(p);
    expect_valid(doc, "dynamics.schema.json");
    CHECK(doc["fit"].is_null());

    // strict mode surfaces contamination as a resolution failure
    CHECK(run_cli({"dynamics", "--model", "sturmian", "--alpha", "golden",
                   "--lambda", "0", "--N", "25", "--tmin", "3", "--tmax",
                   "60", "--ntimes", "9", "--strict", "--out",
                   p.string()}) == 3);

    // csv keeps the documented header
    const fs::path pc = out_path("dynamics.csv");
    REQUIRE(run_cli({"dynamics", "--model", "sturmian", "--alpha", "golden",
                     "--lambda", "0", "--N", "30", "--tmin", "1", "--tmax",
                     "11", "--ntimes", "8", "--format", "csv", "--out",
                     pc.string()}) == 0);
    CHECK(read_text(pc).rfind("T,value,contaminated\n", 0) == 0);
}

} // TEST_SUITE
