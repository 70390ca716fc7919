#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "khavinson/cli.hpp"

using khav::cli::run;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string field(const std::string& text, const std::string& key) {
    const auto at = text.find(key + " = ");
    REQUIRE(at != std::string::npos);
    const auto start = at + key.size() + 3;
    return text.substr(start, text.find('\n', start) - start);
}

std::vector<std::vector<double>> parse_csv(const std::string& text, std::string& header) {
    std::istringstream in(text);
    std::getline(in, header);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        const auto comma = line.find(',');
        rows.push_back({std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
    }
    return rows;
}

}  // namespace

TEST_CASE("constant") {
    const auto zero = call({"constant", "--r", "0", "--n", "4"});
    CHECK(zero.code == 0);
    CHECK(std::abs(std::stod(field(zero.out, "frak_c")) - 16.0 / (3.0 * std::numbers::pi)) <=
          1e-15);

    const auto edge = call({"constant", "--r", "1", "--n", "4"});
    CHECK(edge.code == 0);
    CHECK(field(edge.out, "gradient_bound") == "unbounded");
    CHECK(std::abs(std::stod(field(edge.out, "frak_c")) - 3.0 * std::sqrt(3.0) / std::numbers::pi) <=
          1e-14);

    const auto js = call({"constant", "--r", "0.5", "--n", "4", "--json"});
    CHECK(js.code == 0);
    const auto doc = json::parse(js.out);
    CHECK(doc.at("manifest").at("tool") == "khavinson");
    CHECK(doc.at("manifest").contains("wall_time_s"));
    CHECK(doc.at("manifest").at("methods").is_array());
    const auto& rec = doc.at("reports").at(0);
    CHECK(rec.at("method") == "closed_form");
    CHECK(rec.at("tag") == "proven");

    // Text values round-trip through JSON.
    const auto text = call({"constant", "--r", "0.5", "--n", "4"});
    CHECK(std::stod(field(text.out, "frak_c")) == rec.at("frak_c").get<double>());
    CHECK(std::stod(field(text.out, "gradient_bound")) == rec.at("gradient_bound").get<double>());

    const auto three = call({"constant", "--r", "0.5", "--n", "3"});
    CHECK(three.code == 0);
    CHECK(field(three.out, "tag") == "exploratory");

    CHECK(call({"constant", "--r", "1.5"}).code == 2);
    CHECK(call({"constant", "--r", "abc"}).code == 2);
    CHECK(call({"constant", "--n", "3", "--r", "0"}).code == 2);
}

TEST_CASE("usage errors") {
    CHECK(call({}).code == 2);
    CHECK(call({"frobnicate"}).code == 2);
    CHECK(call({"verify"}).code == 2);
    CHECK(call({"verify", "everything"}).code == 2);
    CHECK(call({"oracle", "--method", "quasi"}).code == 2);
    const auto help = call({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("verify") != std::string::npos);
}

TEST_CASE("curve") {
    const auto fc = call({"curve", "--quantity", "frak_c", "--from", "0", "--to", "1", "--steps", "11"});
    REQUIRE(fc.code == 0);
    CHECK(fc.out.find('\r') == std::string::npos);
    std::string header;
    const auto rows = parse_csv(fc.out, header);
    CHECK(header == "r,value");
    REQUIRE(rows.size() == 11);
    CHECK(rows.front()[0] == 0.0);
    CHECK(rows.back()[0] == 1.0);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i][0] > rows[i - 1][0]);
        CHECK(rows[i][1] < rows[i - 1][1]);
    }

    const auto prof =
        call({"curve", "--quantity", "c_of_z", "--r", "0.5", "--from", "0", "--to", "10", "--steps", "41"});
    REQUIRE(prof.code == 0);
    const auto zrows = parse_csv(prof.out, header);
    CHECK(header == "z,value");
    for (const auto& row : zrows) CHECK(row[1] <= zrows.front()[1]);

    CHECK(call({"curve", "--from", "1", "--to", "1"}).code == 2);
    CHECK(call({"curve", "--steps", "1"}).code == 2);
    CHECK(call({"curve", "--quantity", "nonsense"}).code == 2);
    CHECK(call({"curve", "--quantity", "gradient_bound", "--from", "0.5", "--to", "1"}).code == 3);
}

TEST_CASE("files carry a manifest") {
    const auto dir = std::filesystem::temp_directory_path() / "khavinson_cli_test";
    std::filesystem::create_directories(dir);
    const auto csv = (dir / "fc.csv").string();
    CHECK(call({"curve", "--out", csv, "--no-timing"}).code == 0);
    std::ifstream side(csv + ".manifest.json");
    REQUIRE(side.good());
    const auto m = json::parse(side);
    CHECK(m.at("manifest").at("command") == "curve");
    CHECK_FALSE(m.at("manifest").contains("wall_time_s"));

    const auto rep = (dir / "sup.json").string();
    const auto res = call({"verify", "sup", "--out", rep});
    CHECK(res.code == 0);
    std::ifstream in(rep);
    REQUIRE(in.good());
    const auto doc = json::parse(in);
    CHECK(doc.at("reports").size() == 2);
    std::filesystem::remove_all(dir);
}

TEST_CASE("verify exit codes") {
    CHECK(call({"verify", "sup", "--n", "4"}).code == 0);
    CHECK(call({"verify", "identities", "--tol", "1e-7"}).code == 0);
    // An impossible tolerance turns the same suite into a verified violation.
    CHECK(call({"verify", "identities", "--tol", "1e-16"}).code == 1);
}

TEST_CASE("verify output is byte-identical for a fixed seed") {
    const std::vector<std::string> args = {"verify", "identities", "--seed", "42", "--json", "--no-timing"};
    const auto a = call(args);
    const auto b = call(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    const auto doc = json::parse(a.out);
    CHECK(doc.at("manifest").at("seed") == 42);
    CHECK_FALSE(doc.at("manifest").contains("wall_time_s"));
    for (const auto& r : doc.at("reports")) {
        CHECK(r.contains("case"));
        CHECK(r.contains("worst_violation"));
        CHECK(r.contains("location"));
        CHECK(r.contains("tolerance"));
        CHECK(r.contains("pass"));
        CHECK(r.at("seed") == 42);
        CHECK(r.contains("method"));
    }
}

TEST_CASE("oracle and sweep") {
    const auto o = call({"oracle", "--n", "2", "--r", "0", "--theta", "0"});
    CHECK(o.code == 0);
    CHECK(std::abs(std::stod(field(o.out, "value")) - 4.0 / std::numbers::pi) <= 1e-8);
    const auto mc = call({"oracle", "--n", "4", "--r", "0.5", "--method", "monte-carlo",
                          "--samples", "20000", "--seed", "3", "--json", "--no-timing"});
    CHECK(mc.code == 0);
    CHECK(json::parse(mc.out).at("reports").at(0).at("method") == "monte_carlo");
    const auto sw = call({"sweep", "--n", "5", "--r-steps", "2", "--theta-steps", "5", "--json"});
    CHECK(sw.code == 0);
    CHECK(json::parse(sw.out).at("reports").at(0).at("verdict") == "exploratory");
}
