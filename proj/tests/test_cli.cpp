// Drives the qgraph executable as a subprocess and checks its output
// contract: table schemas, exit codes, determinism and CSV/JSON agreement.

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace {

using nlohmann::json;

struct Run {
    int exit_code;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(QGRAPH_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, p)) out.append(buf, n);
    const int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> fields;
        std::stringstream ls(line);
        std::string f;
        while (std::getline(ls, f, ',')) fields.push_back(f);
        rows.push_back(fields);
    }
    return rows;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("symmetry of the five-edge shift") {
    const auto r = run("symmetry --coupling shift --n 5");
    REQUIRE(r.exit_code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["command"] == "symmetry");
    CHECK(j.contains("params"));
    CHECK(j.contains("version"));
    REQUIRE(j["results"].size() == 1);
    CHECK(j["results"][0]["time_reversal"] == false);
    CHECK(j["results"][0]["pt_symmetric"] == true);
}

TEST_CASE("high-energy S-matrix of the negated three-edge shift") {
    const auto r = run("smatrix --coupling shift --n 3 --negate --ell 1 --k 1e6 --format json");
    REQUIRE(r.exit_code == 0);
    const auto j = json::parse(r.out);
    const double expect[3][3] = {{1, -2, -2}, {-2, 1, -2}, {-2, -2, 1}};
    REQUIRE(j["results"].size() == 9);
    for (const auto& e : j["results"]) {
        const int i = e["row"].get<int>() - 1, k = e["col"].get<int>() - 1;
        CHECK(std::abs(e["re"].get<double>() - expect[i][k] / 3.0) < 1e-5);
        CHECK(std::abs(e["im"].get<double>()) < 1e-5);
    }
    CHECK(j["unitarity_defect"].get<double>() < 1e-12);
}

TEST_CASE("band table schema") {
    const auto r = run("bands --mu 0.5 --ell 1.5 --k-max 20 --format csv");
    REQUIRE(r.exit_code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() > 5);
    CHECK(rows[0] == std::vector<std::string>{"mu", "ell", "branch", "k_lo", "k_hi", "edge_lo", "edge_hi"});
    bool negative = false;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        REQUIRE(rows[i].size() == 7);
        CHECK(rows[i][2] != "flat");
        CHECK(std::strtod(rows[i][3].c_str(), nullptr) <= std::strtod(rows[i][4].c_str(), nullptr));
        negative = negative || rows[i][2] == "negative";
    }
    CHECK(negative);
}

TEST_CASE("flat band appears when mu matches") {
    const double mu = (M_PI - 3.0) / 2.0;
    char args[128];
    std::snprintf(args, sizeof args, "bands --mu %.17g --ell 1.5 --k-max 5 --format csv", mu);
    const auto r = run(args);
    REQUIRE(r.exit_code == 0);
    bool found = false;
    for (const auto& row : parse_csv(r.out))
        if (row.size() == 7 && row[2] == "flat") found = std::abs(std::strtod(row[3].c_str(), nullptr) - 1.0) < 1e-9;
    CHECK(found);
}

TEST_CASE("CSV rows round-trip through JSON") {
    const auto csv = run("bands --mu 0.3 --ell 10 --k-max 6 --format csv");
    const auto js = run("bands --mu 0.3 --ell 10 --k-max 6 --format json");
    REQUIRE(csv.exit_code == 0);
    REQUIRE(js.exit_code == 0);
    const auto rows = parse_csv(csv.out);
    const auto results = json::parse(js.out)["results"];
    REQUIRE(rows.size() == results.size() + 1);
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& row = rows[i + 1];
        const auto& obj = results[i];
        for (std::size_t c = 0; c < rows[0].size(); ++c) {
            const auto& v = obj[rows[0][c]];
            if (v.is_string()) CHECK(v.get<std::string>() == row[c]);
            else CHECK(v.get<double>() == std::strtod(row[c].c_str(), nullptr));
        }
    }
}

TEST_CASE("Fermi contour table and plot") {
    const std::string svg = "cli_test_fermi.svg";
    const auto r = run("fermi --mu 0.5 --ell 1.5 --k 1.7 --grid 64 --format csv --svg " + svg);
    REQUIRE(r.exit_code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() > 10);
    CHECK(rows[0] == std::vector<std::string>{"theta1", "theta2"});
    std::ifstream f(svg);
    std::stringstream text;
    text << f.rdbuf();
    CHECK(text.str().rfind("<svg", 0) == 0);
    CHECK(text.str().find("<script") == std::string::npos);
    std::remove(svg.c_str());
}

TEST_CASE("exit codes") {
    CHECK(run("fermi --mu 0.5 --ell 1.5 --k 1.2").exit_code == 3);
    CHECK(run("bands --mu 3").exit_code == 2);
    CHECK(run("bands --ell -1").exit_code == 2);
    CHECK(run("no-such-command").exit_code == 2);
    CHECK(run("").exit_code == 2);
    CHECK(run("smatrix --coupling shift --n 3").exit_code == 2);
    CHECK(run("smatrix --coupling custom --first-row '[1,1,0]' --k 1").exit_code == 2);
    CHECK(run("smatrix --coupling custom --first-row 'not json' --k 1").exit_code == 2);
    CHECK(run("bands --mu 0.5 --output /nonexistent-dir/out.csv").exit_code == 2);
    CHECK(run("--help").exit_code == 0);
}

TEST_CASE("output is byte-identical across runs and thread counts") {
    const auto a = run("spectrum --ell 1.5 --mu-grid 24 --k-max 8 --threads 1 --format csv");
    const auto b = run("spectrum --ell 1.5 --mu-grid 24 --k-max 8 --threads 3 --format csv");
    const auto c = run("spectrum --ell 1.5 --mu-grid 24 --k-max 8 --threads 3 --format csv");
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(b.out == c.out);

    const auto d1 = run("dirac --ell 10 --mu-min 1.5 --mu-max 1.57 --mu-grid 70 --k-min 9.5 --k-max 11 --threads 1");
    const auto d4 = run("dirac --ell 10 --mu-min 1.5 --mu-max 1.57 --mu-grid 70 --k-min 9.5 --k-max 11 --threads 4");
    REQUIRE(d1.exit_code == 0);
    CHECK(d1.out == d4.out);
    CHECK(json::parse(d1.out)["results"].size() >= 2);
}

TEST_CASE("spectrum marks the flat band at ell = 3/2") {
    const auto r = run("spectrum --mu-grid 200 --k-max 4 --format json");
    REQUIRE(r.exit_code == 0);
    const auto j = json::parse(r.out);
    CHECK(std::abs(j["flat_band_mu"].get<double>() - (M_PI - 3.0) / 2.0) < 1e-11);
    CHECK(j["params"]["ell"].get<double>() == 1.5);
    bool negative = false;
    for (const auto& row : j["results"]) negative = negative || row["branch"] == "negative";
    CHECK(negative);
}

TEST_CASE("other commands") {
    // Antibound states are listed by kappa alone.
    const auto ab = run("bound-states --coupling shift --n 4 --phase 0.5 --format csv");
    REQUIRE(ab.exit_code == 0);
    const auto rows = parse_csv(ab.out + "\n");
    std::size_t anti = 0;
    for (const auto& row : rows) {
        if (row.empty() || row[0] != "antibound") continue;
        ++anti;
        CHECK(std::strtod(row[1].c_str(), nullptr) < 0.0);
        CHECK(row.size() == 2);  // trailing empty energy field
    }
    CHECK(anti == 2);

    const auto b = run("bound-states --coupling delta --alpha -3 --n 3 --format json");
    REQUIRE(b.exit_code == 0);
    const auto bj = json::parse(b.out);
    REQUIRE(bj["results"].size() >= 1);
    CHECK(bj["results"][0]["kind"] == "bound");
    CHECK(std::abs(bj["results"][0]["kappa"].get<double>() - 1.0) < 1e-9);

    const auto p = run("psigma --mu 0.7853981633974483 --ell 10 --k-max 10 --grid 4000 --format json");
    REQUIRE(p.exit_code == 0);
    const double ps = json::parse(p.out)["results"][0]["p_sigma"].get<double>();
    CHECK(ps > 0.0);
    CHECK(ps < 1.0);

    const auto s = run("smatrix --coupling perm-invariant --n 4 --u-phase 2 --w-phase 0.5 --k 2 --format json");
    REQUIRE(s.exit_code == 0);
    CHECK(json::parse(s.out)["unitarity_defect"].get<double>() < 1e-12);

    const auto c = run("symmetry --coupling custom --first-row '[[0,0],[1,0],[0,0]]'");
    REQUIRE(c.exit_code == 0);
    CHECK(json::parse(c.out)["results"][0]["pt_symmetric"] == true);
}

}  // TEST_SUITE
