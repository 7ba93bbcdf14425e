#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "cli.hpp"
#include "fockport/errors.hpp"
#include "output.hpp"

using namespace fockport;
using fockport::cli::run;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        rows.push_back(cells);
    }
    return rows;
}

std::string temp_file(const std::string& name, const std::string& contents) {
    const std::string path = std::string(P_tmpdir) + "/fockport_test_" + name;
    std::ofstream(path) << contents;
    return path;
}

}  // namespace

TEST_CASE("rotate") {
    const Result r = call({"rotate", "--n", "20", "--m", "0", "--beta-deg", "90"});
    REQUIRE(r.code == 0);
    const auto rows = csv(r.out);
    REQUIRE(rows.size() == 22);
    CHECK(rows[0] == std::vector<std::string>{"m", "re", "im", "modulus", "phase"});
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const int m = std::stoi(rows[i][0]);
        if (m % 2 != 0) CHECK(std::stod(rows[i][3]) < 1e-12);
    }

    const Result unit = call({"rotate", "--n", "2", "--m", "1", "--beta-deg", "0"});
    REQUIRE(unit.code == 0);
    const auto urows = csv(unit.out);
    REQUIRE(urows.size() == 4);
    CHECK(urows[3][3] == "1");
    CHECK(urows[1][3] == "0");
    CHECK(urows[2][3] == "0");

    CHECK(call({"rotate", "--n", "2", "--m", "1"}).code == 2);
    CHECK(call({"rotate", "--n", "2", "--beta-deg", "10"}).code == 2);
    CHECK(call({"rotate", "--n", "2", "--m", "3", "--beta-deg", "10"}).code == 3);
    CHECK(call({"rotate", "--n", "2", "--m", "0.25", "--beta-deg", "10"}).code == 3);
    CHECK(call({"rotate", "--n", "2", "--m", "0", "--beta-deg", "10", "--format", "xml"}).code == 2);
    CHECK(call({"frobnicate"}).code == 2);
    CHECK(call({}).code == 2);
}

TEST_CASE("rotate from a state file") {
    const std::string path = temp_file("state.txt", "# m re im\n-1 1 0\n1, 0, 1\n");
    const Result r = call({"rotate", "--n", "2", "--input-state-file", path, "--beta-deg", "0"});
    REQUIRE(r.code == 0);
    const auto rows = csv(r.out);
    CHECK(std::stod(rows[1][3]) == doctest::Approx(std::sqrt(0.5)));
    CHECK(std::stod(rows[3][2]) == doctest::Approx(std::sqrt(0.5)));
    const std::string empty = temp_file("empty_state.txt", "# nothing\n");
    CHECK(call({"rotate", "--n", "2", "--input-state-file", empty, "--beta-deg", "0"}).code == 2);
    const std::string bad = temp_file("bad_state.txt", "5 1\n");
    CHECK(call({"rotate", "--n", "2", "--input-state-file", bad, "--beta-deg", "0"}).code == 3);
    std::remove(path.c_str());
    std::remove(empty.c_str());
    std::remove(bad.c_str());
}

TEST_CASE("teleport") {
    const Result peak =
        call({"teleport", "--resource", "j0", "--n", "20", "--beta-deg", "85.5", "--q", "19", "--parity-correction"});
    REQUIRE(peak.code == 0);
    auto rows = csv(peak.out);
    CHECK(rows[0] == std::vector<std::string>{"q", "fidelity", "bound", "probability"});
    CHECK(std::stod(rows[1][1]) == doctest::Approx(0.993).epsilon(0.005));

    const Result half =
        call({"teleport", "--resource", "j0", "--n", "20", "--beta-deg", "90", "--q", "19", "--parity-correction"});
    CHECK(std::stod(csv(half.out)[1][1]) == doctest::Approx(0.498).epsilon(0.005));

    const Result ideal = call({"teleport", "--resource", "ideal", "--n", "20", "--alpha", "0", "--q", "5"});
    CHECK(std::stod(csv(ideal.out)[1][1]) == 1.0);

    const Result unreachable = call({"teleport", "--resource", "j0", "--n", "20", "--beta-deg", "90", "--alpha", "0", "--q", "1"});
    REQUIRE(unreachable.code == 0);
    rows = csv(unreachable.out);
    CHECK(rows[1][1].empty());
    CHECK(rows[1][3] == "0");

    const Result all = call({"teleport", "--resource", "2pt", "--n", "21", "--beta-deg", "90", "--all-q", "--format", "json"});
    REQUIRE(all.code == 0);
    const auto doc = nlohmann::json::parse(all.out);
    CHECK(doc["meta"]["command"] == "teleport");
    CHECK(doc["meta"]["average_fidelity"].get<double>() == doctest::Approx(0.6634836945033803).epsilon(1e-10));
    CHECK(doc["rows"].back()["q"] == "average");
    CHECK(doc["rows"].size() == 21 + 37 + 2);

    CHECK(call({"teleport", "--resource", "j0", "--n", "20"}).code == 2);
    CHECK(call({"teleport", "--resource", "7pt", "--n", "20", "--q", "1"}).code == 2);
    CHECK(call({"teleport", "--resource", "j0", "--n", "21", "--q", "1"}).code == 3);
    CHECK(call({"teleport", "--resource", "j0", "--n", "20", "--q", "1", "--alpha", "-2"}).code == 2);
}

TEST_CASE("csv and json carry the same numbers") {
    const std::vector<std::string> base{"resource", "--resource", "2pt", "--n", "11", "--beta-deg", "70"};
    auto csv_args = base;
    auto json_args = base;
    json_args.insert(json_args.end(), {"--format", "json"});
    const auto rows = csv(call(csv_args).out);
    const auto doc = nlohmann::json::parse(call(json_args).out);
    REQUIRE(doc["rows"].size() == rows.size() - 1);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < rows[0].size(); ++c) {
            const auto& v = doc["rows"][r - 1][rows[0][c]];
            CHECK(std::stod(rows[r][c]) == v.get<double>());
        }
    }
    CHECK(doc["meta"]["zero_count"] == 0);
}

TEST_CASE("figure output") {
    const Result f7 = call({"figure", "--id", "7", "--format", "csv"});
    REQUIRE(f7.code == 0);
    const auto rows = csv(f7.out);
    std::size_t beta_col = 0, f_col = 0;
    for (std::size_t c = 0; c < rows[0].size(); ++c) {
        if (rows[0][c] == "beta_deg") beta_col = c;
        if (rows[0][c] == "fidelity") f_col = c;
    }
    double best = -1.0, best_beta = 0.0;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const double f = std::stod(rows[r][f_col]);
        if (f > best) {
            best = f;
            best_beta = std::stod(rows[r][beta_col]);
        }
    }
    CHECK(best_beta == doctest::Approx(85.5));

    const Result f4 = call({"figure", "--id", "4", "--format", "json"});
    REQUIRE(f4.code == 0);
    const auto doc = nlohmann::json::parse(f4.out);
    std::set<std::string> blocks;
    for (const auto& row : doc["rows"]) blocks.insert(row["block"].get<std::string>());
    CHECK(blocks == std::set<std::string>{"N=200", "N=2000", "N=20000"});

    CHECK(call({"figure", "--id", "9"}).code == 2);
    CHECK(call({"figure", "--id", "3"}).out == call({"figure", "--id", "3"}).out);
}

TEST_CASE("sweep from spec files") {
    const std::string kv = temp_file("spec.txt",
                                     "# figure 7 neighbourhood\nresource = j0\nN = 20\nbeta_start_deg = 84\n"
                                     "beta_stop_deg = 87\nq = 19\nparity_correction = true\n");
    const Result a = call({"sweep", "--spec", kv, "--threads", "1"});
    REQUIRE(a.code == 0);
    CHECK(a.out == call({"sweep", "--spec", kv, "--threads", "4"}).out);
    CHECK(csv(a.out).size() == 1 + 7);

    const std::string js = temp_file("spec.json",
                                     R"({"resource":"j0","N":20,"beta_start_deg":84,"beta_stop_deg":87,)"
                                     R"("q":[19],"parity_correction":true})");
    CHECK(call({"sweep", "--spec", js}).out == a.out);

    const std::string empty = temp_file("empty.txt", "");
    CHECK(call({"sweep", "--spec", empty}).code == 2);
    const std::string unknown = temp_file("unknown.txt", "resource=j0\ncolour=red\n");
    const Result u = call({"sweep", "--spec", unknown});
    CHECK(u.code == 2);
    CHECK(u.err.find("colour") != std::string::npos);
    CHECK(call({"sweep", "--spec", "/nonexistent/spec"}).code == 2);
    for (const auto& p : {kv, js, empty, unknown}) std::remove(p.c_str());
}

TEST_CASE("spec parsing") {
    const SweepSpec s = cli::parse_sweep_spec("resource=2pt\nn=21\nalpha=2.5\nq=all\nparity_index=shifted\n");
    CHECK(s.resource_kind == ResourceKind::two_point);
    CHECK(s.total_photons == 21);
    CHECK(s.alpha == 2.5);
    CHECK_FALSE(s.q_list.has_value());
    CHECK(s.corrections.parity_index == ParityIndex::shifted);
    CHECK(s.beta_grid.size() == 361);
    CHECK_THROWS_AS(cli::parse_sweep_spec("   \n"), SpecError);
    CHECK_THROWS_AS(cli::parse_sweep_spec("{not json"), SpecError);
    CHECK_THROWS_AS(cli::parse_sweep_spec("n=twenty"), SpecError);
    CHECK_THROWS_AS(cli::parse_sweep_spec("resource=j0\nn=21"), SpecError);
    CHECK_THROWS_AS(cli::parse_sweep_spec("just words"), SpecError);
}

TEST_CASE("beta-q and metadata") {
    const Result r = call({"beta-q", "--n", "20", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["rows"][0]["beta_numeric_deg"].get<double>() == doctest::Approx(85.0));
    CHECK(doc["meta"]["version"] == kLibraryVersion);
    CHECK_FALSE(doc["meta"].contains("timestamp"));
    const Result t = call({"beta-q", "--n", "10", "--format", "json", "--timestamp"});
    CHECK(nlohmann::json::parse(t.out)["meta"].contains("timestamp"));
    CHECK(call({"beta-q", "--n", "10", "--objective", "vibes"}).code == 2);
}

TEST_CASE("number formatting") {
    CHECK(cli::format_number(-0.0, 12) == "0");
    CHECK(cli::format_number(0.1234567890123456, 12) == "0.123456789012");
    CHECK(cli::format_number(1e-300, 3) == "1e-300");
    CHECK(cli::format_number(std::nan(""), 12).empty());
    cli::OutputTable t;
    t.columns = {"a", "b"};
    t.rows.push_back({std::string("x,y"), std::monostate{}});
    std::ostringstream os;
    cli::write_csv(t, 12, os);
    CHECK(os.str() == "a,b\n\"x,y\",\n");
}
