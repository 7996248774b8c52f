#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

const std::string kBin = SUSP_CLI_PATH;

struct RunOutcome {
    int exit_code = -1;
};

RunOutcome run(const std::string& args) {
    const std::string cmd = kBin + " " + args + " 2> /dev/null";
    const int rc = std::system(cmd.c_str());
    return {WEXITSTATUS(rc)};
}

fs::path workdir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "susp_cli_test";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p);
    REQUIRE(is.good());
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

// rows of a curve CSV: h,n,lambda1,lambda2,s,adm1,adm2
struct CsvRow {
    double h, n;
    std::string adm1, adm2;
};

std::vector<CsvRow> read_curve_csv(const fs::path& p) {
    std::ifstream is(p);
    REQUIRE(is.good());
    std::vector<CsvRow> rows;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#' || line[0] == 'h') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        CsvRow r{};
        double l1, l2;
        std::string s;
        ls >> r.h >> r.n >> l1 >> l2 >> s >> r.adm1 >> r.adm2;
        rows.push_back(r);
    }
    return rows;
}

const std::string kShockRight = "0.2,0.07771003538730281";
const std::string kRareRight = "1.0,0.09727236071248435";

}  // namespace

TEST_CASE("curves: rarefaction anchor reproduces the sample point") {
    const fs::path prefix = workdir() / "rare_";
    REQUIRE(run("curves --left 0.4,0.08 --h-range 0.1:1.0:46 --out " + prefix.string())
                .exit_code == 0);

    const auto r2 = read_curve_csv(prefix.string() + "r2.csv");
    REQUIRE_FALSE(r2.empty());
    // h grid [0.4, 1.0] with 46 points contains h = 1.0 exactly
    const CsvRow& last = r2.back();
    CHECK(last.h == Catch::Approx(1.0).margin(1e-12));
    CHECK(last.n == Catch::Approx(0.09727236071248435).margin(1e-10));
    CHECK(std::abs(last.n - 0.0972723141) < 1e-6);  // the printed sample digits

    // R1 curve is the vertical line h = 0.4
    const auto r1 = read_curve_csv(prefix.string() + "r1.csv");
    for (const CsvRow& row : r1) REQUIRE(row.h == 0.4);
}

TEST_CASE("curves: step-down anchor admits no 1-shock") {
    const fs::path prefix = workdir() / "shock_";
    REQUIRE(run("curves --left 1,0.1 --h-range 0.05:0.99:100 --out " + prefix.string())
                .exit_code == 0);
    const auto locus = read_curve_csv(prefix.string() + "hugoniot.csv");
    REQUIRE(locus.size() == 100);
    for (const CsvRow& row : locus) {
        REQUIRE(row.h < 1.0);
        REQUIRE(row.adm1 == "false");
    }
}

TEST_CASE("solve: shock and rarefaction JSON") {
    const fs::path js = workdir() / "ws.json";
    REQUIRE(run("solve --left 1,0.1 --right " + kShockRight + " --out " + js.string())
                .exit_code == 0);
    nlohmann::json j = nlohmann::json::parse(slurp(js));
    REQUIRE(j["waves"].size() == 1);
    CHECK(j["waves"][0]["kind"] == "shock");
    CHECK(j["waves"][0]["family"] == 2);
    CHECK(std::abs(j["waves"][0]["speed"].get<double>() - 0.41333333333333333) < 1e-6);

    REQUIRE(run("solve --left 0.4,0.08 --right " + kRareRight + " --out " + js.string())
                .exit_code == 0);
    j = nlohmann::json::parse(slurp(js));
    REQUIRE(j["waves"].size() == 1);
    CHECK(j["waves"][0]["kind"] == "rarefaction");
    CHECK(std::abs(j["waves"][0]["xi"][0].get<double>() - 0.16) < 1e-9);
    CHECK(std::abs(j["waves"][0]["xi"][1].get<double>() - 1.0) < 1e-9);

    REQUIRE(run("solve --left 0.5,0.05 --right 0.5,0.05 --out " + js.string()).exit_code == 0);
    j = nlohmann::json::parse(slurp(js));
    CHECK(j["waves"].empty());
}

TEST_CASE("exit codes") {
    CHECK(run("solve --left 1,1.5 --right 0.5,0.1 --out /dev/null").exit_code == 2);
    CHECK(run("solve --left 0.4,0.08 --right 0.2,0.19 --out /dev/null").exit_code == 4);
    CHECK(run("eigen --state=-1,0 --out /dev/null").exit_code == 2);
    CHECK(run("solve --left 1,0.1 --out /dev/null").exit_code == 2);  // missing --right
}

TEST_CASE("identical configs give byte-identical output") {
    const fs::path a = workdir() / "a.csv";
    const fs::path b = workdir() / "b.csv";
    const std::string args =
        "sample --left 0.4,0.08 --right " + kRareRight + " --T 1 --grid 200 --domain=-1:2";
    REQUIRE(run(args + " --out " + a.string()).exit_code == 0);
    REQUIRE(run(args + " --out " + b.string()).exit_code == 0);
    CHECK(slurp(a) == slurp(b));
}

TEST_CASE("validate passes on good data and fails with a corrupted speed") {
    const std::string common = " --left 1,0.1 --right " + kShockRight +
                               " --grid 800 --domain=-1:2 --T 1 --out /dev/null";
    CHECK(run("validate" + common).exit_code == 0);
    CHECK(run("validate" + common + " --speed-offset 0.1").exit_code == 5);
}

TEST_CASE("film-exact profile") {
    const fs::path csv = workdir() / "film.csv";
    REQUIRE(run("film-exact --T 1 --grid 1000 --domain=-0.5:3 --out " + csv.string())
                .exit_code == 0);
    const std::string body = slurp(csv);
    CHECK(body.find("x,h,n") != std::string::npos);
    CHECK(body.find("# T=1") != std::string::npos);
}

TEST_CASE("config file values are used and flags win") {
    const fs::path cfgp = workdir() / "run.cfg";
    {
        std::ofstream os(cfgp);
        os << "left=1,0.1\nright=" << kShockRight << "\n";
    }
    const fs::path js = workdir() / "cfg_out.json";
    REQUIRE(run("solve --config " + cfgp.string() + " --out " + js.string()).exit_code == 0);
    nlohmann::json j = nlohmann::json::parse(slurp(js));
    CHECK(j["waves"][0]["kind"] == "shock");

    // an explicit --right overrides the file value
    REQUIRE(run("solve --config " + cfgp.string() + " --right 0.5,0.0880934734456061 --out " +
                js.string())
                .exit_code == 0);
    j = nlohmann::json::parse(slurp(js));
    CHECK(std::abs(j["waves"][0]["speed"].get<double>() - 1.75 / 3.0) < 1e-6);
}

TEST_CASE("eigen reports the eigenstructure") {
    const fs::path js = workdir() / "eigen.json";
    REQUIRE(run("eigen --state 1,0.1 --out " + js.string()).exit_code == 0);
    nlohmann::json j = nlohmann::json::parse(slurp(js));
    CHECK(std::abs(j["lambda1"].get<double>() - 0.14721809881007105) < 1e-12);
    CHECK(j["lambda2"] == 1.0);
    CHECK(j["strictly_hyperbolic"] == true);
}
