#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run_cli(const std::string& args) {
    const std::string cmd = std::string(KAPPASTAR_BIN) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    Run r;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) out.push_back(line);
    return out;
}

std::vector<std::string> fields_of(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string f;
    while (std::getline(in, f, ',')) out.push_back(f);
    return out;
}

}  // namespace

TEST_CASE("certified bracket as JSON") {
    const Run r = run_cli("yukawa-bracket --format json --no-timestamp");
    REQUIRE(r.code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["schema"] == 1);
    CHECK(doc["n"] == 3);
    CHECK(doc["method"] == "yukawa_series");
    CHECK(doc["classification"] == "resonance_not_L2");
    CHECK(doc["certified"] == true);
    CHECK(doc["potential"] == "yukawa");
    CHECK(doc["outcome"] == "found");
    CHECK(std::abs(doc["kappa_star"]["lo"].get<double>() - 1.67626) < 1e-9);
    CHECK(std::abs(doc["kappa_star"]["hi"].get<double>() - 1.68742) < 1e-9);
    CHECK(doc["diagnostics"]["tol_met"] == 1.0);
    CHECK(doc["diagnostics"]["interior_pairs"].get<double>() >= 8);
    CHECK(!doc.contains("generated_at"));

    const Run again = run_cli("yukawa-bracket --format json --no-timestamp");
    CHECK(again.out == r.out);  // byte-stable without the timestamp

    const Run stamped = run_cli("yukawa-bracket --format json");
    CHECK(json::parse(stamped.out).contains("generated_at"));
}

TEST_CASE("human and csv formats") {
    const Run human = run_cli("yukawa-bracket");
    REQUIRE(human.code == 0);
    CHECK(human.out.find("kappa_star") != std::string::npos);
    CHECK(human.out.find("certified:      yes") != std::string::npos);

    const Run csv = run_cli("yukawa-bracket --format csv");
    REQUIRE(csv.code == 0);
    const auto rows = lines_of(csv.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == "potential,n,method,kappa_lo,kappa_hi,certified,classification");
    CHECK(fields_of(rows[1]).size() == 7);
    CHECK(fields_of(rows[1])[5] == "1");
}

TEST_CASE("--out writes the file instead of stdout") {
    const char* path = "/tmp/test_cli_out.json";
    std::remove(path);
    const Run r = run_cli(std::string("yukawa-bracket --format json --no-timestamp --out ") + path);
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream content;
    content << in.rdbuf();
    CHECK(json::parse(content.str())["certified"] == true);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run_cli("").code == 2);  // missing subcommand
    CHECK(run_cli("frobnicate").code == 2);
    CHECK(run_cli("yukawa-bracket --tol -1").code == 2);
    CHECK(run_cli("yukawa-bracket --format xml").code == 2);
    CHECK(run_cli("yukawa-bracket --no-such-flag").code == 2);
    CHECK(run_cli("resonance --grid 16").code == 2);
    CHECK(run_cli("resonance --dim 2").code == 2);
    CHECK(run_cli("compare").code == 2);  // --c0 is required
    // the series path is the certified yukawa n=3 route only
    CHECK(run_cli("resonance --potential exponential --method series").code == 2);
    CHECK(run_cli("resonance --potential /tmp/no_such_table.txt --method volterra").code == 2);
}

TEST_CASE("--help exits 0") {
    CHECK(run_cli("--help").code == 0);
    CHECK(run_cli("resonance --help").code == 0);
}

TEST_CASE("inadmissible potential is refused with exit 3") {
    const Run r =
        run_cli("resonance --potential truncated-hardy --hardy-eps 0.01 --format json");
    REQUIRE(r.code == 3);
    const json doc = json::parse(r.out);
    CHECK(doc["outcome"] == "inadmissible potential");
    CHECK(doc["reason"].get<std::string>().find("infinity") != std::string::npos);
}

TEST_CASE("volterra search") {
    const Run r = run_cli(
        "resonance --potential yukawa --method volterra --grid 512 --tol 1e-3 "
        "--format json --no-timestamp");
    REQUIRE(r.code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["method"] == "volterra");
    CHECK(doc["certified"] == false);
    CHECK(doc["outcome"] == "found");
    CHECK(doc["kappa_star"]["lo"].get<double>() < 1.6799);
    CHECK(doc["kappa_star"]["hi"].get<double>() > 1.6797);
    CHECK(doc["diagnostics"]["grid_size"] == 512.0);
}

TEST_CASE("variational estimate in higher dimension") {
    const Run r = run_cli(
        "resonance --potential yukawa --method variational --grid 256 --dim 5 "
        "--format json --no-timestamp");
    REQUIRE(r.code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["method"] == "variational");
    CHECK(doc["classification"] == "eigenstate_L2");
    CHECK(doc["kappa_star"]["hi"].get<double>() > 0.0);
    CHECK(doc["diagnostics"].contains("J_estimate"));
}

TEST_CASE("combined method reports the cross-method gap") {
    const Run r = run_cli(
        "resonance --potential yukawa --grid 512 --tol 1e-3 --format json --no-timestamp");
    REQUIRE(r.code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["method"] == "volterra");
    CHECK(doc["diagnostics"].contains("variational_kappa_upper"));
    CHECK(doc["diagnostics"]["cross_method_gap"].get<double>() < 0.05);
}

TEST_CASE("no resonance in a short search range") {
    const Run r = run_cli(
        "resonance --potential yukawa --method volterra --grid 128 --search-hi 1.0 "
        "--format json --no-timestamp");
    REQUIRE(r.code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["outcome"].get<std::string>().find("no resonance") != std::string::npos);
}

TEST_CASE("comparison lower bound") {
    const Run r = run_cli("compare --c0 2.0 --format json --no-timestamp");
    REQUIRE(r.code == 0);
    const json doc = json::parse(r.out);
    CHECK(std::abs(doc["kappa_star"]["lo"].get<double>() - 0.83813) < 1e-6);
    CHECK(doc["kappa_star"]["hi"].is_null());  // no upper bound from domination
    CHECK(doc["certified"] == true);
    CHECK(doc["diagnostics"]["C0"] == 2.0);
}

TEST_CASE("wronskian plot data brackets the sign change") {
    const Run r = run_cli("plot-data --what wronskian --lo 1.5 --hi 1.8 --points 7");
    REQUIRE(r.code == 0);
    const auto rows = lines_of(r.out);
    REQUIRE(rows.size() == 8);
    CHECK(rows[0] == "kappa,lo,mid,hi,sign,uncertified");
    int flips = 0;
    std::string prev;
    for (size_t i = 1; i < rows.size(); ++i) {
        const auto f = fields_of(rows[i]);
        REQUIRE(f.size() == 6);
        CHECK((f[4] == "+" || f[4] == "-"));
        CHECK(f[5] == "0");
        if (!prev.empty() && f[4] != prev) ++flips;
        prev = f[4];
    }
    CHECK(flips == 1);
}

TEST_CASE("exterior profile plot at kappa = 0 is 1/r") {
    const Run r = run_cli("plot-data --what u-ext --points 5 --lo 1 --hi 5 --kappa 0");
    REQUIRE(r.code == 0);
    const auto rows = lines_of(r.out);
    REQUIRE(rows.size() == 6);
    for (size_t i = 1; i < rows.size(); ++i) {
        const auto f = fields_of(rows[i]);
        const double radius = std::stod(f[0]);
        CHECK(std::abs(std::stod(f[2]) - 1.0 / radius) < 1e-9);
    }
}

TEST_CASE("interior profile plot decreases toward the matching radius") {
    const Run r = run_cli("plot-data --what u-int --points 5 --kappa 1");
    REQUIRE(r.code == 0);
    const auto rows = lines_of(r.out);
    REQUIRE(rows.size() == 6);
    double prev = 2.0;
    for (size_t i = 1; i < rows.size(); ++i) {
        const double mid = std::stod(fields_of(rows[i])[2]);
        CHECK(mid > 0.0);
        CHECK(mid < prev);
        prev = mid;
    }
    CHECK(prev > 0.6);  // u_int(1; 1) ~ 0.672
}

TEST_CASE("alpha plot lists the coefficient values") {
    const Run r = run_cli("plot-data --what alpha --k 6 --kappa 1");
    REQUIRE(r.code == 0);
    const auto rows = lines_of(r.out);
    REQUIRE(rows.size() == 8);  // header + k = 0..6
    CHECK(std::abs(std::stod(fields_of(rows[2])[2]) - 0.5) < 1e-15);   // alpha_1(1)
    CHECK(std::abs(std::stod(fields_of(rows[3])[2]) - 0.25) < 1e-15);  // alpha_2(1)
}

TEST_CASE("unreachable tolerance reports the best certified bracket with exit 4") {
    const Run r = run_cli("yukawa-bracket --tol 1e-9 --format json --no-timestamp");
    REQUIRE(r.code == 4);
    const json doc = json::parse(r.out);
    CHECK(doc["certified"] == true);  // the reported bracket itself is certified
    CHECK(doc["diagnostics"]["tol_met"] == 0.0);
    const double width = doc["diagnostics"]["bracket_width"].get<double>();
    CHECK(width > 1e-9);
    CHECK(width < 1e-4);  // far deeper than the headline bracket nonetheless
}
