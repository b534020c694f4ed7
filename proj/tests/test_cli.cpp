#include "kcubic/commands.hpp"
#include "kcubic/geometry.hpp"
#include "support.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

using namespace kcubic;
using namespace kcubic::cli;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cfg(const RunConfig& cfg) {
    std::ostringstream out, err;
    const int code = run(cfg, out, err);
    return {code, out.str(), err.str()};
}

RunConfig with(std::string sub) {
    RunConfig cfg;
    cfg.subcommand = std::move(sub);
    return cfg;
}

RunConfig small_audit() {
    RunConfig cfg = with("audit");
    cfg.grid_a_count = 3;
    cfg.grid_b_step = "2.5";
    cfg.grid_h2 = {"0.1", "4"};
    cfg.identity_samples = 20;
    return cfg;
}

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("kcubic_test_" + name);
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

} // namespace

TEST_CASE("parse_point and parse_blend")
{
    CHECK(parse_point("-1,0") == Point2{-1, 0});
    CHECK(parse_point("1/3,0.25") == Point2{Scalar(1, 3), Scalar(1, 4)});
    CHECK_THROWS(parse_point("1"));
    CHECK_THROWS(parse_point("1,2,3"));
    CHECK_THROWS(parse_point("x,1"));
    CHECK(parse_blend("0.7") == Scalar(7, 10));
    CHECK(parse_blend("1") == 1);
    CHECK_THROWS(parse_blend("0"));
    CHECK_THROWS(parse_blend("1.5"));
    CHECK_THROWS(parse_blend("-0.2"));
}

TEST_CASE("format_number is shortest round-trip")
{
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(-8.0 / 3.0) == "-2.6666666666666665");
}

TEST_CASE("eval")
{
    RunConfig cfg = with("eval");
    cfg.q0 = "-1,0";
    cfg.q1 = "0,1";
    cfg.q2 = "1,0";
    cfg.a = "1";
    cfg.samples = 3;
    auto r = run_cfg(cfg);
    CHECK(r.code == kOk);
    CHECK(r.out == "t,x,y\n0,-1,0\n0.5,0,0.75\n1,1,0\n");

    cfg.samples = 1;
    CHECK(run_cfg(cfg).out == "t,x,y\n0,-1,0\n");

    cfg.samples = 0;
    CHECK(run_cfg(cfg).code == kUsage);

    cfg.samples = 3;
    cfg.a = "1.5";
    CHECK(run_cfg(cfg).code == kUsage);
    cfg.a = "1";
    cfg.q1 = "0;1";
    CHECK(run_cfg(cfg).code == kUsage);
}

TEST_CASE("curvature")
{
    RunConfig cfg = with("curvature");
    cfg.apex = "0,1";
    cfg.samples = 3;
    auto r = run_cfg(cfg);
    CHECK(r.code == kOk);
    CHECK(r.out == "t,kappa\n0,0\n0.5,-2.6666666666666665\n1,0\n");

    SUBCASE("flat segment: all zeros")
    {
        cfg.apex = "0,0";
        cfg.samples = 11;
        r = run_cfg(cfg);
        CHECK(r.code == kOk);
        std::istringstream lines(r.out);
        std::string line;
        std::getline(lines, line);
        int rows = 0;
        while (std::getline(lines, line)) {
            CHECK(line.substr(line.find(',') + 1) == "0");
            ++rows;
        }
        CHECK(rows == 11);
    }
    SUBCASE("kink at the midpoint: empty kappa and a kind note")
    {
        cfg.apex.clear();
        cfg.q0 = "1,0";
        cfg.q1 = "0,1";
        cfg.q2 = "1,0";
        cfg.a = "0.8";
        r = run_cfg(cfg);
        CHECK(r.code == kOk);
        CHECK(r.out.find("\n0.5,\n") != std::string::npos);
        CHECK(r.err.find("kind=KinkAtHalf") != std::string::npos);
    }
}

TEST_CASE("extrema JSON")
{
    RunConfig cfg = with("extrema");
    SUBCASE("symmetric arch")
    {
        cfg.apex = "0,1";
        cfg.a = "0.8";
        const auto r = run_cfg(cfg);
        REQUIRE(r.code == kOk);
        const json j = json::parse(r.out);
        CHECK(j["kind"] == "Regular");
        CHECK(j["count"] == 1);
        CHECK(j["theorem_regime"] == true);
        CHECK(j["locations"][0]["t"] == 0.5);
        CHECK(j["locations"][0]["window"]["lo"] == "1/2");
    }
    SUBCASE("b = 0.5, h = 1, a = 0.9: one extremum near 0.586268")
    {
        cfg.apex = "0.5,1";
        cfg.a = "0.9";
        const json j = json::parse(run_cfg(cfg).out);
        CHECK(j["count"] == 1);
        CHECK(std::abs(j["locations"][0]["t"].get<double>() - 0.586267789463168) < 1e-9);
    }
    SUBCASE("kink at the midpoint")
    {
        cfg.q0 = "2,1";
        cfg.q1 = "0,3";
        cfg.q2 = "2,1";
        const json j = json::parse(run_cfg(cfg).out);
        CHECK(j["kind"] == "KinkAtHalf");
        CHECK(j["count"] == 1);
        CHECK(j["locations"][0]["t"] == 0.5);
        CHECK(j["locations"][0]["kappa"].is_null());
    }
    SUBCASE("key order is stable")
    {
        cfg.apex = "1,2";
        const std::string out = run_cfg(cfg).out;
        const auto k = out.find("\"kind\""), c = out.find("\"count\""),
                   l = out.find("\"locations\""), t = out.find("\"theorem_regime\"");
        CHECK(k < c);
        CHECK(c < l);
        CHECK(l < t);
    }
}

TEST_CASE("extrema agree between raw and pre-canonicalized input")
{
    std::mt19937_64 rng(2024);
    int compared = 0;
    for (int i = 0; i < 60; ++i) {
        const Point2 q0 = testing::random_point(rng), q1 = testing::random_point(rng),
                     q2 = testing::random_point(rng);
        const auto canon = canonicalize(q0, q1, q2);
        if (!std::holds_alternative<CanonicalTriangle>(canon))
            continue;
        const auto& tri = std::get<CanonicalTriangle>(canon);
        const std::string a =
            to_string(make_rational(std::uniform_int_distribution<long>(100, 1000)(rng), 1000));

        RunConfig raw = with("extrema");
        raw.q0 = to_string(q0.x) + "," + to_string(q0.y);
        raw.q1 = to_string(q1.x) + "," + to_string(q1.y);
        raw.q2 = to_string(q2.x) + "," + to_string(q2.y);
        raw.a = a;
        RunConfig pre = with("extrema");
        pre.apex = to_string(tri.b) + "," + to_string(tri.h);
        pre.a = a;

        const auto r1 = run_cfg(raw), r2 = run_cfg(pre);
        REQUIRE(r1.code == kOk);
        REQUIRE(r2.code == kOk);
        const json j1 = json::parse(r1.out), j2 = json::parse(r2.out);
        REQUIRE(j1["count"] == j2["count"]);
        for (std::size_t k = 0; k < j1["locations"].size(); ++k) {
            const double t_raw = j1["locations"][k]["t"].get<double>();
            // Locations are sorted, so a half-turn reverses their order.
            const std::size_t m = tri.map.swapped ? j2["locations"].size() - 1 - k : k;
            const double t_canon = tri.pull_back(j2["locations"][m]["t"].get<double>());
            CHECK(std::abs(t_raw - t_canon) < 1e-9);
        }
        ++compared;
    }
    CHECK(compared > 50);
}

TEST_CASE("sweep")
{
    RunConfig cfg = with("sweep");
    cfg.count = 150;
    cfg.oracle_samples = 20000;
    cfg.seed = 11;
    const auto r1 = run_cfg(cfg);
    REQUIRE(r1.code == kOk);
    const json j = json::parse(r1.out);
    CHECK(j["status"] == "pass");
    CHECK(j["mode"] == "theorem");
    CHECK(j["n"] == 150);
    CHECK(j["max_count"].get<int>() <= 1);
    CHECK(j["mismatches"] == 0);
    CHECK(j["violations"] == 0);
    CHECK(r1.err.find("sweep: 150 configs") != std::string::npos);

    SUBCASE("output independent of worker count")
    {
        cfg.threads = 3;
        CHECK(run_cfg(cfg).out == r1.out);
    }
    SUBCASE("different seed, different draws")
    {
        cfg.seed = 12;
        CHECK(run_cfg(cfg).out != r1.out);
    }
    SUBCASE("exploratory range")
    {
        cfg.a_min = "0.1";
        cfg.a_max = "0.5";
        const auto r = run_cfg(cfg);
        CHECK(r.code == kOk);
        const json e = json::parse(r.out);
        CHECK(e["mode"] == "exploratory");
        CHECK(e["status"] == "exploratory");
        CHECK(e["histogram"].size() >= 1);
    }
    SUBCASE("usage errors")
    {
        cfg.count = 0;
        CHECK(run_cfg(cfg).code == kUsage);
        cfg.count = 10;
        cfg.a_max = "1.2";
        CHECK(run_cfg(cfg).code == kUsage);
        cfg.a_max = "0.5";
        cfg.a_min = "0.7";
        CHECK(run_cfg(cfg).code == kUsage);
    }
}

TEST_CASE("audit")
{
    RunConfig cfg = small_audit();
    const auto path = temp_path("audit.json");
    cfg.json_output = path.string();
    const auto r = run_cfg(cfg);
    CHECK(r.code == kOk);
    CHECK(r.out.rfind("proof audit: PASS", 0) == 0);
    const json j = json::parse(slurp(path));
    CHECK(j["status"] == "pass");
    CHECK(j["entries"].size() >= 30);
    for (const auto& e : j["entries"]) {
        CHECK(e.contains("lemma"));
        CHECK(e.contains("method"));
        CHECK(e["status"] == "pass");
        CHECK(e["witness"].is_null());
        CHECK(e.contains("note"));
    }
    std::filesystem::remove(path);

    SUBCASE("json on stdout")
    {
        cfg.json_output.clear();
        cfg.format = OutputFormat::Json;
        CHECK(json::parse(run_cfg(cfg).out)["status"] == "pass");
    }
    SUBCASE("grid outside the regime is a usage error")
    {
        cfg.grid_a_min = "0.5";
        CHECK(run_cfg(cfg).code == kUsage);
    }
    SUBCASE("too few identity samples")
    {
        cfg.identity_samples = 3;
        CHECK(run_cfg(cfg).code == kUsage);
    }
    SUBCASE("unwritable JSON path")
    {
        cfg.json_output = "/nonexistent-dir/a.json";
        CHECK(run_cfg(cfg).code == kIoError);
    }
}

TEST_CASE("plot")
{
    RunConfig cfg = with("plot");
    cfg.apex = "0,1";
    cfg.width = 640;
    cfg.height = 300;
    cfg.samples = 101;
    const auto r = run_cfg(cfg);
    REQUIRE(r.code == kOk);
    CHECK(r.out.find("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"640\" "
                     "height=\"300\" viewBox=\"0 0 640 300\">") != std::string::npos);
    CHECK(r.out.find("id=\"curve\"") != std::string::npos);
    CHECK(r.out.find("class=\"kappa\"") != std::string::npos);
    CHECK(r.out.find("class=\"extremum\"") != std::string::npos);
    CHECK(r.out.find("extremum at t=0.500000") != std::string::npos);
    CHECK(run_cfg(cfg).out == r.out);

    SUBCASE("monotone case has no marker")
    {
        cfg.apex = "13/16,1/10";
        cfg.a = "4/5";
        const auto m = run_cfg(cfg);
        CHECK(m.out.find("class=\"extremum\"") == std::string::npos);
        CHECK(m.out.find(">monotone") != std::string::npos);
    }
    SUBCASE("file output and I/O errors")
    {
        const auto path = temp_path("plot.svg");
        cfg.output = path.string();
        CHECK(run_cfg(cfg).code == kOk);
        CHECK(slurp(path) == r.out);
        std::filesystem::remove(path);
        cfg.output = "/nonexistent-dir/plot.svg";
        CHECK(run_cfg(cfg).code == kIoError);
    }
    SUBCASE("kinks do not break the plot")
    {
        cfg.apex.clear();
        cfg.q0 = "1,0";
        cfg.q1 = "0,1";
        cfg.q2 = "1,0";
        CHECK(run_cfg(cfg).code == kOk);
        cfg.q0 = "-1,0";
        cfg.q1 = "1,0";
        CHECK(run_cfg(cfg).code == kOk);
    }
}

TEST_CASE("unknown subcommand")
{
    CHECK(run_cfg(with("frobnicate")).code == kUsage);
}

#ifdef KCUBIC_CLI_PATH
namespace {

int shell(const std::string& args, const std::string& out_file = "/dev/null") {
    const std::string cmd =
        std::string("\"") + KCUBIC_CLI_PATH + "\" " + args + " > " + out_file + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

} // namespace

TEST_CASE("binary exit codes")
{
    CHECK(shell("eval --q0 -1,0 --q1 0,1 --q2 1,0 -a 1 --samples 3") == kOk);
    CHECK(shell("eval -a 1.5") == kUsage);
    CHECK(shell("") == kUsage);
    CHECK(shell("eval --no-such-flag") == kUsage);
    CHECK(shell("--help") == kOk);
    CHECK(shell("sweep -n 0") == kUsage);
    CHECK(shell("plot --apex 0,1 -o /nonexistent-dir/p.svg") == kIoError);
    CHECK(shell("extrema --apex 0,1 --format csv") == kUsage);
}

TEST_CASE("binary output matches the in-process run")
{
    const auto path = temp_path("eval.csv");
    REQUIRE(shell("eval --q0 -1,0 --q1 0,1 --q2 1,0 -a 1 --samples 3", path.string()) == kOk);
    CHECK(slurp(path) == "t,x,y\n0,-1,0\n0.5,0,0.75\n1,1,0\n");
    std::filesystem::remove(path);
}
#endif
