#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "eow/cli.hpp"
#include "eow/fixtures.hpp"

using namespace eow;

namespace
{
struct Result
{
    int code;
    std::string out, err;
};

Result invoke(std::vector<std::string> args)
{
    args.insert(args.begin(), "eow");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path)
{
    std::ifstream is(path);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

std::string tmp(const std::string& name)
{
    return "/tmp/eow_test_" + name;
}
}  // namespace

TEST_CASE("complex and range parsing")
{
    CHECK(parse_complex("0+0.5i") == cplx(0, 0.5));
    CHECK(parse_complex("0-0.3i") == cplx(0, -0.3));
    CHECK(parse_complex("-0.3i") == cplx(0, -0.3));
    CHECK(parse_complex("2") == cplx(2, 0));
    CHECK(parse_complex("i") == cplx(0, 1));
    CHECK(parse_complex("1e-3-2i") == cplx(1e-3, -2));
    CHECK(parse_complex(" 1.5 + 2i ") == cplx(1.5, 2));
    CHECK_THROWS_AS(parse_complex("abc"), InvalidArgument);
    CHECK_THROWS_AS(parse_complex(""), InvalidArgument);

    auto r = parse_range("0:6:0.1").values();
    CHECK(r.size() == 61);
    CHECK(r.back() == doctest::Approx(6.0));
    CHECK(parse_range("-5:5:0.5").values().size() == 21);
    CHECK_THROWS_AS(parse_range("0:1"), InvalidArgument);
    CHECK_THROWS_AS(parse_range("1:0:0.1"), InvalidArgument);
    CHECK(parse_list("-1.2,1.5").size() == 2);
}

TEST_CASE("fixture tags")
{
    auto g = parse_test_function("gaussian:0,1");
    CHECK(std::abs(g(cplx(1.0)) - std::exp(-1.0)) < 1e-15);
    auto g2 = parse_test_function("gaussian:c=0.5,s=2");
    CHECK(std::abs(g2(cplx(0.5)) - 1.0) < 1e-15);
    auto h = parse_test_function("heat:xi=0,t=0.1");
    CHECK(h.family == TestFamily::heat_probe);
    CHECK(parse_test_function("polygauss:0,1").family == TestFamily::poly_gaussian);
    CHECK_THROWS_AS(parse_test_function("nosuchfamily:1"), InvalidArgument);

    auto p = parse_fixture("poly:1,0,3");
    CHECK(p.kind == FixtureKind::polynomial);
    CHECK(p.closed_form(cplx(2.0)) == cplx(13.0));
    auto pole = parse_fixture("pole:w=0+0.5i");
    CHECK(pole.pole == cplx(0, 0.5));
    CHECK_FALSE(pole.has_closed_form());
    auto ch = parse_fixture("chilbert:w=0+0.3i;w=0-0.3i,c=2");
    REQUIRE(ch.masses.size() == 2);
    CHECK(ch.masses[1].c == cplx(2.0));
    CHECK(ch.masses[1].w[0] == cplx(0, -0.3));
    CHECK(parse_fixture("delta:w=0+0.5i").kind == FixtureKind::delta);
    CHECK(parse_fixture("zero").kind == FixtureKind::zero);
    CHECK_THROWS_AS(parse_fixture("banana:1"), InvalidArgument);
    CHECK_THROWS_AS(parse_fixture("chilbert:c=1"), InvalidArgument);
}

TEST_CASE("exit codes")
{
    auto ok = invoke({"reproduce", "--phi", "gaussian:0,1", "--r", "1", "--R", "0.5", "--t", "0"});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("PASS reproducing identity") != std::string::npos);

    CHECK(invoke({"reproduce", "--phi", "nosuchfamily:1"}).code == 2);
    CHECK(invoke({"frobnicate"}).code == 2);
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"reproduce", "--r"}).code == 2);
    CHECK(invoke({"reproduce", "--r", "abc"}).code == 2);
    CHECK(invoke({"global-eow", "--fixture", "banana"}).code == 2);
    CHECK(invoke({"reproduce", "--json", "/nonexistent/dir/x.json"}).code == 2);

    // a tight tolerance turns the same run into a FAIL
    auto fail = invoke({"reproduce", "--phi", "gaussian:0,1", "--tol", "1e-30"});
    CHECK(fail.code == 1);
    CHECK(fail.out.find("FAIL") != std::string::npos);

    // negative control: the pole fixture fails the overlap check
    auto pole = invoke({"global-eow", "--fixture", "pole:w=0+0.5i"});
    CHECK(pole.code == 1);
    CHECK(pole.out.find("FAIL overlap agreement") != std::string::npos);
}

TEST_CASE("kernel grid CSV")
{
    auto res = invoke({"kernel", "--n", "1", "--grid", "-5:5:0.5,-0.9:0.9:0.3"});
    CHECK(res.code == 0);
    std::istringstream is(res.out);
    std::string line;
    std::getline(is, line);
    CHECK(line == "re_z,im_z,re_K,im_K,err_estimate");
    int rows = 0;
    while (std::getline(is, line))
        ++rows;
    CHECK(rows == 21 * 7);
    CHECK(res.err.find("ALL PASS") != std::string::npos);
}

TEST_CASE("JSON reports are deterministic and versioned")
{
    std::string a = tmp("a.json"), b = tmp("b.json");
    std::vector<std::string> args{"geometry", "--carrier", "lightcone4d", "--ell", "1", "--r", "auto",
                                  "--scan-dist", "2:3:0.5", "--samples", "3000", "--seed", "7"};
    auto with = [&](const std::string& path) {
        auto v = args;
        v.push_back("--json");
        v.push_back(path);
        return v;
    };
    CHECK(invoke(with(a)).code == 0);
    CHECK(invoke(with(b)).code == 0);
    std::string ja = slurp(a), jb = slurp(b);
    CHECK(!ja.empty());
    CHECK(ja == jb);
    auto j = nlohmann::json::parse(ja);
    CHECK(j["schema_version"] == report_schema_version);
    CHECK(j["subcommand"] == "geometry");
    CHECK(j["pass"] == true);
    CHECK(j["checks"].size() == 3);
    std::remove(a.c_str());
    std::remove(b.c_str());
}

TEST_CASE("geometry scan CSV shows the light-cone threshold")
{
    std::string csv = tmp("geo.csv");
    auto res = invoke({"geometry", "--carrier", "lightcone4d", "--ell", "1", "--r", "auto", "--scan-dist",
                       "2:2.8:0.1", "--samples", "5000", "--csv", csv});
    CHECK(res.code == 0);
    std::ifstream is(csv);
    std::string line;
    std::getline(is, line);
    CHECK(line.rfind("dist,x1,x2,x3,x4,g_r,g_r_bound,in_O", 0) == 0);
    double first = -1;
    while (std::getline(is, line))
    {
        std::stringstream ss(line);
        std::vector<std::string> cells;
        std::string cell;
        while (std::getline(ss, cell, ','))
            cells.push_back(cell);
        if (cells.at(7) == "1")
        {
            first = std::stod(cells[0]);
            break;
        }
    }
    CHECK(first == doctest::Approx(2.5));
    CHECK(first > (sqrt2 + 1) * (1 - 1e-2));
    std::remove(csv.c_str());
}

TEST_CASE("JSON config files")
{
    std::string cfg = tmp("cfg.json");
    {
        std::ofstream os(cfg);
        os << R"({"subcommand": "reproduce", "phi": "gaussian:0.2,1", "r": "2", "R": 1.5, "t": 0.7})";
    }
    auto res = invoke({"--config", cfg});
    CHECK(res.code == 0);
    CHECK(res.out.find("gaussian:0.2,1, r=2, R=1.5, t=0.7") != std::string::npos);

    // explicit flags win over the file
    auto over = invoke({"reproduce", "--config", cfg, "--R", "0.5"});
    CHECK(over.code == 0);
    CHECK(over.out.find("R=0.5") != std::string::npos);

    {
        std::ofstream os(cfg);
        os << "{ not json";
    }
    CHECK(invoke({"reproduce", "--config", cfg}).code == 2);
    CHECK(invoke({"reproduce", "--config", "/nonexistent.json"}).code == 2);
    std::remove(cfg.c_str());
}

TEST_CASE("local and probe subcommands")
{
    auto local = invoke({"local-eow", "--fixture", "chilbert:w=0+0.3i", "--xi", "-2,3"});
    CHECK(local.code == 0);
    CHECK(local.out.find("PASS probe equality xi=-2") != std::string::npos);
    CHECK(invoke({"local-eow", "--xi", "0"}).code == 2);  // inside the excluded band

    auto probe = invoke({"carrier-probe", "--fixture", "delta:w=0+0.5i", "--xi", "-0.6,0.4"});
    CHECK(probe.code == 0);
    CHECK(probe.out.find("verdict decays") != std::string::npos);
    CHECK(probe.out.find("verdict grows") != std::string::npos);

    auto delta = invoke({"global-eow", "--fixture", "delta:w=0.1+0.2i"});
    CHECK(delta.code == 0);
}
