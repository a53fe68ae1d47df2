#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "dsw/io.hpp"

using namespace dsw;

TEST_CASE("config parsing") {
    const Config cfg = Config::parse_text(
        "# comment\n"
        "initial_data = sech2\n"
        "epsilons = 0.08, 0.04, 0.02\n"
        "t = 0.4\n"
        "n = 4096\n"
        "\n");
    CHECK(cfg.get("initial_data") == "sech2");
    CHECK(cfg.get_real("t", 0.0) == doctest::Approx(0.4));
    CHECK(cfg.get_int("n", 0) == 4096);
    const auto eps = cfg.get_list("epsilons", {});
    REQUIRE(eps.size() == 3);
    CHECK(eps[1] == doctest::Approx(0.04));
    CHECK(cfg.get("missing", "fallback") == "fallback");
    CHECK(cfg.get_real("missing", 1.5) == 1.5);
}

TEST_CASE("malformed config carries the line number") {
    try {
        Config::parse_text("a = 1\nbroken line\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& err) {
        CHECK(err.line() == 2);
        CHECK(std::string(err.what()).find("line 2") != std::string::npos);
    }
    CHECK_THROWS_AS(Config::parse_text("t = abc\n").get_real("t", 0.0), ConfigError);
    CHECK_THROWS_AS(Config::parse_text("eps = 0.1,zz\n").get_list("eps", {}), ConfigError);
}

TEST_CASE("table writer emits a header and 17-digit records") {
    const std::string path = "/tmp/dsw_test_table.txt";
    {
        TableWriter tw(path, {"x", "u"});
        tw.row({1.0 / 3.0, -2.0});
        tw.row({0.1, 0.2});
        CHECK_THROWS_AS(tw.row({1.0}), std::invalid_argument);
    }
    std::ifstream is(path);
    std::string line;
    std::getline(is, line);
    CHECK(line == "# x u");
    std::getline(is, line);
    CHECK(line.find("0.33333333333333331") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("format_real round trips doubles") {
    for (double v : {1.0 / 3.0, 3.14159e-10, -2.718281828459045, 1e17}) {
        const std::string s = format_real(v);
        CHECK(std::stod(s) == v);
    }
}

TEST_CASE("manifest lists outputs") {
    const std::string path = "/tmp/dsw_test_manifest.txt";
    Manifest mf;
    mf.note("preset", "scaling");
    mf.note("initial_data", "sech2");
    mf.file("a.txt");
    mf.file("b.txt");
    mf.write(path);
    std::ifstream is(path);
    std::stringstream ss;
    ss << is.rdbuf();
    const std::string text = ss.str();
    CHECK(text.find("preset = scaling") != std::string::npos);
    CHECK(text.find("file = a.txt") != std::string::npos);
    CHECK(text.find("file = b.txt") != std::string::npos);
    std::remove(path.c_str());
}
