#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "filament/experiments.hpp"
#include "filament/run_config.hpp"

#include <numbers>

using namespace filament;
using doctest::Approx;

TEST_CASE("command parsing") {
    CHECK(parse_command("evolve-nls") == Command::EvolveNls);
    CHECK(parse_command("plane-stability") == Command::PlaneStability);
    CHECK_THROWS_AS(parse_command("evolve"), ConfigError);
}

TEST_CASE("defaults are filled and echoed for evolve-nls") {
    RunConfig cfg = parse_config(Command::EvolveNls, {}, {});
    CHECK(cfg.L == Approx(std::numbers::pi));
    CHECK(cfg.R == 2.0);
    CHECK(cfg.N == 256);
    const auto echo = cfg.echo();
    CHECK(echo.at("command") == "evolve-nls");
    CHECK(echo.at("N") == "256");
    CHECK(echo.at("L").substr(0, 7) == "3.14159");
    CHECK(echo.at("dt-nls") == "0.001");
}

TEST_CASE("deltas are normalized ascending") {
    RunConfig cfg =
        parse_config(Command::ArcStability, {}, {{"deltas", "0.1,0.001,0.01"}});
    CHECK(cfg.deltas == std::vector<double>{0.001, 0.01, 0.1});
}

TEST_CASE("unknown keys are rejected") {
    CHECK_THROWS_AS(parse_config(Command::EvolveNls, {}, {{"dt-nsl", "0.1"}}), ConfigError);
    CHECK_THROWS_AS(parse_config(Command::Transform, {{"T", "1.0"}}, {}), ConfigError);
}

TEST_CASE("malformed numbers are rejected with the failing key") {
    try {
        parse_config(Command::EvolveNls, {}, {{"L", "3.14abc"}});
        FAIL("expected ConfigError");
    } catch (const ConfigError& error) {
        CHECK(std::string(error.what()).find("'L'") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config(Command::EvolveNls, {}, {{"N", "12.5"}}), ConfigError);
    CHECK_THROWS_AS(parse_config(Command::EvolveNls, {}, {{"L", "-2"}}), ConfigError);
}

TEST_CASE("stability commands reject configurations behind the gate") {
    try {
        parse_config(Command::PlaneStability, {}, {{"R", "1"}});
        FAIL("expected GateRejection");
    } catch (const GateRejection& error) {
        CHECK(std::string(error.what()).find("c0") != std::string::npos);
    }
    // same parameters are fine for non-stability commands
    CHECK_NOTHROW(parse_config(Command::EvolveNls, {}, {{"R", "1"}}));
}

TEST_CASE("flags take precedence over the file, the file over defaults") {
    const std::map<std::string, std::string> file{{"N", "128"}, {"T", "2.0"}};
    const std::map<std::string, std::string> flags{{"N", "512"}};
    RunConfig cfg = parse_config(Command::EvolveNls, file, flags);
    CHECK(cfg.N == 512);
    CHECK(cfg.T == 2.0);
}

TEST_CASE("key=value text parsing") {
    const auto entries = parse_key_value_text(
        "# comment line\n"
        "L = 3.0\n"
        "\n"
        "N=128   # trailing comment\n"
        "deltas = 0.1,0.2\n");
    CHECK(entries.at("L") == "3.0");
    CHECK(entries.at("N") == "128");
    CHECK(entries.at("deltas") == "0.1,0.2");
    CHECK_THROWS_AS(parse_key_value_text("not a pair\n"), ConfigError);
}

TEST_CASE("solver steps pick the dispersive defaults") {
    RunConfig cfg = parse_config(Command::EvolveVfe, {}, {{"N", "128"}});
    const double ds = cfg.L / 128;
    CHECK(cfg.dt == Approx(0.25 * ds * ds).epsilon(1e-12));
    RunConfig pinned = parse_config(Command::EvolveVfe, {}, {{"dt", "1e-5"}});
    CHECK(pinned.dt == 1e-5);
}
