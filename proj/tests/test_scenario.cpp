#include <doctest.h>

#include <cmath>
#include <string>

#include "mpa/errors.hpp"
#include "mpa/scenario.hpp"

using namespace mpa;

namespace {

const char* kBaselineDoc = R"(# baseline comparison parameters
[bio]
r1 = 0.4
r2 = 0.05
r = 0.28739
alpha = 0.5

[econ]
p = 0.3        # reverse-engineered price
q = 2.0
c = 0.15
delta = 0.05
e_max = 1.0

[diffusion]
mode = "constant"
lambda = 20.0
)";

}  // namespace

TEST_CASE("parsing the baseline document reproduces the built-in scenario") {
    const Scenario sc = parse_scenario(kBaselineDoc, "inline");
    CHECK(sc.name == "inline");
    CHECK(sc.bio.r1 == 0.4);
    CHECK(sc.bio.r2 == 0.05);
    REQUIRE(sc.bio.r.has_value());
    CHECK(*sc.bio.r == 0.28739);
    CHECK(sc.econ.p == 0.3);
    CHECK(sc.econ.e_max == 1.0);
    CHECK(sc.diffusion.mode == DiffusionMode::Constant);
    CHECK(sc.diffusion.value == 20.0);
    CHECK_FALSE(sc.simulation.has_value());
    CHECK(same_content(sc, paper_scenario()));
}

TEST_CASE("defaults: e_max, step and effort") {
    const Scenario sc = parse_scenario(R"(
[bio]
r1 = 0.4
r2 = 0.05
alpha = 0.5
[econ]
p = 1.5
q = 2.0
c = 0.15
delta = 0.05
[diffusion]
mode = "size_dependent"
lambda0 = 4.0
[simulation]
x1_0 = 0.1
x2_0 = 0.2
horizon = 10.0
)",
                                       "d");
    CHECK(sc.econ.e_max == 1.0);
    REQUIRE(sc.simulation.has_value());
    CHECK(sc.simulation->step == 0.01);
    CHECK(sc.simulation->effort == 0.0);
    CHECK(sc.diffusion.mode == DiffusionMode::SizeDependent);
    // size-dependent coefficient resolves through alpha*(1-alpha)
    CHECK(sc.diffusion.effective(0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_FALSE(same_content(sc, paper_scenario()));
}

TEST_CASE("parse errors name the offending construct") {
    const std::string base = kBaselineDoc;
    CHECK_THROWS_WITH_AS(parse_scenario("bogus = 1\n" + base, "x"),
                         "key outside any table: bogus", ValidationError);

    std::string unknown = base;
    unknown.insert(unknown.find("[econ]"), "surprise = 1\n");
    CHECK_THROWS_WITH_AS(parse_scenario(unknown, "x"), "unknown key: bio.surprise",
                         ValidationError);

    std::string dup = base + "\n[bio]\nr1 = 0.3\n";
    CHECK_THROWS_WITH_AS(parse_scenario(dup, "x"), "duplicate table: bio", ValidationError);

    std::string missing = base;
    missing.erase(missing.find("delta = 0.05"), 12);
    CHECK_THROWS_WITH_AS(parse_scenario(missing, "x"), "missing key: econ.delta",
                         ValidationError);

    std::string badnum = base;
    badnum.replace(badnum.find("0.28739"), 7, "fast");
    CHECK_THROWS_AS(parse_scenario(badnum, "x"), ValidationError);

    CHECK_THROWS_AS(parse_scenario("[bio\nr1 = 1\n", "x"), ValidationError);
    CHECK_THROWS_AS(parse_scenario("[]\n", "x"), ValidationError);
}

TEST_CASE("invariant violations surface with their invariant text") {
    std::string bad_alpha = kBaselineDoc;
    bad_alpha.replace(bad_alpha.find("alpha = 0.5"), 11, "alpha = 1.2");
    CHECK_THROWS_WITH_AS(parse_scenario(bad_alpha, "x"), "alpha in (0,1)", ValidationError);

    std::string bad_mode = kBaselineDoc;
    bad_mode.replace(bad_mode.find("\"constant\""), 10, "\"osmotic\"");
    CHECK_THROWS_AS(parse_scenario(bad_mode, "x"), ValidationError);
}

TEST_CASE("serialization round-trips with a stable digest") {
    const Scenario sc = paper_scenario();
    const std::string text = serialize_scenario(sc);
    const Scenario back = parse_scenario(text, sc.name);
    CHECK(same_content(sc, back));
    CHECK(scenario_digest(sc) == scenario_digest(back));

    Scenario tweaked = sc;
    tweaked.econ.p = 0.31;
    CHECK(scenario_digest(tweaked) != scenario_digest(sc));
    CHECK_FALSE(same_content(tweaked, sc));

    // names do not enter the digest; content does
    Scenario renamed = sc;
    renamed.name = "other";
    CHECK(scenario_digest(renamed) == scenario_digest(sc));
}

TEST_CASE("the built-in scenario pins the reverse-engineered price") {
    const Scenario sc = paper_scenario();
    CHECK(sc.name == "paper");
    CHECK(sc.econ.p == 0.3);
    CHECK(sc.description.find("reverse-engineered") != std::string::npos);
    // the price is exactly the one implied by the split-model stationary stock
    CHECK(std::fabs(sc.econ.c * (1.0 - sc.bio.alpha) / (sc.econ.p * sc.econ.q) - 0.125) <=
          1e-15);
}

TEST_CASE("17-significant-digit serialization survives the round trip") {
    Scenario sc = paper_scenario();
    sc.econ.p = 0.1 + 0.2;  // 0.30000000000000004
    const Scenario back = parse_scenario(serialize_scenario(sc), sc.name);
    CHECK(back.econ.p == sc.econ.p);
    CHECK(format_g17(0.5) == "0.5");
}
