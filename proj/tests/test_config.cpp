#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "shellbound/config.hpp"

using namespace shellbound;

TEST_CASE("config parses keys, comments, and whitespace") {
    const RunConfig c = parse_config_text(
        "# example\n"
        "grid.n = 65\n"
        "material.lambda2 = 2.5  # inline comment\n"
        "inclusion.kind = rect\n"
        "inclusion.x0 = 0.1\n"
        "theta.kind = paraboloid\n"
        "theta.p1 = 0.8\n"
        "loading.name = bend-x\n"
        "seed = 7\n");
    CHECK(c.grid_n == 65);
    CHECK(c.lambda2 == doctest::Approx(2.5));
    CHECK(c.inclusion_kind == "rect");
    CHECK(c.rect_x0 == doctest::Approx(0.1));
    CHECK(c.theta_kind == "paraboloid");
    CHECK(c.loading_name == "bend-x");
    CHECK(c.seed == 7);
}

TEST_CASE("unknown keys are rejected") {
    CHECK_THROWS_AS(parse_config_text("grid.size = 65\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("grid.n = 65\nextra = 1\n"), std::invalid_argument);
}

TEST_CASE("malformed values and lines are rejected") {
    CHECK_THROWS_AS(parse_config_text("grid.n = sixty\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("material.mu1 = 1.0x\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("grid.n 65\n"), std::invalid_argument);
}

TEST_CASE("semantic validation") {
    CHECK_THROWS_AS(parse_config_text("grid.n = 64\n"), std::invalid_argument);   // even
    CHECK_THROWS_AS(parse_config_text("grid.n = 15\n"), std::invalid_argument);   // too coarse
    CHECK_THROWS_AS(parse_config_text("material.mu1 = -1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("inclusion.kind = blob\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("theta.kind = dome\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("bounds.epsilon = 0.7\n"), std::invalid_argument);
}

TEST_CASE("parsing the same text twice yields identical resolved configs") {
    const std::string text = "grid.n = 33\nmaterial.mu2 = 3\nseed = 11\n";
    const auto a = parse_config_text(text).resolved();
    const auto b = parse_config_text(text).resolved();
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(a[k].first == b[k].first);
        CHECK(a[k].second == b[k].second);
    }
}

TEST_CASE("factories realize configured objects") {
    RunConfig c = parse_config_text("grid.n = 17\ninclusion.kind = disk\ninclusion.r = 0.25\n");
    const Grid g = c.make_grid();
    CHECK(g.n == 17);
    const PhaseLayout lay = c.make_layout(g);
    CHECK(lay.f1_exact == doctest::Approx(M_PI / 16.0));
    CHECK(c.make_theta().is_flat());
}
