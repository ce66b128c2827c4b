#include "graphent/config.hpp"
#include "graphent/units.hpp"

#include <doctest.h>

using namespace graphent;
using nlohmann::json;

namespace {

std::string key_path_of(const json& doc)
{
    try {
        config::parse(doc);
    } catch (const config::ConfigError& e) {
        return e.key_path();
    }
    return "";
}

} // namespace

TEST_SUITE("config") {

TEST_CASE("defaults")
{
    const auto c = config::parse(json::object());
    CHECK(c.frequency_thz == 15.0);
    CHECK_FALSE(c.graphene.has_value());
    CHECK(c.entangle.sweep == "angle");
    CHECK(c.entangle_grid().size() == 19);
    CHECK(config::default_grid(SweepKind::drive_scan).size() == 15);
}

TEST_CASE("unknown keys are rejected with their path")
{
    CHECK(key_path_of({{"frequncy_thz", 15}}) == "frequncy_thz");
    CHECK(key_path_of({{"graphene", {{"mu_c", 0.1}}}}) == "graphene.mu_c");
    CHECK(key_path_of({{"entangle", {{"sweep", "angle"}, {"thetta_deg", 10}}}}) == "entangle.thetta_deg");
}

TEST_CASE("type and range errors carry the key path")
{
    CHECK(key_path_of({{"frequency_thz", "15"}}) == "frequency_thz");
    CHECK(key_path_of({{"frequency_thz", -1}}) == "frequency_thz");
    CHECK(key_path_of({{"environment", {{"eps_r1", 0.5}}}}) == "environment.eps_r1");
    CHECK(key_path_of({{"graphene", {{"vd_over_vf", 1.2}}}}) == "graphene.vd_over_vf");
    CHECK(key_path_of({{"entangle", {{"grid", {1, "x"}}}}}) == "entangle.grid[1]");
    CHECK(key_path_of({{"entangle", {{"sweep", "field_map"}}}}) == "entangle.sweep");
    CHECK(key_path_of({{"conductivity", {{"n_f", 0}}}}) == "conductivity.n_f");
    CHECK(key_path_of({{"quadrature", {{"max_intervals", 1.5}}}}) == "quadrature.max_intervals");
    CHECK(key_path_of({{"solver", {{"doppler_arg", "imag"}}}}) == "solver.doppler_arg");
    CHECK(key_path_of(json::array()) == "<root>");
}

TEST_CASE("resolved document round trips")
{
    const json doc = {{"frequency_thz", 12.5},
                      {"environment", {{"eps_r1", 2.0}, {"eps_r2", 4.0}}},
                      {"graphene", {{"mu_c_ev", 0.2}, {"tau_ps", 0.5}, {"vd_over_vf", -0.25}}},
                      {"solver", {{"doppler_arg", "complex"}}},
                      {"entangle", {{"sweep", "distance"}, {"theta_deg", 170.0}}}};
    const auto c = config::parse(doc);
    const json resolved = config::to_json(c);
    CHECK(config::to_json(config::parse(resolved)) == resolved);
    CHECK(config::to_json(config::parse(json{{"resolved_config", resolved}})) == resolved);
    CHECK(resolved["entangle"]["grid"].size() == config::default_grid(SweepKind::distance).size());
}

TEST_CASE("experiment spec construction")
{
    const auto c = config::parse({{"graphene", {{"vd_over_vf", -0.5}}}, {"environment", {{"eps_r1", 4}, {"eps_r2", 4}}}});
    const auto s = c.experiment(3);
    CHECK(s.env.has_sheet());
    CHECK(s.env.sheet->v_d == doctest::Approx(-units::vF / 2));
    CHECK(s.threads == 3);
    CHECK(s.grid.size() == 19);
    CHECK_THROWS_AS(config::parse(json::object()).require_graphene("dispersion"), config::ConfigError);
}

}
