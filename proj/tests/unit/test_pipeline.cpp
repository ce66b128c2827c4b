#include "graphent/entanglement.hpp"
#include "graphent/errors.hpp"
#include "graphent/pipeline.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace graphent;

namespace {

ExperimentSpec graphene_spec(double vd_over_vf)
{
    ExperimentSpec s;
    s.env = testing::reference_environment(vd_over_vf);
    return s;
}

} // namespace

TEST_SUITE("pipeline") {

TEST_CASE("max concurrence on the closed-form cascade")
{
    DynamicsParams p;
    p.gamma12 = p.gamma21 = 0.5;
    const auto peak = max_concurrence(build_liouvillian(p), initial_state());
    CHECK(peak.t == doctest::Approx(std::log(3.0)).epsilon(1e-3));
    CHECK(peak.value == doctest::Approx(1.0 / std::sqrt(27.0)).epsilon(1e-8));
}

TEST_CASE("max concurrence without coupling is zero")
{
    const auto peak = max_concurrence(build_liouvillian(DynamicsParams{}), initial_state());
    CHECK(peak.value == 0.0);
    CHECK_THROWS_AS(max_concurrence(build_liouvillian(DynamicsParams{}), initial_state(), {0.0, 10, 1e-4}),
                    InvalidInput);
}

TEST_CASE("normalisation wavelengths")
{
    const double w = testing::omega15();
    CHECK(normalization_wavelength(w, Environment::homogeneous(1.0)) ==
          doctest::Approx(units::vacuum_wavelength(15.0)).epsilon(1e-12));
    CHECK(normalization_wavelength(w, testing::reference_environment()) == doctest::Approx(0.106e-6).epsilon(0.05));
}

TEST_CASE("sweep kinds")
{
    for (auto k : {SweepKind::angle, SweepKind::distance, SweepKind::transient, SweepKind::drive_scan,
                   SweepKind::routing})
        CHECK(parse_sweep_kind(to_string(k)) == k);
    CHECK_THROWS_AS(parse_sweep_kind("field_map"), InvalidInput);
}

TEST_CASE("vacuum angle sweep is flat")
{
    ExperimentSpec s;
    s.grid = {0.0, 45.0, 90.0, 135.0, 180.0};
    const auto r = sweep_angle(s);
    const auto c = r.column_values("concurrence_max");
    for (double v : c)
        CHECK(std::abs(v - c.front()) < 1e-6);
    CHECK(r.metadata["case"] == "homogeneous");
    CHECK(r.metadata["normalization_wavelength_m"].get<double>() ==
          doctest::Approx(units::vacuum_wavelength(15.0)));
}

TEST_CASE("flipping the drift mirrors C(theta) about 90 degrees")
{
    auto a = graphene_spec(-0.5);
    auto b = graphene_spec(0.5);
    a.grid = {30.0, 150.0};
    b.grid = {150.0, 30.0};
    const auto ca = sweep_angle(a).column_values("concurrence_max");
    const auto cb = sweep_angle(b).column_values("concurrence_max");
    for (std::size_t k = 0; k < ca.size(); ++k)
        CHECK(ca[k] == doctest::Approx(cb[k]).epsilon(1e-6));
}

TEST_CASE("sweep output is independent of the thread count")
{
    auto s = graphene_spec(-0.25);
    s.grid = {0.0, 60.0, 120.0, 180.0};
    s.threads = 1;
    const auto a = sweep_angle(s);
    s.threads = 4;
    const auto b = sweep_angle(s);
    CHECK(a.to_csv() == b.to_csv());
    CHECK(a.metadata.dump() == b.metadata.dump());
}

TEST_CASE("small separation approaches the dark-state limit")
{
    auto s = graphene_spec(0.0);
    s.theta_deg = 0.0;
    s.grid = {0.05};
    const auto r = sweep_distance(s);
    CHECK(r.column_values("gamma12_over_gamma11")[0] > 0.9);
    CHECK(r.column_values("concurrence_max")[0] > 0.3);
    CHECK(r.metadata["theta_source"] == "user");
}

TEST_CASE("transient: starts unentangled, reported at the requested times")
{
    auto s = graphene_spec(-0.5);
    s.theta_deg = 180.0;
    s.grid = {0.0, 0.5, 1.0, 2.0};
    Trajectory tr;
    const auto r = run_transient(s, &tr);
    REQUIRE(r.rows.size() == 4);
    CHECK(r.column_values("concurrence")[0] == 0.0);
    CHECK(tr.states.size() == 4);
    CHECK(tr.concurrence[2] == r.column_values("concurrence")[2]);
    s.omega1 = 0.3;
    CHECK_THROWS_AS(run_transient(s), InvalidInput);
}

TEST_CASE("drive scan validation and the low-drive limit")
{
    auto s = graphene_spec(-0.5);
    s.theta_deg = 180.0;
    s.grid = {1e-3, 0.4};
    const auto r = drive_scan(s);
    const auto c = r.column_values("concurrence_ss");
    CHECK(c[0] < 1e-3);
    CHECK(c[1] > c[0]);
    s.omega2 = 0.1;
    CHECK_THROWS_AS(drive_scan(s), InvalidInput);
    s.omega2 = 0.0;
    s.grid = {0.0};
    CHECK_THROWS_AS(drive_scan(s), InvalidInput);
}

TEST_CASE("CSV formatting")
{
    SweepResult r;
    r.columns = {"a", "b"};
    r.rows = {{1.0, 1.0 / 3.0}, {2.5e-12, -4.0}};
    CHECK(r.to_csv() == "a,b\n1,0.333333333\n2.5e-12,-4\n");
    CHECK(r.column("b") == 1);
    CHECK_THROWS_AS(r.column("c"), InvalidInput);
}

}
