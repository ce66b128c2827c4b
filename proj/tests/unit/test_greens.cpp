#include "graphent/errors.hpp"
#include "graphent/greens.hpp"
#include "support.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <fstream>

using namespace graphent;
using graphent::testing::omega15;
using graphent::testing::reference_environment;

TEST_SUITE("greens") {

TEST_CASE("principal term matches the closed-form scalar Green's function derivatives")
{
    const double w = omega15();
    const auto env = Environment::homogeneous(4.0);
    const double k = env.k2(w);
    // Finite-difference check of (k^2 + d^2/dz^2) e^{ikR}/(4 pi R).
    auto g = [&](double dz, double rho) {
        const double R = std::hypot(rho, dz);
        return std::exp(cplx(0, k * R)) / (4.0 * units::pi * R);
    };
    const double rho = 0.3 / k;
    const double dz = 0.4 / k;
    const double step = 1e-4 / k;
    const cplx d2 = (g(dz + step, rho) - 2.0 * g(dz, rho) + g(dz - step, rho)) / (step * step);
    const cplx expect = k * k * g(dz, rho) + d2;
    const cplx got = principal_gzz(w, env, {rho, 0, 1.0 + dz}, {0, 0, 1.0});
    CHECK(testing::rel_diff(got, expect) < 1e-6);
}

TEST_CASE("self term: Im G(r, r) = k^3 / 6 pi and vacuum decay rate")
{
    const double w = omega15();
    const auto env = Environment::homogeneous(1.0);
    LayeredGreens g(w, env);
    const double k = env.k2(w);
    CHECK(g.self_imag(1e-6) == doctest::Approx(k * k * k / (6.0 * units::pi)).epsilon(1e-14));
    const double d = 1e-29;
    const auto geom = EmitterGeometry::planar(1e-6, 2e-6, 0.0);
    const auto m = g.couplings(geom, DipoleScale::absolute(d));
    const double expect = d * d * k * k * k / (3.0 * units::pi * units::eps0 * units::hbar);
    CHECK(std::abs(m.gamma(0, 0) - expect) / expect < 1e-12);
}

TEST_CASE("coincident points are rejected")
{
    CHECK_THROWS_AS(principal_gzz(omega15(), Environment::homogeneous(1.0), {0, 0, 1e-6}, {0, 0, 1e-6}),
                    CoincidentSource);
}

TEST_CASE("double integral agrees with the Bessel path without drift")
{
    const double w = omega15();
    const auto env = reference_environment();
    LayeredGreens g(w, env);
    const double lam = 0.106e-6;
    for (auto [rho, h] : {std::pair{0.5 * lam, 0.4 * lam}, std::pair{1.5 * lam, 2.0 / 3.0 * lam}}) {
        const cplx a = g.scattered(rho, 0.7, h);
        const cplx b = g.scattered_reciprocal(rho, h);
        CHECK(testing::rel_diff(a, b) < 1e-6);
    }
}

TEST_CASE("golden reference for the reciprocal scattered term")
{
    std::ifstream in(std::string(GRAPHENT_GOLDEN_DIR) + "/scattered_reciprocal.json");
    REQUIRE(in);
    const auto doc = nlohmann::json::parse(in);
    const double w = units::thz_to_omega(doc["frequency_thz"].get<double>());
    const auto env = reference_environment();
    const double lam = doc["lambda_m"].get<double>();
    LayeredGreens g(w, env);
    for (const auto& c : doc["cases"]) {
        const cplx expect(c["re"].get<double>(), c["im"].get<double>());
        const cplx got = g.scattered_reciprocal(c["rho_over_lambda"].get<double>() * lam,
                                                c["z_plus_zp_over_lambda"].get<double>() * lam);
        CHECK(testing::rel_diff(got, expect) < 1e-7);
    }
}

TEST_CASE("reciprocity without drift, broken with drift")
{
    const double w = omega15();
    const double lam = 0.171e-6;
    const auto geom = EmitterGeometry::planar(lam / 3, 1.0 * lam, units::pi);
    const auto r = coupling_coefficients(w, reference_environment(), geom, DipoleScale::normalized());
    CHECK(r.gamma(0, 1) == doctest::Approx(r.gamma(1, 0)).epsilon(1e-8));
    CHECK(r.g(0, 1) == doctest::Approx(r.g(1, 0)).epsilon(1e-8));
    CHECK(r.gamma(0, 0) == 1.0);
    const auto nr = coupling_coefficients(w, reference_environment(-0.5), geom, DipoleScale::normalized());
    CHECK(std::abs(nr.gamma(0, 1) - nr.gamma(1, 0)) > 0.1 * std::abs(nr.gamma(1, 0)));
}

TEST_CASE("mirror symmetry: G(rho, theta; v_d) = G(rho, pi - theta; -v_d)")
{
    const double w = omega15();
    const double lam = 0.15e-6;
    LayeredGreens a(w, reference_environment(-0.3));
    LayeredGreens b(w, reference_environment(0.3));
    for (double theta : {0.0, 0.8, 2.0}) {
        const cplx ga = a.scattered(lam, theta, 0.8 * lam);
        const cplx gb = b.scattered(lam, units::pi - theta, 0.8 * lam);
        CHECK(testing::rel_diff(ga, gb) < 1e-7);
    }
}

TEST_CASE("Purcell enhancement near the sheet")
{
    const double w = omega15();
    LayeredGreens g(w, reference_environment());
    const double k = g.k2();
    CHECK(g.self_imag(0.106e-6 / 3) > 10.0 * k * k * k / (6.0 * units::pi));
}

TEST_CASE("field map rejects cells at the source and converts G to E")
{
    const double w = omega15();
    const auto env = Environment::homogeneous(1.0);
    GridSpec grid;
    grid.x_min = -1e-6;
    grid.x_max = 1e-6;
    grid.nx = 3;
    grid.y_min = -1e-6;
    grid.y_max = 1e-6;
    grid.ny = 3;
    grid.z = 1e-6;
    CHECK_THROWS_WITH_AS(field_map(w, env, {0, 0, 1e-6}, grid), doctest::Contains("ix=1, iy=1"), InvalidInput);
    grid.nx = 2;
    grid.ny = 2;
    const auto map = field_map(w, env, {0, 0, 1e-6}, grid);
    const cplx g = principal_gzz(w, env, {grid.x(0), grid.y(0), grid.z}, {0, 0, 1e-6});
    CHECK(testing::rel_diff(map.at(0, 0), g / (cplx(0, -1) * w * units::eps0)) < 1e-14);
    CHECK(testing::rel_diff(map.at(0, 0), map.at(1, 1)) < 1e-12);
}

TEST_CASE("field map is identical for any thread count")
{
    const double w = omega15();
    GridSpec grid;
    grid.x_min = -0.2e-6;
    grid.x_max = 0.2e-6;
    grid.nx = 3;
    grid.y_min = -0.2e-6;
    grid.y_max = 0.2e-6;
    grid.ny = 2;
    grid.z = 0.08e-6;
    LayeredGreens g(w, reference_environment(-0.5));
    const auto a = g.field_map({0, 0, 0.08e-6}, grid, 1);
    const auto b = g.field_map({0, 0, 0.08e-6}, grid, 3);
    for (std::size_t k = 0; k < a.values.size(); ++k)
        CHECK(a.values[k] == b.values[k]);
}

TEST_CASE("geometry validation")
{
    CHECK_THROWS_AS(EmitterGeometry::planar(-1e-7, 1e-7, 0.0).validate(), InvalidInput);
    CHECK(EmitterGeometry::planar(1e-7, 2e-7, 1.0).lateral_separation() == doctest::Approx(2e-7));
    LayeredGreens g(omega15(), reference_environment(-0.5));
    CHECK_THROWS_AS(g.scattered_reciprocal(1e-7, 1e-7), InvalidInput);
}

}
