#include "graphent/errors.hpp"
#include "graphent/material.hpp"
#include "graphent/units.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace graphent;
using graphent::testing::omega15;
using graphent::testing::reference_sheet;

TEST_SUITE("material") {

TEST_CASE("sigma_min is pi e^2 / 2h")
{
    CHECK(sigma_min() == doctest::Approx(units::pi * units::e * units::e / (2.0 * units::h)));
    CHECK(sigma_min() == doctest::Approx(units::e * units::e / (4.0 * units::hbar)));
}

TEST_CASE("intraband term matches the Drude form below the interband edge")
{
    const auto p = reference_sheet();
    const double w = omega15();
    const cplx drude = cplx(0, 1) * units::e * units::e * p.mu_c / (units::pi * units::hbar * units::hbar * cplx(w, 1.0 / p.tau));
    const double x = units::hbar * w;
    const cplx inter = units::e * units::e / (4.0 * units::hbar) * cplx(0, 1) / units::pi *
                       std::log(std::abs((x - 2 * p.mu_c) / (x + 2 * p.mu_c)));
    const cplx s = local_conductivity(w, p);
    CHECK(std::abs(s - (drude + inter)) / std::abs(s) < 1e-14);
    CHECK(s.real() > 0.0);
    CHECK(s.imag() > 0.0);
}

TEST_CASE("interband step above 2 mu_c with vanishing Drude weight")
{
    GrapheneParams p = reference_sheet();
    p.tau = 1e-9;
    const double w = 4.0 * p.mu_c / units::hbar;  // hbar omega = 4 mu_c
    const cplx s = local_conductivity(w, p);
    CHECK(s.real() == doctest::Approx(sigma_min()).epsilon(1e-3));
    CHECK(s.imag() < 0.0);
}

TEST_CASE("guard band around hbar omega = 2 mu_c")
{
    const auto p = reference_sheet();
    const double edge = 2.0 * p.mu_c / units::hbar;
    CHECK_THROWS_AS(local_conductivity(edge, p), DomainError);
    CHECK_THROWS_AS(local_conductivity(edge * (1.0 + 1e-10), p), DomainError);
    CHECK_NOTHROW(local_conductivity(edge * (1.0 + 1e-6), p));
}

TEST_CASE("local conductivity requires positive frequency")
{
    CHECK_THROWS_AS(local_conductivity(0.0, reference_sheet()), InvalidInput);
    CHECK_THROWS_AS(local_conductivity(-1e13, reference_sheet()), InvalidInput);
}

TEST_CASE("zero drift returns the local value bit for bit")
{
    const auto p = reference_sheet(0.0);
    const double w = omega15();
    for (double qx : {-1e8, 0.0, 3e7, 1e9}) {
        const cplx a = doppler_conductivity(w, qx, p);
        const cplx b = local_conductivity(w, p);
        CHECK(a.real() == b.real());
        CHECK(a.imag() == b.imag());
    }
    const auto pd = reference_sheet(-0.5);
    const cplx at_zero = doppler_conductivity(w, 0.0, pd);
    CHECK(at_zero == local_conductivity(w, pd));
}

TEST_CASE("Doppler conductivity follows its definition")
{
    const auto p = reference_sheet(-0.5);
    const double w = omega15();
    for (double qx : {-6e7, -1e7, 2e7, 6e7}) {
        const double wp = w - qx * p.v_d;
        const cplx expect = w / wp * kubo_conductivity(wp, p);
        CHECK(std::abs(doppler_conductivity(w, qx, p) - expect) <= 1e-15 * std::abs(expect));
    }
}

TEST_CASE("flipping drift and q_x together leaves sigma_d unchanged")
{
    const double w = omega15();
    for (int k = 0; k < 50; ++k) {
        const double v = testing::uniform(-0.9, 0.9);
        const double qx = testing::uniform(-8e7, 8e7);
        const cplx a = doppler_conductivity(w, qx, reference_sheet(v));
        const cplx b = doppler_conductivity(w, -qx, reference_sheet(-v));
        CHECK(std::abs(a - b) <= 1e-14 * std::abs(a));
    }
}

TEST_CASE("Doppler singularity and negative shifted frequency")
{
    const auto p = reference_sheet(-0.5);
    const double w = omega15();
    const double q_sing = w / p.v_d;
    CHECK_THROWS_AS(doppler_conductivity(w, q_sing, p), DopplerSingularity);
    // Beyond the singularity omega' < 0; the formula is still evaluated as written.
    const double q_beyond = 1.5 * q_sing;
    const double wp = w - q_beyond * p.v_d;
    REQUIRE(wp < 0.0);
    CHECK(std::isfinite(std::abs(doppler_conductivity(w, q_beyond, p))));
}

TEST_CASE("complex q_x reduces to the real overload on the real axis")
{
    const auto p = reference_sheet(-0.25);
    const double w = omega15();
    const cplx a = doppler_conductivity(w, cplx(4e7, 0.0), p);
    const cplx b = doppler_conductivity(w, 4e7, p);
    CHECK(std::abs(a - b) <= 1e-12 * std::abs(b));
}

TEST_CASE("TM support")
{
    CHECK(supports_tm(omega15(), 0.0, reference_sheet()));
    CHECK(supports_tm(omega15(), 5e7, reference_sheet(-0.5)));
    GrapheneParams p = reference_sheet();
    p.tau = 1e-9;
    CHECK_FALSE(supports_tm(4.0 * p.mu_c / units::hbar, 0.0, p));
}

TEST_CASE("parameter validation")
{
    CHECK_THROWS_AS(GrapheneParams::from_config_units(0.1, 0.35, 1.0).validate(), InvalidInput);
    CHECK_THROWS_AS(GrapheneParams::from_config_units(-0.1, 0.35, 0.0).validate(), InvalidInput);
    CHECK_THROWS_AS(GrapheneParams::from_config_units(0.1, 0.0, 0.0).validate(), InvalidInput);
    CHECK_NOTHROW(GrapheneParams::from_config_units(0.1, 0.35, -0.5).validate());
    CHECK(GrapheneParams::from_config_units(0.1, 0.35, -0.5).v_d == doctest::Approx(-units::vF / 2));
}

}
