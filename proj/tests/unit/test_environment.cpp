#include "graphent/environment.hpp"
#include "graphent/errors.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace graphent;

TEST_SUITE("environment") {

TEST_CASE("decaying branch: Re p >= 0, Im p <= 0 on the imaginary axis")
{
    for (int k = 0; k < 200; ++k) {
        const cplx z{testing::uniform(-10, 10), testing::uniform(-10, 10)};
        const cplx p = decaying_sqrt(z);
        CHECK(p.real() >= 0.0);
        CHECK(std::abs(p * p - z) <= 1e-12 * std::abs(z));
    }
    // Below the light line (q < k): purely imaginary, outgoing.
    const cplx p = decaying_sqrt(cplx(-4.0, 0.0));
    CHECK(p.real() == 0.0);
    CHECK(p.imag() == doctest::Approx(-2.0));
    CHECK(decaying_sqrt(cplx(9.0, 0.0)) == cplx(3.0, 0.0));
}

TEST_CASE("wavenumbers scale with sqrt(eps)")
{
    const auto env = testing::reference_environment();
    const double w = testing::omega15();
    CHECK(env.k2(w) == doctest::Approx(2.0 * w / units::c));
    CHECK(Environment::homogeneous(1.0).k2(w) == doctest::Approx(w / units::c));
}

TEST_CASE("validation")
{
    CHECK_THROWS_AS(Environment::homogeneous(0.5).validate(), InvalidInput);
    CHECK_THROWS_AS(Environment::homogeneous(1.0).sheet_params(), InvalidInput);
    CHECK_NOTHROW(testing::reference_environment(-0.5).validate());
    CHECK_FALSE(Environment::homogeneous(2.0).has_sheet());
}

}
