#include "graphent/entanglement.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace graphent;

namespace {

DensityMatrix bell(double phase = 0.0)
{
    // (|ge> - e^{i phase}|eg>)/sqrt(2)
    Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();
    psi(basis::ge) = 1.0 / std::sqrt(2.0);
    psi(basis::eg) = -std::exp(cplx(0, phase)) / std::sqrt(2.0);
    return psi * psi.adjoint();
}

DensityMatrix werner(double p)
{
    return p * bell() + (1.0 - p) / 4.0 * DensityMatrix::Identity();
}

/// Closed-form reference for Werner states.
double werner_oracle(double p) { return std::max(0.0, (3.0 * p - 1.0) / 2.0); }

/// Brute force: sqrt of eigenvalues of the Hermitian sqrt(rho) rho~ sqrt(rho).
double brute_force(const DensityMatrix& rho)
{
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho);
    const Eigen::Matrix4cd sq = es.operatorSqrt();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> r(sq * spin_flip(rho) * sq);
    Eigen::Vector4d l = r.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    std::sort(l.data(), l.data() + 4, std::greater<>());
    return std::max(0.0, l(0) - l(1) - l(2) - l(3));
}

} // namespace

TEST_SUITE("entanglement") {

TEST_CASE("spin-flip operator entries in this basis")
{
    const auto& yy = spin_flip_operator();
    CHECK(yy(basis::ee, basis::gg) == cplx(-1.0));
    CHECK(yy(basis::gg, basis::ee) == cplx(-1.0));
    CHECK(yy(basis::eg, basis::ge) == cplx(1.0));
    CHECK(yy(basis::ge, basis::eg) == cplx(1.0));
    CHECK(yy.cwiseAbs().sum() == 4.0);
}

TEST_CASE("Bell states are maximally entangled")
{
    for (double phase : {0.0, 0.7, units::pi})
        CHECK(std::abs(concurrence(bell(phase)) - 1.0) < 1e-10);
    Eigen::Vector4cd phi = Eigen::Vector4cd::Zero();
    phi(basis::gg) = phi(basis::ee) = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(concurrence(phi * phi.adjoint()) - 1.0) < 1e-10);
}

TEST_CASE("Werner states")
{
    for (double p : {0.2, 0.5, 0.9}) {
        CHECK(std::abs(concurrence(werner(p)) - werner_oracle(p)) < 1e-9);
        CHECK(std::abs(brute_force(werner(p)) - werner_oracle(p)) < 1e-9);
    }
}

TEST_CASE("product and maximally mixed states")
{
    CHECK(concurrence(initial_state()) == 0.0);
    CHECK(concurrence(DensityMatrix::Identity() / 4.0) == 0.0);
}

TEST_CASE("random states: range and agreement with brute force")
{
    for (int k = 0; k < 100; ++k) {
        const auto rho = testing::random_density();
        const double c = concurrence(rho);
        CHECK(c >= 0.0);
        CHECK(c <= 1.0);
        CHECK(std::abs(c - brute_force(rho)) < 1e-8);
    }
}

TEST_CASE("invariance under local unitaries")
{
    for (int k = 0; k < 30; ++k) {
        const double p = testing::uniform(0.4, 1.0);
        const DensityMatrix rho = werner(p);
        const Eigen::Matrix4cd u = basis::from_product(testing::kron(testing::random_unitary2(), testing::random_unitary2()));
        CHECK(std::abs(concurrence(u * rho * u.adjoint()) - concurrence(rho)) < 1e-9);
    }
}

}
