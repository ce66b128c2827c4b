#pragma once

#include "graphent/dynamics.hpp"
#include "graphent/environment.hpp"
#include "graphent/units.hpp"

#include <Eigen/Dense>

#include <complex>
#include <random>

namespace graphent::testing {

/// Fixed-seed generator so property checks are reproducible.
inline std::mt19937_64& rng()
{
    static std::mt19937_64 gen(20240615);
    return gen;
}

inline double uniform(double a, double b)
{
    return std::uniform_real_distribution<double>(a, b)(rng());
}

inline cplx random_complex()
{
    std::normal_distribution<double> n;
    return {n(rng()), n(rng())};
}

/// Random full-rank density matrix A A^H / tr.
inline DensityMatrix random_density()
{
    Eigen::Matrix4cd a;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            a(i, j) = random_complex();
    DensityMatrix rho = a * a.adjoint();
    return rho / rho.trace();
}

/// Random 2x2 unitary from the QR factorisation of a Gaussian matrix.
inline Eigen::Matrix2cd random_unitary2()
{
    Eigen::Matrix2cd a;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            a(i, j) = random_complex();
    Eigen::HouseholderQR<Eigen::Matrix2cd> qr(a);
    return qr.householderQ();
}

inline Eigen::Matrix4cd kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b)
{
    Eigen::Matrix4cd out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

inline GrapheneParams reference_sheet(double vd_over_vf = 0.0)
{
    return GrapheneParams::from_config_units(0.1, 0.35, vd_over_vf);
}

inline Environment reference_environment(double vd_over_vf = 0.0)
{
    return Environment::graphene(4.0, 4.0, reference_sheet(vd_over_vf));
}

inline double omega15() { return units::thz_to_omega(15.0); }

inline double rel_diff(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

} // namespace graphent::testing
