#include "graphent/dynamics.hpp"

#include "graphent/diagnostics.hpp"
#include "graphent/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <map>
#include <sstream>

namespace graphent {

namespace basis {

Operator4 from_product(const Operator4& op)
{
    Operator4 out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            out(i, j) = op(product_index[i], product_index[j]);
    return out;
}

namespace {
Operator4 kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b)
{
    Operator4 out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

Eigen::Matrix2cd lowering()
{
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(0, 1) = 1.0;  // |g><e|
    return m;
}
} // namespace

const Operator4& sigma1()
{
    static const Operator4 op = from_product(kron(lowering(), Eigen::Matrix2cd::Identity()));
    return op;
}

const Operator4& sigma2()
{
    static const Operator4 op = from_product(kron(Eigen::Matrix2cd::Identity(), lowering()));
    return op;
}

} // namespace basis

DynamicsParams DynamicsParams::from_couplings(const CouplingMatrix& m, double omega1, double omega2)
{
    DynamicsParams p;
    p.gamma11 = m.gamma(0, 0);
    p.gamma22 = m.gamma(1, 1);
    p.gamma12 = m.gamma(0, 1);
    p.gamma21 = m.gamma(1, 0);
    p.g12 = m.g(0, 1);
    p.g21 = m.g(1, 0);
    p.omega1 = omega1;
    p.omega2 = omega2;
    return p;
}

DensityMatrix master_equation_rhs(const DynamicsParams& p, const DensityMatrix& r)
{
    const cplx i(0.0, 1.0);
    const Operator4& s1 = basis::sigma1();
    const Operator4& s2 = basis::sigma2();
    const Operator4 s1d = s1.adjoint();
    const Operator4 s2d = s2.adjoint();

    DensityMatrix d = i * p.omega1 * ((s1d * r + s1 * r) - (r * s1d + r * s1));
    d += i * p.omega2 * ((s2d * r + s2 * r) - (r * s2d + r * s2));

    d += 0.5 * p.gamma11 * (2.0 * s1 * r * s1d - s1d * s1 * r - r * s1d * s1);
    d += 0.5 * p.gamma22 * (2.0 * s2 * r * s2d - s2d * s2 * r - r * s2d * s2);

    const cplx a21p = 0.5 * p.gamma21 + i * p.g21;
    const cplx a21m = 0.5 * p.gamma21 - i * p.g21;
    const cplx a12p = 0.5 * p.gamma12 + i * p.g12;
    const cplx a12m = 0.5 * p.gamma12 - i * p.g12;
    d += a21p * (s2 * r * s1d - r * s1d * s2) + a21m * (s1 * r * s2d - s2d * s1 * r);
    d += a12p * (s1 * r * s2d - r * s2d * s1) + a12m * (s2 * r * s1d - s1d * s2 * r);
    return d;
}

StateVector16 vectorize(const DensityMatrix& rho)
{
    StateVector16 v;
    for (int col = 0; col < 4; ++col)
        for (int row = 0; row < 4; ++row)
            v(row + 4 * col) = rho(row, col);
    return v;
}

DensityMatrix unvectorize(const StateVector16& v)
{
    DensityMatrix rho;
    for (int col = 0; col < 4; ++col)
        for (int row = 0; row < 4; ++row)
            rho(row, col) = v(row + 4 * col);
    return rho;
}

Liouvillian build_liouvillian(const DynamicsParams& p)
{
    Liouvillian L;
    for (int k = 0; k < 16; ++k) {
        StateVector16 unit = StateVector16::Zero();
        unit(k) = 1.0;
        L.col(k) = vectorize(master_equation_rhs(p, unvectorize(unit)));
    }
    return L;
}

DensityMatrix initial_state()
{
    DensityMatrix rho = DensityMatrix::Zero();
    rho(basis::eg, basis::eg) = 1.0;
    return rho;
}

StateCheck inspect(const DensityMatrix& rho)
{
    StateCheck c;
    const double norm = rho.norm();
    c.hermiticity = norm > 0.0 ? (rho - rho.adjoint()).norm() / norm : 0.0;
    c.trace_error = std::abs(rho.trace() - cplx(1.0));
    const DensityMatrix herm = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<DensityMatrix> es(herm, Eigen::EigenvaluesOnly);
    c.min_eigenvalue = es.eigenvalues().minCoeff();
    return c;
}

Liouvillian propagator(const Liouvillian& L, double t)
{
    const Liouvillian scaled = L * t;
    return scaled.exp();
}

DensityMatrix evolve_to(const DensityMatrix& rho0, const Liouvillian& L, double t)
{
    if (t == 0.0)
        return rho0;
    return unvectorize(propagator(L, t) * vectorize(rho0));
}

std::vector<DensityMatrix> evolve(const DensityMatrix& rho0, const Liouvillian& L, std::span<const double> t_grid)
{
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
        if (!(t_grid[k] >= 0.0) || (k > 0 && !(t_grid[k] >= t_grid[k - 1])))
            throw InvalidInput("time grid must be non-negative and ascending");
    }

    std::map<double, Liouvillian> steps;
    auto step = [&](double dt) -> const Liouvillian& {
        auto it = steps.find(dt);
        if (it == steps.end())
            it = steps.emplace(dt, propagator(L, dt)).first;
        return it->second;
    };

    std::vector<DensityMatrix> out;
    out.reserve(t_grid.size());
    StateVector16 v = vectorize(rho0);
    double t_prev = 0.0;
    double worst_negativity = 0.0;
    for (double t : t_grid) {
        const double dt = t - t_prev;
        if (dt > 0.0)
            v = step(dt) * v;
        t_prev = t;
        DensityMatrix rho = unvectorize(v);
        if (t == 0.0)
            rho = rho0;
        const StateCheck c = inspect(rho);
        if (c.trace_error > 1e-9 || c.hermiticity > 1e-10) {
            std::ostringstream msg;
            msg << "propagation lost trace/Hermiticity at t = " << t << " (trace error " << c.trace_error
                << ", hermiticity " << c.hermiticity << ")";
            throw IntegrationFailure(msg.str(), std::max(c.trace_error, c.hermiticity));
        }
        worst_negativity = std::min(worst_negativity, c.min_eigenvalue);
        out.push_back(rho);
    }
    if (worst_negativity < -1e-8) {
        std::ostringstream msg;
        msg << "trajectory leaves the positive cone: min eigenvalue " << worst_negativity;
        warn(msg.str());
    }
    return out;
}

SteadyState steady_state(const Liouvillian& L, bool crosscheck)
{
    Eigen::JacobiSVD<Liouvillian> svd(L, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double smallest = s(15);
    const double second = s(14);
    if (!(second > 1e6 * smallest)) {
        std::ostringstream msg;
        msg << "Liouvillian null space is not one-dimensional (singular values " << second << ", " << smallest
            << ")";
        throw NonUniqueSteadyState(msg.str());
    }
    DensityMatrix rho = unvectorize(svd.matrixV().col(15));
    const cplx tr = rho.trace();
    if (std::abs(tr) < 1e-12)
        throw NonUniqueSteadyState("null vector of the Liouvillian is traceless");
    rho /= tr;

    SteadyState out;
    out.rho = rho;
    out.null_gap = smallest > 0.0 ? second / smallest : std::numeric_limits<double>::infinity();
    if (crosscheck)
        out.crosscheck_deviation = (evolve_to(initial_state(), L, 100.0) - rho).norm();
    return out;
}

} // namespace graphent
