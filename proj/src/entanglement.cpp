#include "graphent/entanglement.hpp"

#include "graphent/diagnostics.hpp"
#include "graphent/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace graphent {

const Operator4& spin_flip_operator()
{
    static const Operator4 op = [] {
        Eigen::Matrix2cd sy;
        sy << 0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0;
        Operator4 prod;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                prod.block<2, 2>(2 * i, 2 * j) = sy(i, j) * sy;
        return basis::from_product(prod);
    }();
    return op;
}

DensityMatrix spin_flip(const DensityMatrix& rho)
{
    const Operator4& yy = spin_flip_operator();
    return yy * rho.conjugate() * yy;
}

double concurrence(const DensityMatrix& rho)
{
    // rho = sum_i psi_i psi_i^H with subnormalised eigenvectors psi_i. The square
    // roots of the eigenvalues of rho * rho_tilde are the singular values of
    // tau_ij = psi_i^T (sigma_y x sigma_y) psi_j, which avoids taking square roots
    // of rounding noise for rank-deficient states.
    const DensityMatrix herm = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<DensityMatrix> es(herm);
    if (es.info() != Eigen::Success)
        throw NumericalInstability("eigen-decomposition of rho failed");

    const double worst_negative = std::min(es.eigenvalues().minCoeff(), 0.0);
    if (worst_negative < -1e-6) {
        std::ostringstream msg;
        msg << "density matrix has eigenvalue " << worst_negative << "; state is not physical";
        throw NumericalInstability(msg.str());
    }
    if (worst_negative < -1e-8) {
        std::ostringstream msg;
        msg << "concurrence cleanup discarded negative eigenvalue " << worst_negative;
        warn(msg.str());
    }

    const Eigen::Matrix4cd psi =
        es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
    const Eigen::Matrix4cd tau = psi.transpose() * spin_flip_operator() * psi;
    Eigen::JacobiSVD<Eigen::Matrix4cd> svd(tau);
    const Eigen::Vector4d l = svd.singularValues();  // descending

    const double raw = l(0) - l(1) - l(2) - l(3);
    const double c = std::clamp(raw, 0.0, 1.0);
    if (raw > 1.0 + 1e-8)
        warn("concurrence clamped from " + std::to_string(raw) + " to 1");
    return c;
}

} // namespace graphent
