#pragma once

#include "graphent/greens.hpp"

#include <Eigen/Core>

#include <span>
#include <vector>

namespace graphent {

/// Two-qubit density matrix in the fixed basis
/// |1> = |g1 g2>, |2> = |e1 e2>, |3> = |g1 e2>, |4> = |e1 g2>.
using DensityMatrix = Eigen::Matrix4cd;
using Operator4 = Eigen::Matrix4cd;
using Liouvillian = Eigen::Matrix<cplx, 16, 16>;
using StateVector16 = Eigen::Matrix<cplx, 16, 1>;

namespace basis {
inline constexpr int gg = 0;
inline constexpr int ee = 1;
inline constexpr int ge = 2;
inline constexpr int eg = 3;

/// Maps a basis index above to the tensor-product index 2*a1 + a2 (g = 0, e = 1).
inline constexpr int product_index[4] = {0, 3, 1, 2};

/// Embeds a standard tensor-product operator (qubit 1 most significant) in this basis.
Operator4 from_product(const Operator4& op);

/// Lowering operators sigma_1 = |g1><e1| (x) I and sigma_2 = I (x) |g2><e2|.
const Operator4& sigma1();
const Operator4& sigma2();
} // namespace basis

/// Rates in units of Gamma_11 (time in units of 1/Gamma_11). Drives are real Rabi rates.
struct DynamicsParams {
    double gamma11 = 1.0;
    double gamma22 = 1.0;
    double gamma12 = 0.0;
    double gamma21 = 0.0;
    double g12 = 0.0;
    double g21 = 0.0;
    double omega1 = 0.0;
    double omega2 = 0.0;

    static DynamicsParams from_couplings(const CouplingMatrix& normalized, double omega1 = 0.0,
                                         double omega2 = 0.0);
};

/// Right-hand side of the zero-detuning driven master equation applied to rho.
DensityMatrix master_equation_rhs(const DynamicsParams& p, const DensityMatrix& rho);

/// Superoperator on the column-stacked density matrix.
Liouvillian build_liouvillian(const DynamicsParams& p);

StateVector16 vectorize(const DensityMatrix& rho);
DensityMatrix unvectorize(const StateVector16& v);

/// |e1 g2><e1 g2|.
DensityMatrix initial_state();

struct StateCheck {
    double hermiticity = 0.0;    // ||rho - rho^H||_F / ||rho||_F
    double trace_error = 0.0;    // |tr rho - 1|
    double min_eigenvalue = 0.0; // of the Hermitian part
};
StateCheck inspect(const DensityMatrix& rho);

/// exp(L t) by scaling and squaring.
Liouvillian propagator(const Liouvillian& L, double t);

DensityMatrix evolve_to(const DensityMatrix& rho0, const Liouvillian& L, double t);

/// States at each time of an ascending, non-negative grid. Each output is checked
/// for unit trace (1e-9) and Hermiticity (1e-10); negativity below -1e-8 is reported
/// as a warning since nonreciprocal couplings do not guarantee complete positivity.
std::vector<DensityMatrix> evolve(const DensityMatrix& rho0, const Liouvillian& L,
                                  std::span<const double> t_grid);

struct SteadyState {
    DensityMatrix rho;
    double null_gap = 0.0;              // second-smallest / smallest singular value
    double crosscheck_deviation = -1.0; // ||rho_ss - rho(t=100)||_F, -1 when skipped
};

/// Null vector of L normalised to unit trace. Throws NonUniqueSteadyState when the
/// null space is not one-dimensional (gap below 1e6).
SteadyState steady_state(const Liouvillian& L, bool crosscheck = true);

} // namespace graphent
