#pragma once

#include "graphent/dynamics.hpp"

namespace graphent {

/// sigma_y (x) sigma_y expressed in the |gg>, |ee>, |ge>, |eg> basis.
const Operator4& spin_flip_operator();

/// (sigma_y (x) sigma_y) conj(rho) (sigma_y (x) sigma_y).
DensityMatrix spin_flip(const DensityMatrix& rho);

/// Wootters concurrence, in [0, 1].
/// Eigenvalues of rho below -1e-6 raise NumericalInstability; down to -1e-8 they are
/// clipped silently, in between with a warning.
double concurrence(const DensityMatrix& rho);

} // namespace graphent
