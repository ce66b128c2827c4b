#pragma once

#include <complex>

namespace graphent {

using cplx = std::complex<double>;

/// Graphene sheet parameters in SI units. The drift is along +x (signed).
struct GrapheneParams {
    double mu_c = 0.0;  // chemical potential, J
    double tau = 0.0;   // intraband scattering time, s
    double v_d = 0.0;   // drift velocity, m/s

    /// Builds from the units used in configuration files (eV, ps, fraction of vF).
    static GrapheneParams from_config_units(double mu_c_ev, double tau_ps, double vd_over_vf);

    /// Throws InvalidInput unless mu_c > 0, tau > 0 and |v_d| < vF.
    void validate() const;
};

/// Minimum conductivity pi e^2 / (2 h), the normalisation used in plots.
double sigma_min();

/// Zero-temperature Kubo conductivity (Drude + interband) evaluated exactly as
/// written for any real nonzero frequency, including the negative Doppler-shifted
/// frequencies that occur for large q_x*v_d. Throws DomainError within a relative
/// guard band of 1e-9 around hbar*omega = +-2 mu_c.
cplx kubo_conductivity(double omega, const GrapheneParams& p);

/// Same expression continued to complex frequency (|.| of the log argument kept).
/// Used only by the complex Doppler-argument sensitivity mode of the dispersion solver.
cplx kubo_conductivity(cplx omega, const GrapheneParams& p);

/// Local conductivity sigma(omega); requires omega > 0.
cplx local_conductivity(double omega, const GrapheneParams& p);

/// Drift-biased conductivity omega/(omega - q_x v_d) * sigma(omega - q_x v_d).
/// Returns local_conductivity(omega) bit-identically when q_x*v_d == 0.
/// Throws DopplerSingularity when |omega - q_x v_d| < 1e-12 omega.
cplx doppler_conductivity(double omega, double q_x, const GrapheneParams& p);
cplx doppler_conductivity(double omega, cplx q_x, const GrapheneParams& p);

/// True iff Im sigma_d > 0 (e^{-i omega t} convention), i.e. the sheet can carry TM waves.
bool supports_tm(double omega, double q_x, const GrapheneParams& p);

} // namespace graphent
