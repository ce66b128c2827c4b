#pragma once

#include "graphent/environment.hpp"

#include <optional>
#include <string>
#include <vector>

namespace graphent {

/// Which wavenumber enters the Doppler shift of sigma_d when q is complex.
enum class DopplerArg {
    real_part,  // q_x = Re(q) cos(phi)
    complex     // q_x = q cos(phi), with the Kubo formula continued off the real axis
};

DopplerArg parse_doppler_arg(const std::string& text);
std::string to_string(DopplerArg arg);

struct DispersionOptions {
    DopplerArg doppler_arg = DopplerArg::real_part;
    double step_tolerance = 1e-12;  // |dq|/|q| at convergence
    int max_iterations = 200;
    int retries = 3;                // extra seeds at +-5 % perturbation
};

/// A TM surface-plasmon root of Z^E(q) = 0 propagating along direction phi.
struct DispersionRoot {
    cplx q;          // rad/m, Re q > 0
    double phi = 0;  // rad
    double omega = 0;
    double residual = 0;  // |Z^E(q)|
};

enum class RootStatus { ok, no_root, no_tm };
std::string to_string(RootStatus status);

struct DispersionSample {
    double omega = 0;
    double phi = 0;
    RootStatus status = RootStatus::no_root;
    cplx q{};
    double residual = 0;
};

struct EquiFrequencyContour {
    double omega = 0;
    double v_d = 0;
    std::vector<DispersionSample> samples;  // phi strictly increasing over (-pi, pi]
};

/// TM dispersion denominator (eps1/eps2) p2 + p1 + sigma_d p1 p2 / (-i omega eps2).
cplx zE(cplx q, double phi, double omega, const Environment& env,
        DopplerArg arg = DopplerArg::real_part);

/// Quasi-static root i omega (eps1 + eps2) / sigma_d(q_x), with sigma_d taken at
/// the supplied in-plane wavenumber component.
cplx quasi_static_root(double omega, double q_x, const Environment& env);

/// Default seed: quasi-static root iterated to self-consistency in q_x.
cplx default_seed(double phi, double omega, const Environment& env);

DispersionRoot solve_spp(double phi, double omega, const Environment& env,
                         std::optional<cplx> seed = std::nullopt,
                         const DispersionOptions& opts = {});

/// solve_spp that records failures as a status instead of throwing.
DispersionSample try_solve_spp(double phi, double omega, const Environment& env,
                               std::optional<cplx> seed, const DispersionOptions& opts = {});

EquiFrequencyContour efc(double omega, const Environment& env, int n_phi,
                         const DispersionOptions& opts = {});

std::vector<DispersionSample> dispersion_curve(double phi, const Environment& env, double omega_min,
                                               double omega_max, int n_points,
                                               const DispersionOptions& opts = {});

/// Direction along which the drift carries the plasmon: pi for v_d < 0, 0 otherwise.
double drift_direction(const Environment& env);

/// 2 pi / Re q of the plasmon along the drift direction.
double spp_wavelength(double omega, const Environment& env, const DispersionOptions& opts = {});

} // namespace graphent
