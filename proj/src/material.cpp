#include "graphent/material.hpp"

#include "graphent/errors.hpp"
#include "graphent/units.hpp"

#include <cmath>
#include <sstream>

namespace graphent {
namespace {

constexpr double kGuardBand = 1e-9;
constexpr double kDopplerFloor = 1e-12;

void check_interband_singularity(double hw, double two_mu)
{
    if (std::abs(hw - two_mu) <= kGuardBand * two_mu || std::abs(hw + two_mu) <= kGuardBand * two_mu) {
        std::ostringstream msg;
        msg << "interband logarithm is singular at hbar*omega = +-2 mu_c (hbar*omega = "
            << units::joule_to_ev(hw) << " eV)";
        throw DomainError(msg.str());
    }
}

double heaviside(double x)
{
    if (x > 0.0)
        return 1.0;
    if (x < 0.0)
        return 0.0;
    return 0.5;
}

} // namespace

GrapheneParams GrapheneParams::from_config_units(double mu_c_ev, double tau_ps, double vd_over_vf)
{
    GrapheneParams p{units::ev_to_joule(mu_c_ev), units::ps_to_s(tau_ps), vd_over_vf * units::vF};
    p.validate();
    return p;
}

void GrapheneParams::validate() const
{
    if (!(mu_c > 0.0))
        throw InvalidInput("graphene chemical potential must be positive");
    if (!(tau > 0.0))
        throw InvalidInput("graphene scattering time must be positive");
    if (!(std::abs(v_d) < units::vF))
        throw InvalidInput("drift velocity magnitude must be below the Fermi velocity");
}

double sigma_min() { return units::pi * units::e * units::e / (2.0 * units::h); }

cplx kubo_conductivity(double omega, const GrapheneParams& p)
{
    using namespace units;
    const double hw = hbar * omega;
    const double two_mu = 2.0 * p.mu_c;
    check_interband_singularity(hw, two_mu);

    const cplx i(0.0, 1.0);
    const cplx intraband = i * e * e * p.mu_c / (pi * hbar * hbar * (omega + i / p.tau));
    const double interband_scale = e * e / (4.0 * hbar);
    const cplx interband =
        interband_scale * (heaviside(hw - two_mu) + i / pi * std::log(std::abs((hw - two_mu) / (hw + two_mu))));
    return intraband + interband;
}

cplx kubo_conductivity(cplx omega, const GrapheneParams& p)
{
    using namespace units;
    const cplx hw = hbar * omega;
    const double two_mu = 2.0 * p.mu_c;
    check_interband_singularity(hw.real(), two_mu);

    const cplx i(0.0, 1.0);
    const cplx intraband = i * e * e * p.mu_c / (pi * hbar * hbar * (omega + i / p.tau));
    const double interband_scale = e * e / (4.0 * hbar);
    const cplx interband =
        interband_scale * (heaviside(hw.real() - two_mu) + i / pi * std::log(std::abs((hw - two_mu) / (hw + two_mu))));
    return intraband + interband;
}

cplx local_conductivity(double omega, const GrapheneParams& p)
{
    if (!(omega > 0.0))
        throw InvalidInput("local conductivity requires omega > 0");
    return kubo_conductivity(omega, p);
}

cplx doppler_conductivity(double omega, double q_x, const GrapheneParams& p)
{
    if (!(omega > 0.0))
        throw InvalidInput("doppler conductivity requires omega > 0");
    const double shift = q_x * p.v_d;
    if (shift == 0.0)
        return local_conductivity(omega, p);
    const double shifted = omega - shift;
    if (std::abs(shifted) < kDopplerFloor * omega)
        throw DopplerSingularity("Doppler-shifted frequency omega - q_x v_d vanishes");
    return (omega / shifted) * kubo_conductivity(shifted, p);
}

cplx doppler_conductivity(double omega, cplx q_x, const GrapheneParams& p)
{
    if (q_x.imag() == 0.0)
        return doppler_conductivity(omega, q_x.real(), p);
    if (!(omega > 0.0))
        throw InvalidInput("doppler conductivity requires omega > 0");
    const cplx shifted = omega - q_x * p.v_d;
    if (std::abs(shifted) < kDopplerFloor * omega)
        throw DopplerSingularity("Doppler-shifted frequency omega - q_x v_d vanishes");
    return (omega / shifted) * kubo_conductivity(shifted, p);
}

bool supports_tm(double omega, double q_x, const GrapheneParams& p)
{
    return doppler_conductivity(omega, q_x, p).imag() > 0.0;
}

} // namespace graphent
