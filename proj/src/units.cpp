#include "graphent/units.hpp"

#include "graphent/errors.hpp"

#include <cmath>
#include <string>

namespace graphent::units {

Frequency::Frequency(double omega) : omega_(omega)
{
    if (!(omega > 0.0) || !std::isfinite(omega))
        throw InvalidInput("angular frequency must be positive and finite, got " + std::to_string(omega));
}

Frequency Frequency::from_thz(double f_thz) { return Frequency(thz_to_omega(f_thz)); }

double Frequency::thz() const noexcept { return omega_to_thz(omega_); }

double thz_to_omega(double f_thz)
{
    if (!(f_thz > 0.0) || !std::isfinite(f_thz))
        throw InvalidInput("frequency must be positive, got " + std::to_string(f_thz) + " THz");
    return 2.0 * pi * f_thz * 1e12;
}

double omega_to_thz(double omega) { return omega / (2.0 * pi * 1e12); }

double ev_to_joule(double energy_ev) { return energy_ev * e; }

double joule_to_ev(double energy_j) { return energy_j / e; }

double ps_to_s(double t_ps) { return t_ps * 1e-12; }

double vacuum_wavelength(double f_thz)
{
    if (!(f_thz > 0.0))
        throw InvalidInput("frequency must be positive");
    return c / (f_thz * 1e12);
}

} // namespace graphent::units
