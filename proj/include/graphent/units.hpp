#pragma once

#include <numbers>

namespace graphent::units {

// CODATA-2018. SI throughout the library.
inline constexpr double pi = std::numbers::pi;
inline constexpr double c = 299792458.0;             // m/s
inline constexpr double hbar = 1.054571817e-34;      // J s
inline constexpr double h = 2.0 * pi * hbar;         // J s
inline constexpr double e = 1.602176634e-19;         // C
inline constexpr double eps0 = 8.8541878128e-12;     // F/m
inline constexpr double vF = c / 300.0;              // graphene Fermi velocity convention

/// Angular frequency in rad/s. Construction enforces omega > 0.
class Frequency {
public:
    explicit Frequency(double omega);
    static Frequency from_thz(double f_thz);

    double omega() const noexcept { return omega_; }
    double thz() const noexcept;

private:
    double omega_;
};

double thz_to_omega(double f_thz);
double omega_to_thz(double omega);
double ev_to_joule(double energy_ev);
double joule_to_ev(double energy_j);
double ps_to_s(double t_ps);

/// Free-space wavelength c/f in metres.
double vacuum_wavelength(double f_thz);

} // namespace graphent::units
