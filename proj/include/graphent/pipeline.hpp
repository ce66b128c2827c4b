#pragma once

#include "graphent/dispersion.hpp"
#include "graphent/dynamics.hpp"
#include "graphent/greens.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace graphent {

/// Location of max_t C(t): uniform grid over [0, horizon] refined by golden section.
struct TimeSearch {
    double horizon = 20.0;      // units of 1/Gamma_11
    int grid_points = 400;
    double rel_tol = 1e-4;
};

struct PeakConcurrence {
    double t = 0.0;
    double value = 0.0;
};

PeakConcurrence max_concurrence(const Liouvillian& L, const DensityMatrix& rho0, const TimeSearch& search = {});

enum class SweepKind { angle, distance, transient, drive_scan, routing };
SweepKind parse_sweep_kind(const std::string& text);
std::string to_string(SweepKind kind);

/// Resolved description of one concurrence experiment. Lengths are given in units
/// of the case's own normalisation wavelength (free-space/host wavelength without a
/// sheet, plasmon wavelength along the drift with one).
struct ExperimentSpec {
    Environment env = Environment::homogeneous(1.0);
    double frequency_thz = 15.0;
    double height_over_lambda = 1.0 / 3.0;
    double rho_over_lambda = 2.0;
    std::optional<double> theta_deg;  // fixed receiver angle; argmax of the angle sweep if absent
    std::vector<double> grid;         // theta (deg), rho/lambda, t*Gamma_11 or Omega_1/Gamma_11
    double omega1 = 0.0;              // Rabi rates in units of Gamma_11
    double omega2 = 0.0;
    TimeSearch time;
    QuadratureOptions quadrature;
    DispersionOptions dispersion;
    int threads = 1;
};

/// Tabular sweep output with a deterministic JSON metadata block.
struct SweepResult {
    nlohmann::json metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    std::size_t column(const std::string& name) const;
    std::vector<double> column_values(const std::string& name) const;
    /// Header plus rows, 9 significant digits.
    std::string to_csv() const;
};

double normalization_wavelength(double omega, const Environment& env, const DispersionOptions& opts = {});

/// Resolved physical parameters of a spec (wavelength, absolute lengths, case label).
nlohmann::json describe(const ExperimentSpec& spec);

/// Couplings (units of Gamma_11) for QB1 at the origin and QB2 at angle theta.
CouplingMatrix pair_couplings(const LayeredGreens& greens, double lambda, const ExperimentSpec& spec,
                              double rho_over_lambda, double theta_rad);

SweepResult sweep_angle(const ExperimentSpec& spec);
SweepResult sweep_distance(const ExperimentSpec& spec);
SweepResult drive_scan(const ExperimentSpec& spec);

/// QB2 at theta = 180 deg and QB3 at theta = 0 deg, each paired with QB1 at the
/// origin in an independent two-qubit run. Metadata carries the contrast
/// C(QB1,QB2)/C(QB1,QB3).
SweepResult polarity_routing(const ExperimentSpec& spec);

SweepResult run_sweep(SweepKind kind, const ExperimentSpec& spec);

/// Transient trajectory at the resolved angle: the states behind run_transient.
struct Trajectory {
    std::vector<double> t;
    std::vector<DensityMatrix> states;
    std::vector<double> concurrence;
};
Trajectory transient_trajectory(const ExperimentSpec& spec);

/// C(t) table; optionally hands back the full trajectory it was built from.
SweepResult run_transient(const ExperimentSpec& spec, Trajectory* trajectory = nullptr);

} // namespace graphent
