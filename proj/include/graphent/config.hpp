#pragma once

#include "graphent/errors.hpp"
#include "graphent/pipeline.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace graphent::config {

/// Invalid configuration document; `key_path()` names the offending entry.
class ConfigError : public Error {
public:
    ConfigError(const std::string& key_path, const std::string& what)
        : Error("config_error", key_path + ": " + what), key_path_(key_path) {}
    const std::string& key_path() const noexcept { return key_path_; }

private:
    std::string key_path_;
};

struct GrapheneSection {
    double mu_c_ev = 0.1;
    double tau_ps = 0.35;
    double vd_over_vf = 0.0;
};

struct ConductivitySection {
    double f_min_thz = 1.0;
    double f_max_thz = 30.0;
    int n_f = 30;
    double qx_min_per_m = -1e8;
    double qx_max_per_m = 1e8;
    int n_qx = 41;
};

struct DispersionSection {
    double f_min_thz = 5.0;
    double f_max_thz = 30.0;
    int n_f = 26;
    std::vector<double> phi_deg = {0.0, 180.0};
    int efc_points = 72;
};

struct FieldmapSection {
    double source_height_over_lambda = 1.0 / 3.0;
    double observation_height_over_lambda = 1.0 / 3.0;
    double x_min_over_lambda = -2.0;
    double x_max_over_lambda = 2.0;
    int nx = 40;
    double y_min_over_lambda = -2.0;
    double y_max_over_lambda = 2.0;
    int ny = 40;
};

struct EntangleSection {
    std::string sweep = "angle";
    std::optional<std::vector<double>> grid;  // sweep default if absent
    double height_over_lambda = 1.0 / 3.0;
    double rho_over_lambda = 2.0;
    std::optional<double> theta_deg;
    double omega1_over_gamma11 = 0.0;
    double omega2_over_gamma11 = 0.0;
    double time_horizon_inv_gamma11 = 20.0;
    int time_grid_points = 400;
    double time_rel_tol = 1e-4;
    double routing_contrast_factor = 5.0;
};

/// Fully resolved run configuration. Every field has a default, so a document
/// only needs the entries it changes.
struct RunConfig {
    double frequency_thz = 15.0;
    double eps_r1 = 1.0;
    double eps_r2 = 1.0;
    std::optional<GrapheneSection> graphene;
    DispersionOptions solver;
    QuadratureOptions quadrature;
    ConductivitySection conductivity;
    DispersionSection dispersion;
    FieldmapSection fieldmap;
    EntangleSection entangle;

    Environment environment() const;
    const GrapheneSection& require_graphene(const std::string& why) const;
    /// Sweep grid, falling back to the default for the sweep kind.
    std::vector<double> entangle_grid() const;
    ExperimentSpec experiment(int threads) const;
};

/// Default grids per sweep kind.
std::vector<double> default_grid(SweepKind kind);

/// Parses a config document. A `run_meta.json` from an earlier run is accepted as
/// well: its `resolved_config` block is used. Unknown keys are rejected.
RunConfig parse(const nlohmann::json& doc);
RunConfig load(const std::string& path);

/// Resolved document with every default filled in; parse(to_json(c)) == c.
nlohmann::json to_json(const RunConfig& cfg);

} // namespace graphent::config
