#include "graphent/pipeline.hpp"

#include "graphent/entanglement.hpp"
#include "graphent/errors.hpp"
#include "graphent/parallel.hpp"
#include "graphent/units.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace graphent {
namespace {

constexpr double kDeg = units::pi / 180.0;

const std::vector<std::string> kCouplingColumns = {"gamma12_over_gamma11", "gamma21_over_gamma11",
                                                   "g12_over_gamma11", "g21_over_gamma11"};

std::vector<std::string> columns_with(const std::string& first, std::initializer_list<std::string> tail)
{
    std::vector<std::string> cols = {first};
    cols.insert(cols.end(), kCouplingColumns.begin(), kCouplingColumns.end());
    cols.insert(cols.end(), tail.begin(), tail.end());
    return cols;
}

void append_couplings(std::vector<double>& row, const CouplingMatrix& m)
{
    row.push_back(m.gamma(0, 1));
    row.push_back(m.gamma(1, 0));
    row.push_back(m.g(0, 1));
    row.push_back(m.g(1, 0));
}

double concurrence_at(const Liouvillian& L, const DensityMatrix& rho0, double t)
{
    return concurrence(evolve_to(rho0, L, t));
}

struct Context {
    double omega;
    double lambda;
    LayeredGreens greens;
};

Context make_context(const ExperimentSpec& spec)
{
    const double omega = units::thz_to_omega(spec.frequency_thz);
    const double lambda = normalization_wavelength(omega, spec.env, spec.dispersion);
    return {omega, lambda, LayeredGreens(omega, spec.env, spec.quadrature)};
}

std::vector<double> default_angle_grid()
{
    std::vector<double> g;
    for (int k = 0; k <= 18; ++k)
        g.push_back(10.0 * k);
    return g;
}

// Receiver angle for the distance/transient/drive experiments.
double resolve_theta_deg(const ExperimentSpec& spec, nlohmann::json& meta)
{
    if (spec.theta_deg) {
        meta["theta_source"] = "user";
        meta["theta_deg"] = *spec.theta_deg;
        return *spec.theta_deg;
    }
    ExperimentSpec angle = spec;
    angle.grid = default_angle_grid();
    angle.omega1 = angle.omega2 = 0.0;
    const SweepResult r = sweep_angle(angle);
    const auto thetas = r.column_values("theta_deg");
    const auto cs = r.column_values("concurrence_max");
    const auto best = std::max_element(cs.begin(), cs.end()) - cs.begin();
    meta["theta_source"] = "argmax_of_angle_sweep";
    meta["theta_deg"] = thetas[static_cast<std::size_t>(best)];
    return thetas[static_cast<std::size_t>(best)];
}

std::string format_number(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

} // namespace

PeakConcurrence max_concurrence(const Liouvillian& L, const DensityMatrix& rho0, const TimeSearch& search)
{
    if (!(search.horizon > 0.0) || search.grid_points < 2)
        throw InvalidInput("time search needs a positive horizon and at least two grid points");
    const int n = search.grid_points;
    const double dt = search.horizon / n;
    const Liouvillian step = propagator(L, dt);

    StateVector16 v = vectorize(rho0);
    int best = 0;
    double best_c = concurrence(rho0);
    for (int k = 1; k <= n; ++k) {
        v = step * v;
        const double c = concurrence(unvectorize(v));
        if (c > best_c) {
            best_c = c;
            best = k;
        }
    }
    if (best_c == 0.0)
        return {0.0, 0.0};

    // Golden-section refinement on the bracketing grid cells.
    double a = std::max(0, best - 1) * dt;
    double b = std::min(n, best + 1) * dt;
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - ratio * (b - a);
    double x2 = a + ratio * (b - a);
    double f1 = concurrence_at(L, rho0, x1);
    double f2 = concurrence_at(L, rho0, x2);
    while (b - a > search.rel_tol * std::max(0.5 * (a + b), dt)) {
        if (f1 >= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - ratio * (b - a);
            f1 = concurrence_at(L, rho0, x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + ratio * (b - a);
            f2 = concurrence_at(L, rho0, x2);
        }
    }
    PeakConcurrence peak{best * dt, best_c};
    const double tm = 0.5 * (a + b);
    const double cm = concurrence_at(L, rho0, tm);
    if (cm > peak.value)
        peak = {tm, cm};
    return peak;
}

SweepKind parse_sweep_kind(const std::string& text)
{
    if (text == "angle")
        return SweepKind::angle;
    if (text == "distance")
        return SweepKind::distance;
    if (text == "transient")
        return SweepKind::transient;
    if (text == "drive_scan")
        return SweepKind::drive_scan;
    if (text == "routing")
        return SweepKind::routing;
    throw InvalidInput("unknown sweep kind '" + text + "' (angle, distance, transient, drive_scan, routing)");
}

std::string to_string(SweepKind kind)
{
    switch (kind) {
    case SweepKind::angle:
        return "angle";
    case SweepKind::distance:
        return "distance";
    case SweepKind::transient:
        return "transient";
    case SweepKind::drive_scan:
        return "drive_scan";
    case SweepKind::routing:
        return "routing";
    }
    return "angle";
}

std::size_t SweepResult::column(const std::string& name) const
{
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end())
        throw InvalidInput("sweep result has no column '" + name + "'");
    return static_cast<std::size_t>(it - columns.begin());
}

std::vector<double> SweepResult::column_values(const std::string& name) const
{
    const std::size_t c = column(name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows)
        out.push_back(r[c]);
    return out;
}

std::string SweepResult::to_csv() const
{
    std::ostringstream os;
    for (std::size_t c = 0; c < columns.size(); ++c)
        os << (c ? "," : "") << columns[c];
    os << '\n';
    for (const auto& r : rows) {
        for (std::size_t c = 0; c < r.size(); ++c)
            os << (c ? "," : "") << format_number(r[c]);
        os << '\n';
    }
    return os.str();
}

double normalization_wavelength(double omega, const Environment& env, const DispersionOptions& opts)
{
    if (!env.has_sheet())
        return 2.0 * units::pi / env.k2(omega);
    return spp_wavelength(omega, env, opts);
}

nlohmann::json describe(const ExperimentSpec& spec)
{
    const double omega = units::thz_to_omega(spec.frequency_thz);
    const double lambda = normalization_wavelength(omega, spec.env, spec.dispersion);
    nlohmann::json j;
    j["case"] = !spec.env.has_sheet() ? "homogeneous"
                : spec.env.sheet->v_d == 0.0 ? "graphene_reciprocal"
                                             : "graphene_nonreciprocal";
    j["frequency_thz"] = spec.frequency_thz;
    j["omega_rad_per_s"] = omega;
    j["environment"] = {{"eps_r1", spec.env.eps_r1}, {"eps_r2", spec.env.eps_r2}};
    if (spec.env.has_sheet()) {
        const auto& s = *spec.env.sheet;
        j["graphene"] = {{"mu_c_ev", units::joule_to_ev(s.mu_c)},
                         {"tau_ps", s.tau * 1e12},
                         {"vd_over_vf", s.v_d / units::vF},
                         {"v_d_m_per_s", s.v_d}};
        j["wavelength_direction_deg"] = drift_direction(spec.env) / kDeg;
    } else {
        j["homogeneous_eps_r"] = spec.env.eps_r2;
    }
    j["normalization_wavelength_m"] = lambda;
    j["height_over_lambda"] = spec.height_over_lambda;
    j["height_m"] = spec.height_over_lambda * lambda;
    j["rho_over_lambda"] = spec.rho_over_lambda;
    j["rho_m"] = spec.rho_over_lambda * lambda;
    j["omega1_over_gamma11"] = spec.omega1;
    j["omega2_over_gamma11"] = spec.omega2;
    j["time_search"] = {{"horizon_inv_gamma11", spec.time.horizon},
                        {"grid_points", spec.time.grid_points},
                        {"rel_tol", spec.time.rel_tol}};
    j["quadrature"] = {{"rel_tol", spec.quadrature.rel_tol},
                       {"phi_rel_tol", spec.quadrature.phi_rel_tol},
                       {"phi_min_points", spec.quadrature.phi_min_points},
                       {"phi_max_points", spec.quadrature.phi_max_points},
                       {"max_intervals", spec.quadrature.max_intervals},
                       {"tail_tol", spec.quadrature.tail_tol}};
    j["doppler_arg"] = to_string(spec.dispersion.doppler_arg);
    return j;
}

CouplingMatrix pair_couplings(const LayeredGreens& greens, double lambda, const ExperimentSpec& spec,
                              double rho_over_lambda, double theta_rad)
{
    const auto geom =
        EmitterGeometry::planar(spec.height_over_lambda * lambda, rho_over_lambda * lambda, theta_rad);
    return greens.couplings(geom, DipoleScale::normalized());
}

SweepResult sweep_angle(const ExperimentSpec& spec)
{
    if (spec.grid.empty())
        throw InvalidInput("angle sweep needs a non-empty theta grid");
    for (double th : spec.grid)
        if (th < 0.0 || th > 180.0)
            throw InvalidInput("angle sweep theta must lie in [0, 180] degrees");
    const Context ctx = make_context(spec);
    SweepResult r;
    r.metadata = describe(spec);
    r.metadata["sweep"] = "angle";
    r.columns = columns_with("theta_deg", {"t_peak_inv_gamma11", "concurrence_max"});
    r.rows.resize(spec.grid.size());
    ctx.greens.self_imag(spec.height_over_lambda * ctx.lambda);
    parallel_for(spec.grid.size(), spec.threads, [&](std::size_t k) {
        const double th = spec.grid[k];
        const auto m = pair_couplings(ctx.greens, ctx.lambda, spec, spec.rho_over_lambda, th * kDeg);
        const auto L = build_liouvillian(DynamicsParams::from_couplings(m, spec.omega1, spec.omega2));
        const auto peak = max_concurrence(L, initial_state(), spec.time);
        std::vector<double> row = {th};
        append_couplings(row, m);
        row.push_back(peak.t);
        row.push_back(peak.value);
        r.rows[k] = std::move(row);
    });
    return r;
}

SweepResult sweep_distance(const ExperimentSpec& spec)
{
    if (spec.grid.empty())
        throw InvalidInput("distance sweep needs a non-empty rho grid");
    for (double x : spec.grid)
        if (!(x > 0.0))
            throw InvalidInput("distance sweep rho/lambda values must be positive");
    SweepResult r;
    r.metadata = describe(spec);
    r.metadata["sweep"] = "distance";
    const double theta = resolve_theta_deg(spec, r.metadata);
    const Context ctx = make_context(spec);
    r.columns = columns_with("rho_over_lambda", {"t_peak_inv_gamma11", "concurrence_max"});
    r.rows.resize(spec.grid.size());
    ctx.greens.self_imag(spec.height_over_lambda * ctx.lambda);
    parallel_for(spec.grid.size(), spec.threads, [&](std::size_t k) {
        const auto m = pair_couplings(ctx.greens, ctx.lambda, spec, spec.grid[k], theta * kDeg);
        const auto L = build_liouvillian(DynamicsParams::from_couplings(m, spec.omega1, spec.omega2));
        const auto peak = max_concurrence(L, initial_state(), spec.time);
        std::vector<double> row = {spec.grid[k]};
        append_couplings(row, m);
        row.push_back(peak.t);
        row.push_back(peak.value);
        r.rows[k] = std::move(row);
    });
    return r;
}

namespace {

std::vector<double> transient_grid(const ExperimentSpec& spec)
{
    if (!spec.grid.empty())
        return spec.grid;
    std::vector<double> t;
    for (int k = 0; k <= spec.time.grid_points; ++k)
        t.push_back(spec.time.horizon * k / spec.time.grid_points);
    return t;
}

} // namespace

Trajectory transient_trajectory(const ExperimentSpec& spec)
{
    Trajectory tr;
    run_transient(spec, &tr);
    return tr;
}

SweepResult run_transient(const ExperimentSpec& spec, Trajectory* trajectory)
{
    if (spec.omega1 != 0.0 || spec.omega2 != 0.0)
        throw InvalidInput("transient runs require zero drive (Omega_1 = Omega_2 = 0)");
    SweepResult r;
    r.metadata = describe(spec);
    r.metadata["sweep"] = "transient";
    const double theta = resolve_theta_deg(spec, r.metadata);
    const Context ctx = make_context(spec);
    const auto m = pair_couplings(ctx.greens, ctx.lambda, spec, spec.rho_over_lambda, theta * kDeg);
    const auto L = build_liouvillian(DynamicsParams::from_couplings(m));
    Trajectory tr;
    tr.t = transient_grid(spec);
    tr.states = evolve(initial_state(), L, tr.t);
    r.columns = columns_with("t_inv_gamma11", {"concurrence"});
    for (std::size_t k = 0; k < tr.t.size(); ++k) {
        tr.concurrence.push_back(concurrence(tr.states[k]));
        std::vector<double> row = {tr.t[k]};
        append_couplings(row, m);
        row.push_back(tr.concurrence[k]);
        r.rows.push_back(std::move(row));
    }
    if (trajectory)
        *trajectory = std::move(tr);
    return r;
}

SweepResult drive_scan(const ExperimentSpec& spec)
{
    if (spec.omega2 != 0.0)
        throw InvalidInput("drive scan requires Omega_2 = 0");
    if (spec.grid.empty())
        throw InvalidInput("drive scan needs a non-empty Omega_1 grid");
    for (double o : spec.grid)
        if (!(o > 0.0))
            throw InvalidInput("drive scan Omega_1 values must be positive");
    SweepResult r;
    r.metadata = describe(spec);
    r.metadata["sweep"] = "drive_scan";
    const double theta = resolve_theta_deg(spec, r.metadata);
    const Context ctx = make_context(spec);
    const auto m = pair_couplings(ctx.greens, ctx.lambda, spec, spec.rho_over_lambda, theta * kDeg);
    r.columns = columns_with("omega1_over_gamma11", {"concurrence_ss", "steady_state_crosscheck"});
    r.rows.resize(spec.grid.size());
    parallel_for(spec.grid.size(), spec.threads, [&](std::size_t k) {
        const auto L = build_liouvillian(DynamicsParams::from_couplings(m, spec.grid[k], 0.0));
        const auto ss = steady_state(L);
        std::vector<double> row = {spec.grid[k]};
        append_couplings(row, m);
        row.push_back(concurrence(ss.rho));
        row.push_back(ss.crosscheck_deviation);
        r.rows[k] = std::move(row);
    });
    const auto cs = r.column_values("concurrence_ss");
    const auto best = static_cast<std::size_t>(std::max_element(cs.begin(), cs.end()) - cs.begin());
    r.metadata["argmax_omega1_over_gamma11"] = spec.grid[best];
    r.metadata["max_concurrence_ss"] = cs[best];
    return r;
}

SweepResult polarity_routing(const ExperimentSpec& spec)
{
    SweepResult r;
    r.metadata = describe(spec);
    r.metadata["sweep"] = "routing";
    const Context ctx = make_context(spec);
    r.columns = columns_with("theta_deg", {"t_peak_inv_gamma11", "concurrence_max"});
    const std::vector<double> thetas = {180.0, 0.0};  // QB2, QB3
    r.rows.resize(2);
    ctx.greens.self_imag(spec.height_over_lambda * ctx.lambda);
    parallel_for(thetas.size(), spec.threads, [&](std::size_t k) {
        const auto m = pair_couplings(ctx.greens, ctx.lambda, spec, spec.rho_over_lambda, thetas[k] * kDeg);
        const auto L = build_liouvillian(DynamicsParams::from_couplings(m, spec.omega1, spec.omega2));
        const auto peak = max_concurrence(L, initial_state(), spec.time);
        std::vector<double> row = {thetas[k]};
        append_couplings(row, m);
        row.push_back(peak.t);
        row.push_back(peak.value);
        r.rows[k] = std::move(row);
    });
    const double c12 = r.rows[0].back();
    const double c13 = r.rows[1].back();
    r.metadata["concurrence_qb1_qb2"] = c12;
    r.metadata["concurrence_qb1_qb3"] = c13;
    if (c13 > 0.0)
        r.metadata["contrast_qb2_over_qb3"] = c12 / c13;
    else
        r.metadata["contrast_qb2_over_qb3"] = nullptr;  // unbounded
    return r;
}

SweepResult run_sweep(SweepKind kind, const ExperimentSpec& spec)
{
    switch (kind) {
    case SweepKind::angle:
        return sweep_angle(spec);
    case SweepKind::distance:
        return sweep_distance(spec);
    case SweepKind::transient:
        return run_transient(spec);
    case SweepKind::drive_scan:
        return drive_scan(spec);
    case SweepKind::routing:
        return polarity_routing(spec);
    }
    throw InvalidInput("unknown sweep kind");
}

} // namespace graphent
