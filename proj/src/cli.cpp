#include "graphent/cli.hpp"

#include "graphent/parallel.hpp"
#include "graphent/report.hpp"
#include "graphent/units.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <sstream>

#ifndef GRAPHENT_GIT_DESCRIBE
#define GRAPHENT_GIT_DESCRIBE "unknown"
#endif

namespace graphent::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::vector<double> linspace(double a, double b, int n)
{
    std::vector<double> v;
    for (int k = 0; k < n; ++k)
        v.push_back(n == 1 ? a : a + (b - a) * k / (n - 1));
    return v;
}

class Writer {
public:
    explicit Writer(fs::path dir) : dir_(std::move(dir)) {}

    void operator()(const std::string& name, const std::string& content)
    {
        report::write_file(dir_ / name, content);
        names_.push_back(name);
    }

    const std::vector<std::string>& names() const { return names_; }

private:
    fs::path dir_;
    std::vector<std::string> names_;
};

std::string deg_label(double phi_deg)
{
    std::ostringstream os;
    os << phi_deg;
    std::string s = os.str();
    for (auto& ch : s)
        if (ch == '.' || ch == '-')
            ch = ch == '.' ? 'p' : 'm';
    return s;
}

void run_conductivity(const config::RunConfig& cfg, Writer& write)
{
    const auto& g = cfg.require_graphene("conductivity");
    const auto sheet = GrapheneParams::from_config_units(g.mu_c_ev, g.tau_ps, g.vd_over_vf);
    const auto& c = cfg.conductivity;
    report::ConductivityGrid grid{linspace(c.f_min_thz, c.f_max_thz, c.n_f),
                                  linspace(c.qx_min_per_m, c.qx_max_per_m, c.n_qx)};
    write("conductivity.csv", report::conductivity_csv(grid, sheet));

    // Slice at the configured frequency: Re and Im of sigma_d / sigma_min versus q_x.
    const double omega = units::thz_to_omega(cfg.frequency_thz);
    report::Series re, im;
    for (double qx : grid.qx_per_m) {
        const cplx s = doppler_conductivity(omega, qx, sheet) / sigma_min();
        re.x.push_back(qx);
        re.y.push_back(s.real());
        im.x.push_back(qx);
        im.y.push_back(s.imag());
    }
    const std::string at = " at " + report::fmt(cfg.frequency_thz) + " THz";
    write("conductivity_re.svg", report::svg_line_plot(re, "Re sigma_d / sigma_min" + at, "q_x (1/m)", "Re"));
    write("conductivity_im.svg", report::svg_line_plot(im, "Im sigma_d / sigma_min" + at, "q_x (1/m)", "Im"));
}

void run_dispersion(const config::RunConfig& cfg, Writer& write, int threads)
{
    cfg.require_graphene("dispersion");
    const Environment env = cfg.environment();
    const auto& d = cfg.dispersion;
    const double w_min = units::thz_to_omega(d.f_min_thz);
    const double w_max = units::thz_to_omega(d.f_max_thz);

    std::vector<std::vector<DispersionSample>> curves(d.phi_deg.size());
    parallel_for(d.phi_deg.size(), threads, [&](std::size_t k) {
        curves[k] = dispersion_curve(d.phi_deg[k] * units::pi / 180.0, env, w_min, w_max, d.n_f, cfg.solver);
    });
    std::vector<DispersionSample> all;
    for (const auto& c : curves)
        all.insert(all.end(), c.begin(), c.end());
    write("dispersion.csv", report::dispersion_csv(all));

    for (std::size_t k = 0; k < curves.size(); ++k) {
        report::Series s;
        for (const auto& p : curves[k]) {
            s.x.push_back(units::omega_to_thz(p.omega));
            s.y.push_back(p.status == RootStatus::ok ? p.q.real() : std::nan(""));
        }
        write("dispersion_phi" + deg_label(d.phi_deg[k]) + ".svg",
              report::svg_line_plot(s, "Re q at phi = " + report::fmt(d.phi_deg[k]) + " deg", "f (THz)",
                                    "Re q (1/m)"));
    }

    if (d.efc_points > 0) {
        const auto contour = efc(units::thz_to_omega(cfg.frequency_thz), env, d.efc_points, cfg.solver);
        write("efc.csv", report::dispersion_csv(contour.samples));
        report::Series s;
        for (const auto& p : contour.samples) {
            const bool ok = p.status == RootStatus::ok;
            s.x.push_back(ok ? p.q.real() * std::cos(p.phi) : std::nan(""));
            s.y.push_back(ok ? p.q.real() * std::sin(p.phi) : std::nan(""));
        }
        write("efc.svg", report::svg_line_plot(s, "Equi-frequency contour at " + report::fmt(cfg.frequency_thz) +
                                                      " THz",
                                               "Re q_x (1/m)", "Re q_y (1/m)"));
    }
}

void run_fieldmap(const config::RunConfig& cfg, Writer& write, int threads, json& extra)
{
    const Environment env = cfg.environment();
    const double omega = units::thz_to_omega(cfg.frequency_thz);
    const double lambda = normalization_wavelength(omega, env, cfg.solver);
    const auto& f = cfg.fieldmap;
    const Point3 source{0.0, 0.0, f.source_height_over_lambda * lambda};
    GridSpec grid;
    grid.x_min = f.x_min_over_lambda * lambda;
    grid.x_max = f.x_max_over_lambda * lambda;
    grid.nx = f.nx;
    grid.y_min = f.y_min_over_lambda * lambda;
    grid.y_max = f.y_max_over_lambda * lambda;
    grid.ny = f.ny;
    grid.z = f.observation_height_over_lambda * lambda;
    const LayeredGreens greens(omega, env, cfg.quadrature);
    const FieldMap map = greens.field_map(source, grid, threads);
    write("fieldmap.csv", report::field_map_csv(map));
    write("fieldmap.svg", report::svg_heatmap(map, "|E_z| at " + report::fmt(cfg.frequency_thz) + " THz"));
    extra["normalization_wavelength_m"] = lambda;
}

void run_entangle(const config::RunConfig& cfg, Writer& write, int threads, json& extra)
{
    const SweepKind kind = parse_sweep_kind(cfg.entangle.sweep);
    const ExperimentSpec spec = cfg.experiment(threads);
    const std::string stem = "entangle_" + to_string(kind);

    SweepResult r;
    if (kind == SweepKind::transient) {
        Trajectory tr;
        r = run_transient(spec, &tr);
        write("trajectory.csv", report::trajectory_csv(tr));
    } else {
        r = run_sweep(kind, spec);
    }
    if (kind == SweepKind::routing) {
        const auto& contrast = r.metadata["contrast_qb2_over_qb3"];
        const double factor = cfg.entangle.routing_contrast_factor;
        r.metadata["routing_contrast_factor"] = factor;
        const bool drift_negative = cfg.graphene && cfg.graphene->vd_over_vf < 0.0;
        bool routed = false;
        if (contrast.is_null())
            routed = drift_negative;
        else
            routed = drift_negative ? contrast.get<double>() > factor : contrast.get<double>() < 1.0 / factor;
        r.metadata["routed_to_drift_side"] = routed;
    }

    write(stem + ".csv", r.to_csv());
    write(stem + "_meta.json", r.metadata.dump(2) + "\n");

    const std::string y = kind == SweepKind::transient    ? "concurrence"
                          : kind == SweepKind::drive_scan ? "concurrence_ss"
                                                          : "concurrence_max";
    report::Series s{r.column_values(r.columns.front()), r.column_values(y)};
    write(stem + ".svg", report::svg_line_plot(s, "Concurrence, " + to_string(kind) + " sweep", r.columns.front(), y));
    extra["sweep_metadata"] = r.metadata;
}

json tolerances(const config::RunConfig& cfg)
{
    const auto full = config::to_json(cfg);
    return {{"quadrature", full["quadrature"]},
            {"solver", full["solver"]},
            {"time_search",
             {{"horizon_inv_gamma11", cfg.entangle.time_horizon_inv_gamma11},
              {"grid_points", cfg.entangle.time_grid_points},
              {"rel_tol", cfg.entangle.time_rel_tol}}}};
}

void write_error(std::ostream& err, const std::string& kind, const std::string& message,
                 const std::string& key_path = {})
{
    json j = {{"error", {{"kind", kind}, {"message", message}}}};
    if (!key_path.empty())
        j["error"]["key_path"] = key_path;
    err << j.dump() << std::endl;
}

} // namespace

Command parse_command(const std::string& text)
{
    if (text == "conductivity")
        return Command::conductivity;
    if (text == "dispersion")
        return Command::dispersion;
    if (text == "fieldmap")
        return Command::fieldmap;
    if (text == "entangle")
        return Command::entangle;
    throw InvalidInput("unknown subcommand '" + text + "'");
}

std::string to_string(Command cmd)
{
    switch (cmd) {
    case Command::conductivity:
        return "conductivity";
    case Command::dispersion:
        return "dispersion";
    case Command::fieldmap:
        return "fieldmap";
    case Command::entangle:
        return "entangle";
    }
    return "entangle";
}

void apply(config::RunConfig& cfg, const Overrides& o)
{
    if (o.frequency_thz) {
        if (!(*o.frequency_thz > 0.0) || !std::isfinite(*o.frequency_thz))
            throw config::ConfigError("--frequency-thz", "must be positive");
        cfg.frequency_thz = *o.frequency_thz;
    }
    if (o.vd_over_vf) {
        if (!cfg.graphene)
            throw config::ConfigError("--vd-over-vf", "config has no graphene section to apply the drift to");
        if (!(std::abs(*o.vd_over_vf) < 1.0))
            throw config::ConfigError("--vd-over-vf", "must satisfy |v_d| < vF");
        cfg.graphene->vd_over_vf = *o.vd_over_vf;
    }
    if (o.doppler_arg) {
        try {
            cfg.solver.doppler_arg = parse_doppler_arg(*o.doppler_arg);
        } catch (const InvalidInput& e) {
            throw config::ConfigError("--doppler-arg", e.what());
        }
    }
}

RunReport execute(Command cmd, const config::RunConfig& cfg, const fs::path& out, int threads)
{
    if (threads < 1)
        throw InvalidInput("--threads must be at least 1");
    const auto start = std::chrono::steady_clock::now();
    Writer write(out);
    json extra = json::object();
    switch (cmd) {
    case Command::conductivity:
        run_conductivity(cfg, write);
        break;
    case Command::dispersion:
        run_dispersion(cfg, write, threads);
        break;
    case Command::fieldmap:
        run_fieldmap(cfg, write, threads, extra);
        break;
    case Command::entangle:
        run_entangle(cfg, write, threads, extra);
        break;
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    RunReport rep;
    rep.outputs = write.names();
    rep.outputs.push_back("run_meta.json");
    rep.run_meta = {{"subcommand", to_string(cmd)},
                    {"git_describe", GRAPHENT_GIT_DESCRIBE},
                    {"wall_time_s", wall},
                    {"threads", threads},
                    {"resolved_config", config::to_json(cfg)},
                    {"tolerances", tolerances(cfg)},
                    {"outputs", rep.outputs}};
    for (auto it = extra.begin(); it != extra.end(); ++it)
        rep.run_meta[it.key()] = it.value();
    report::write_file(out / "run_meta.json", rep.run_meta.dump(2) + "\n");
    return rep;
}

int exit_code_for(const std::string& kind)
{
    return (kind == "invalid_input" || kind == "config_error" || kind == "usage") ? 2 : 1;
}

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Graphene-plasmon mediated two-qubit entanglement simulator", "graphent"};
    app.require_subcommand(1);

    struct Flags {
        std::string config;
        std::string out = "out";
        int threads = default_threads();
        Overrides overrides;
    };
    Flags flags;
    for (const char* name : {"conductivity", "dispersion", "fieldmap", "entangle"}) {
        auto* sub = app.add_subcommand(name, std::string("Run the ") + name + " workflow");
        sub->add_option("--config", flags.config, "JSON config (or an earlier run_meta.json)")->required();
        sub->add_option("--out", flags.out, "Output directory")->capture_default_str();
        sub->add_option("--threads", flags.threads, "Worker threads")->capture_default_str();
        sub->add_option("--vd-over-vf", flags.overrides.vd_over_vf, "Drift velocity as a fraction of vF");
        sub->add_option("--frequency-thz", flags.overrides.frequency_thz, "Operating frequency in THz");
        sub->add_option("--doppler-arg", flags.overrides.doppler_arg, "Doppler wavenumber: re or complex");
    }

    std::vector<std::string> storage = {"graphent"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : storage)
        argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        write_error(err, "usage", e.what());
        return exit_code_for("usage");
    }

    try {
        const Command cmd = parse_command(app.get_subcommands().front()->get_name());
        config::RunConfig cfg = config::load(flags.config);
        apply(cfg, flags.overrides);
        const RunReport rep = execute(cmd, cfg, flags.out, flags.threads);
        for (const auto& name : rep.outputs)
            out << (fs::path(flags.out) / name).string() << '\n';
        return 0;
    } catch (const config::ConfigError& e) {
        write_error(err, e.kind(), e.what(), e.key_path());
        return exit_code_for(e.kind());
    } catch (const Error& e) {
        write_error(err, e.kind(), e.what());
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        write_error(err, "internal", e.what());
        return 1;
    }
}

} // namespace graphent::cli
