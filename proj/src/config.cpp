#include "graphent/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace graphent::config {
namespace {

using nlohmann::json;

std::string join(const std::string& path, const std::string& key)
{
    return path.empty() ? key : path + "." + key;
}

/// Reads one JSON object, remembering which keys were consumed so that the rest
/// can be reported as unknown.
class Reader {
public:
    Reader(const json& obj, std::string path) : obj_(obj), path_(std::move(path))
    {
        if (!obj_.is_object())
            throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
    }

    bool has(const std::string& key)
    {
        seen_.insert(key);
        return obj_.contains(key) && !obj_.at(key).is_null();
    }

    void number(const std::string& key, double& out)
    {
        if (!has(key))
            return;
        const json& v = obj_.at(key);
        if (!v.is_number())
            throw ConfigError(join(path_, key), "expected a number");
        out = v.get<double>();
        if (!std::isfinite(out))
            throw ConfigError(join(path_, key), "must be finite");
    }

    void optional_number(const std::string& key, std::optional<double>& out)
    {
        if (!has(key))
            return;
        double v = 0.0;
        number(key, v);
        out = v;
    }

    void integer(const std::string& key, int& out)
    {
        if (!has(key))
            return;
        const json& v = obj_.at(key);
        if (!v.is_number_integer())
            throw ConfigError(join(path_, key), "expected an integer");
        out = v.get<int>();
    }

    void string(const std::string& key, std::string& out)
    {
        if (!has(key))
            return;
        const json& v = obj_.at(key);
        if (!v.is_string())
            throw ConfigError(join(path_, key), "expected a string");
        out = v.get<std::string>();
    }

    void numbers(const std::string& key, std::vector<double>& out)
    {
        if (!has(key))
            return;
        const json& v = obj_.at(key);
        if (!v.is_array())
            throw ConfigError(join(path_, key), "expected an array of numbers");
        out.clear();
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number())
                throw ConfigError(join(path_, key) + "[" + std::to_string(i) + "]", "expected a number");
            out.push_back(v[i].get<double>());
        }
    }

    std::optional<Reader> object(const std::string& key)
    {
        if (!has(key))
            return std::nullopt;
        return Reader(obj_.at(key), join(path_, key));
    }

    std::string path(const std::string& key) const { return join(path_, key); }

    void finish() const
    {
        for (auto it = obj_.begin(); it != obj_.end(); ++it)
            if (!seen_.count(it.key()))
                throw ConfigError(join(path_, it.key()), "unknown key");
    }

private:
    const json& obj_;
    std::string path_;
    std::set<std::string> seen_;
};

void require(bool ok, const std::string& path, const std::string& what)
{
    if (!ok)
        throw ConfigError(path, what);
}

std::vector<double> linspace(double a, double b, int n)
{
    std::vector<double> v;
    for (int k = 0; k < n; ++k)
        v.push_back(n == 1 ? a : a + (b - a) * k / (n - 1));
    return v;
}

} // namespace

Environment RunConfig::environment() const
{
    if (!graphene)
        return Environment::homogeneous(eps_r2);
    return Environment::graphene(
        eps_r1, eps_r2, GrapheneParams::from_config_units(graphene->mu_c_ev, graphene->tau_ps, graphene->vd_over_vf));
}

const GrapheneSection& RunConfig::require_graphene(const std::string& why) const
{
    if (!graphene)
        throw ConfigError("graphene", "missing section (required by " + why + ")");
    return *graphene;
}

std::vector<double> default_grid(SweepKind kind)
{
    switch (kind) {
    case SweepKind::angle:
        return linspace(0.0, 180.0, 19);
    case SweepKind::distance:
        return {0.05, 0.1, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0, 5.0};
    case SweepKind::drive_scan: {
        std::vector<double> g;
        for (int k = 0; k < 15; ++k)
            g.push_back(0.05 * std::pow(100.0, k / 14.0));
        return g;
    }
    case SweepKind::transient:
    case SweepKind::routing:
        return {};
    }
    return {};
}

std::vector<double> RunConfig::entangle_grid() const
{
    return entangle.grid ? *entangle.grid : default_grid(parse_sweep_kind(entangle.sweep));
}

ExperimentSpec RunConfig::experiment(int threads) const
{
    ExperimentSpec s;
    s.env = environment();
    s.frequency_thz = frequency_thz;
    s.height_over_lambda = entangle.height_over_lambda;
    s.rho_over_lambda = entangle.rho_over_lambda;
    s.theta_deg = entangle.theta_deg;
    s.grid = entangle_grid();
    s.omega1 = entangle.omega1_over_gamma11;
    s.omega2 = entangle.omega2_over_gamma11;
    s.time = {entangle.time_horizon_inv_gamma11, entangle.time_grid_points, entangle.time_rel_tol};
    s.quadrature = quadrature;
    s.dispersion = solver;
    s.threads = threads;
    return s;
}

RunConfig parse(const json& doc)
{
    if (doc.is_object() && doc.contains("resolved_config"))
        return parse(doc.at("resolved_config"));

    RunConfig c;
    Reader root(doc, "");
    root.number("frequency_thz", c.frequency_thz);
    require(c.frequency_thz > 0.0, "frequency_thz", "must be positive");

    if (auto env = root.object("environment")) {
        env->number("eps_r1", c.eps_r1);
        env->number("eps_r2", c.eps_r2);
        env->finish();
    }
    require(c.eps_r1 >= 1.0, "environment.eps_r1", "must be >= 1");
    require(c.eps_r2 >= 1.0, "environment.eps_r2", "must be >= 1");

    if (auto g = root.object("graphene")) {
        GrapheneSection s;
        g->number("mu_c_ev", s.mu_c_ev);
        g->number("tau_ps", s.tau_ps);
        g->number("vd_over_vf", s.vd_over_vf);
        g->finish();
        require(s.mu_c_ev > 0.0, "graphene.mu_c_ev", "must be positive");
        require(s.tau_ps > 0.0, "graphene.tau_ps", "must be positive");
        require(std::abs(s.vd_over_vf) < 1.0, "graphene.vd_over_vf", "must satisfy |v_d| < vF");
        c.graphene = s;
    }

    if (auto s = root.object("solver")) {
        std::string arg = to_string(c.solver.doppler_arg);
        s->string("doppler_arg", arg);
        try {
            c.solver.doppler_arg = parse_doppler_arg(arg);
        } catch (const InvalidInput& e) {
            throw ConfigError(s->path("doppler_arg"), e.what());
        }
        s->number("step_tolerance", c.solver.step_tolerance);
        s->integer("max_iterations", c.solver.max_iterations);
        s->integer("retries", c.solver.retries);
        s->finish();
        require(c.solver.step_tolerance > 0.0, "solver.step_tolerance", "must be positive");
        require(c.solver.max_iterations > 0, "solver.max_iterations", "must be positive");
        require(c.solver.retries >= 0, "solver.retries", "must be non-negative");
    }

    if (auto q = root.object("quadrature")) {
        auto& o = c.quadrature;
        q->number("rel_tol", o.rel_tol);
        q->number("phi_rel_tol", o.phi_rel_tol);
        q->integer("phi_min_points", o.phi_min_points);
        q->integer("phi_max_points", o.phi_max_points);
        q->integer("max_intervals", o.max_intervals);
        q->number("tail_tol", o.tail_tol);
        q->finish();
        require(o.rel_tol > 0.0, "quadrature.rel_tol", "must be positive");
        require(o.phi_rel_tol > 0.0, "quadrature.phi_rel_tol", "must be positive");
        require(o.phi_min_points >= 4, "quadrature.phi_min_points", "must be at least 4");
        require(o.phi_max_points >= o.phi_min_points, "quadrature.phi_max_points", "must be >= phi_min_points");
        require(o.max_intervals > 0, "quadrature.max_intervals", "must be positive");
        require(o.tail_tol > 0.0, "quadrature.tail_tol", "must be positive");
    }

    if (auto s = root.object("conductivity")) {
        auto& o = c.conductivity;
        s->number("f_min_thz", o.f_min_thz);
        s->number("f_max_thz", o.f_max_thz);
        s->integer("n_f", o.n_f);
        s->number("qx_min_per_m", o.qx_min_per_m);
        s->number("qx_max_per_m", o.qx_max_per_m);
        s->integer("n_qx", o.n_qx);
        s->finish();
    }
    require(c.conductivity.n_f > 0, "conductivity.n_f", "grid is empty");
    require(c.conductivity.n_qx > 0, "conductivity.n_qx", "grid is empty");
    require(c.conductivity.f_min_thz > 0.0, "conductivity.f_min_thz", "must be positive");
    require(c.conductivity.f_max_thz >= c.conductivity.f_min_thz, "conductivity.f_max_thz", "must be >= f_min_thz");
    require(c.conductivity.qx_max_per_m >= c.conductivity.qx_min_per_m, "conductivity.qx_max_per_m",
            "must be >= qx_min_per_m");

    if (auto s = root.object("dispersion")) {
        auto& o = c.dispersion;
        s->number("f_min_thz", o.f_min_thz);
        s->number("f_max_thz", o.f_max_thz);
        s->integer("n_f", o.n_f);
        s->numbers("phi_deg", o.phi_deg);
        s->integer("efc_points", o.efc_points);
        s->finish();
    }
    require(c.dispersion.n_f >= 2, "dispersion.n_f", "needs at least 2 frequencies");
    require(c.dispersion.f_min_thz > 0.0, "dispersion.f_min_thz", "must be positive");
    require(c.dispersion.f_max_thz > c.dispersion.f_min_thz, "dispersion.f_max_thz", "must exceed f_min_thz");
    require(!c.dispersion.phi_deg.empty(), "dispersion.phi_deg", "needs at least one direction");
    require(c.dispersion.efc_points == 0 || c.dispersion.efc_points >= 8, "dispersion.efc_points",
            "must be 0 (skip) or at least 8");

    if (auto s = root.object("fieldmap")) {
        auto& o = c.fieldmap;
        s->number("source_height_over_lambda", o.source_height_over_lambda);
        s->number("observation_height_over_lambda", o.observation_height_over_lambda);
        s->number("x_min_over_lambda", o.x_min_over_lambda);
        s->number("x_max_over_lambda", o.x_max_over_lambda);
        s->integer("nx", o.nx);
        s->number("y_min_over_lambda", o.y_min_over_lambda);
        s->number("y_max_over_lambda", o.y_max_over_lambda);
        s->integer("ny", o.ny);
        s->finish();
    }
    require(c.fieldmap.nx > 0, "fieldmap.nx", "grid is empty");
    require(c.fieldmap.ny > 0, "fieldmap.ny", "grid is empty");
    require(c.fieldmap.source_height_over_lambda > 0.0, "fieldmap.source_height_over_lambda", "must be positive");
    require(c.fieldmap.observation_height_over_lambda > 0.0, "fieldmap.observation_height_over_lambda",
            "must be positive");

    if (auto s = root.object("entangle")) {
        auto& o = c.entangle;
        s->string("sweep", o.sweep);
        if (s->has("grid")) {
            std::vector<double> g;
            s->numbers("grid", g);
            o.grid = g;
        }
        s->number("height_over_lambda", o.height_over_lambda);
        s->number("rho_over_lambda", o.rho_over_lambda);
        s->optional_number("theta_deg", o.theta_deg);
        s->number("omega1_over_gamma11", o.omega1_over_gamma11);
        s->number("omega2_over_gamma11", o.omega2_over_gamma11);
        s->number("time_horizon_inv_gamma11", o.time_horizon_inv_gamma11);
        s->integer("time_grid_points", o.time_grid_points);
        s->number("time_rel_tol", o.time_rel_tol);
        s->number("routing_contrast_factor", o.routing_contrast_factor);
        s->finish();
    }
    {
        const auto& o = c.entangle;
        try {
            parse_sweep_kind(o.sweep);
        } catch (const InvalidInput& e) {
            throw ConfigError("entangle.sweep", e.what());
        }
        require(o.height_over_lambda > 0.0, "entangle.height_over_lambda", "must be positive");
        require(o.rho_over_lambda > 0.0, "entangle.rho_over_lambda", "must be positive");
        require(!o.theta_deg || (*o.theta_deg >= 0.0 && *o.theta_deg <= 180.0), "entangle.theta_deg",
                "must lie in [0, 180]");
        require(o.omega1_over_gamma11 >= 0.0, "entangle.omega1_over_gamma11", "must be non-negative");
        require(o.omega2_over_gamma11 >= 0.0, "entangle.omega2_over_gamma11", "must be non-negative");
        require(o.time_horizon_inv_gamma11 > 0.0, "entangle.time_horizon_inv_gamma11", "must be positive");
        require(o.time_grid_points >= 2, "entangle.time_grid_points", "must be at least 2");
        require(o.time_rel_tol > 0.0, "entangle.time_rel_tol", "must be positive");
        require(o.routing_contrast_factor > 1.0, "entangle.routing_contrast_factor", "must exceed 1");
    }

    root.finish();
    return c;
}

RunConfig load(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("<file>", "cannot open config '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("<file>", std::string("malformed JSON: ") + e.what());
    }
    return parse(doc);
}

json to_json(const RunConfig& c)
{
    json j;
    j["frequency_thz"] = c.frequency_thz;
    j["environment"] = {{"eps_r1", c.eps_r1}, {"eps_r2", c.eps_r2}};
    if (c.graphene)
        j["graphene"] = {{"mu_c_ev", c.graphene->mu_c_ev},
                         {"tau_ps", c.graphene->tau_ps},
                         {"vd_over_vf", c.graphene->vd_over_vf}};
    j["solver"] = {{"doppler_arg", to_string(c.solver.doppler_arg)},
                   {"step_tolerance", c.solver.step_tolerance},
                   {"max_iterations", c.solver.max_iterations},
                   {"retries", c.solver.retries}};
    const auto& q = c.quadrature;
    j["quadrature"] = {{"rel_tol", q.rel_tol},
                       {"phi_rel_tol", q.phi_rel_tol},
                       {"phi_min_points", q.phi_min_points},
                       {"phi_max_points", q.phi_max_points},
                       {"max_intervals", q.max_intervals},
                       {"tail_tol", q.tail_tol}};
    const auto& cs = c.conductivity;
    j["conductivity"] = {{"f_min_thz", cs.f_min_thz},       {"f_max_thz", cs.f_max_thz},
                         {"n_f", cs.n_f},                   {"qx_min_per_m", cs.qx_min_per_m},
                         {"qx_max_per_m", cs.qx_max_per_m}, {"n_qx", cs.n_qx}};
    const auto& d = c.dispersion;
    j["dispersion"] = {{"f_min_thz", d.f_min_thz},
                       {"f_max_thz", d.f_max_thz},
                       {"n_f", d.n_f},
                       {"phi_deg", d.phi_deg},
                       {"efc_points", d.efc_points}};
    const auto& f = c.fieldmap;
    j["fieldmap"] = {{"source_height_over_lambda", f.source_height_over_lambda},
                     {"observation_height_over_lambda", f.observation_height_over_lambda},
                     {"x_min_over_lambda", f.x_min_over_lambda},
                     {"x_max_over_lambda", f.x_max_over_lambda},
                     {"nx", f.nx},
                     {"y_min_over_lambda", f.y_min_over_lambda},
                     {"y_max_over_lambda", f.y_max_over_lambda},
                     {"ny", f.ny}};
    const auto& e = c.entangle;
    j["entangle"] = {{"sweep", e.sweep},
                     {"grid", c.entangle_grid()},
                     {"height_over_lambda", e.height_over_lambda},
                     {"rho_over_lambda", e.rho_over_lambda},
                     {"omega1_over_gamma11", e.omega1_over_gamma11},
                     {"omega2_over_gamma11", e.omega2_over_gamma11},
                     {"time_horizon_inv_gamma11", e.time_horizon_inv_gamma11},
                     {"time_grid_points", e.time_grid_points},
                     {"time_rel_tol", e.time_rel_tol},
                     {"routing_contrast_factor", e.routing_contrast_factor}};
    if (e.theta_deg)
        j["entangle"]["theta_deg"] = *e.theta_deg;
    return j;
}

} // namespace graphent::config
