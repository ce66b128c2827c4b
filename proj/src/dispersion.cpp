#include "graphent/dispersion.hpp"

#include "graphent/errors.hpp"
#include "graphent/units.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace graphent {
namespace {

constexpr double kLightLineMargin = 1.001;
constexpr double kResidualRatio = 1e-6;

cplx sheet_conductivity(cplx q, double phi, double omega, const GrapheneParams& p, DopplerArg arg)
{
    const double c = std::cos(phi);
    if (arg == DopplerArg::complex)
        return doppler_conductivity(omega, q * c, p);
    return doppler_conductivity(omega, q.real() * c, p);
}

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

struct Attempt {
    enum class Outcome { converged, diverged, light_line, no_tm } outcome;
    cplx q;
};

Attempt secant(double phi, double omega, const Environment& env, cplx seed, const DispersionOptions& opts)
{
    const auto& sheet = env.sheet_params();
    const double qx_seed = seed.real() * std::cos(phi);
    try {
        if (!supports_tm(omega, qx_seed, sheet))
            return {Attempt::Outcome::no_tm, seed};
    } catch (const DopplerSingularity&) {
        return {Attempt::Outcome::no_tm, seed};
    }

    const double k2 = env.k2(omega);
    cplx q0 = seed;
    cplx q1 = seed * cplx(1.0 + 1e-3, 1e-4);
    try {
        cplx f0 = zE(q0, phi, omega, env, opts.doppler_arg);
        cplx f1 = zE(q1, phi, omega, env, opts.doppler_arg);
        for (int it = 0; it < opts.max_iterations; ++it) {
            const cplx denom = f1 - f0;
            if (denom == cplx(0.0))
                break;
            const cplx q2 = q1 - f1 * (q1 - q0) / denom;
            if (!finite(q2) || q2.real() <= 0.0)
                return {Attempt::Outcome::diverged, q1};
            q0 = q1;
            f0 = f1;
            q1 = q2;
            if (std::abs(q1) <= kLightLineMargin * k2)
                return {Attempt::Outcome::light_line, q1};
            f1 = zE(q1, phi, omega, env, opts.doppler_arg);
            if (std::abs(q1 - q0) < opts.step_tolerance * std::abs(q1))
                return {Attempt::Outcome::converged, q1};
        }
    } catch (const DomainError&) {
        return {Attempt::Outcome::diverged, q1};
    } catch (const DopplerSingularity&) {
        return {Attempt::Outcome::diverged, q1};
    }
    return {Attempt::Outcome::diverged, q1};
}

} // namespace

DopplerArg parse_doppler_arg(const std::string& text)
{
    if (text == "re")
        return DopplerArg::real_part;
    if (text == "complex")
        return DopplerArg::complex;
    throw InvalidInput("doppler argument must be 're' or 'complex', got '" + text + "'");
}

std::string to_string(DopplerArg arg) { return arg == DopplerArg::complex ? "complex" : "re"; }

std::string to_string(RootStatus status)
{
    switch (status) {
    case RootStatus::ok:
        return "ok";
    case RootStatus::no_root:
        return "no_root";
    case RootStatus::no_tm:
        return "no_tm";
    }
    return "no_root";
}

cplx zE(cplx q, double phi, double omega, const Environment& env, DopplerArg arg)
{
    const auto& sheet = env.sheet_params();
    const double k1 = env.k1(omega);
    const double k2 = env.k2(omega);
    const cplx p1 = decaying_sqrt(q * q - k1 * k1);
    const cplx p2 = decaying_sqrt(q * q - k2 * k2);
    const double eps2 = units::eps0 * env.eps_r2;
    const cplx sigma = sheet_conductivity(q, phi, omega, sheet, arg);
    const cplx i(0.0, 1.0);
    return (env.eps_r1 / env.eps_r2) * p2 + p1 + sigma * p2 * p1 / (-i * omega * eps2);
}

cplx quasi_static_root(double omega, double q_x, const Environment& env)
{
    const cplx sigma = doppler_conductivity(omega, q_x, env.sheet_params());
    const cplx i(0.0, 1.0);
    return i * omega * units::eps0 * (env.eps_r1 + env.eps_r2) / sigma;
}

cplx default_seed(double phi, double omega, const Environment& env)
{
    cplx q = quasi_static_root(omega, 0.0, env);
    const double c = std::cos(phi);
    for (int it = 0; it < 50; ++it) {
        cplx next;
        try {
            next = quasi_static_root(omega, q.real() * c, env);
        } catch (const Error&) {
            break;
        }
        if (!finite(next) || next.real() <= 0.0)
            break;
        const bool done = std::abs(next - q) < 1e-6 * std::abs(q);
        q = next;
        if (done)
            break;
    }
    return q;
}

DispersionRoot solve_spp(double phi, double omega, const Environment& env, std::optional<cplx> seed,
                         const DispersionOptions& opts)
{
    env.validate();
    env.sheet_params();
    const cplx base = seed.value_or(default_seed(phi, omega, env));
    const std::array<cplx, 4> perturb = {cplx(1.0), cplx(1.05), cplx(0.95), cplx(1.0, 0.05)};

    bool any_tm = false;
    bool light_line = false;
    cplx last = base;
    const int tries = std::min<int>(1 + opts.retries, static_cast<int>(perturb.size()));
    for (int t = 0; t < tries; ++t) {
        const Attempt a = secant(phi, omega, env, base * perturb[t], opts);
        last = a.q;
        if (a.outcome == Attempt::Outcome::no_tm)
            continue;
        any_tm = true;
        if (a.outcome == Attempt::Outcome::light_line) {
            light_line = true;
            continue;
        }
        if (a.outcome != Attempt::Outcome::converged)
            continue;
        const double residual = std::abs(zE(a.q, phi, omega, env, opts.doppler_arg));
        const double scale = std::abs(zE(1.01 * a.q, phi, omega, env, opts.doppler_arg));
        if (residual < kResidualRatio * scale)
            return {a.q, phi, omega, residual};
    }

    std::ostringstream msg;
    msg << "no TM plasmon root at phi = " << phi * 180.0 / units::pi << " deg, f = "
        << units::omega_to_thz(omega) << " THz";
    if (!any_tm)
        throw NoSpp(msg.str() + " (sheet does not support TM waves at the seeds)", false);
    if (light_line)
        throw NoSpp(msg.str() + " (iteration collapsed onto the light line)", true);
    throw RootNotFound(msg.str(), last);
}

DispersionSample try_solve_spp(double phi, double omega, const Environment& env, std::optional<cplx> seed,
                               const DispersionOptions& opts)
{
    DispersionSample s{omega, phi, RootStatus::no_root, {}, 0.0};
    try {
        const auto root = solve_spp(phi, omega, env, seed, opts);
        s.status = RootStatus::ok;
        s.q = root.q;
        s.residual = root.residual;
    } catch (const NoSpp& e) {
        s.status = e.tm_supported() ? RootStatus::no_root : RootStatus::no_tm;
    } catch (const RootNotFound&) {
        s.status = RootStatus::no_root;
    }
    return s;
}

EquiFrequencyContour efc(double omega, const Environment& env, int n_phi, const DispersionOptions& opts)
{
    if (n_phi < 8)
        throw InvalidInput("equi-frequency contour needs at least 8 angles");
    EquiFrequencyContour out{omega, env.sheet_params().v_d, {}};
    out.samples.reserve(static_cast<std::size_t>(n_phi));
    std::optional<cplx> seed;
    for (int k = 0; k < n_phi; ++k) {
        const double phi = -units::pi + 2.0 * units::pi * (k + 1) / n_phi;
        auto s = try_solve_spp(phi, omega, env, seed, opts);
        if (s.status != RootStatus::ok && seed)
            s = try_solve_spp(phi, omega, env, std::nullopt, opts);
        seed = s.status == RootStatus::ok ? std::optional<cplx>(s.q) : std::nullopt;
        out.samples.push_back(s);
    }
    return out;
}

std::vector<DispersionSample> dispersion_curve(double phi, const Environment& env, double omega_min,
                                               double omega_max, int n_points, const DispersionOptions& opts)
{
    if (n_points < 2 || !(omega_max > omega_min) || !(omega_min > 0.0))
        throw InvalidInput("dispersion curve needs 0 < omega_min < omega_max and at least 2 points");
    std::vector<DispersionSample> out;
    out.reserve(static_cast<std::size_t>(n_points));
    std::optional<cplx> seed;
    std::optional<double> seed_omega;
    for (int k = 0; k < n_points; ++k) {
        const double omega = omega_min + (omega_max - omega_min) * k / (n_points - 1);
        // Continuation: scale the previous root by the frequency ratio (q ~ omega^2 quasi-statically).
        std::optional<cplx> guess;
        if (seed)
            guess = *seed * (omega / *seed_omega) * (omega / *seed_omega);
        auto s = try_solve_spp(phi, omega, env, guess, opts);
        if (s.status != RootStatus::ok && guess)
            s = try_solve_spp(phi, omega, env, std::nullopt, opts);
        if (s.status == RootStatus::ok) {
            seed = s.q;
            seed_omega = omega;
        }
        out.push_back(s);
    }
    return out;
}

double drift_direction(const Environment& env)
{
    return env.sheet && env.sheet->v_d < 0.0 ? units::pi : 0.0;
}

double spp_wavelength(double omega, const Environment& env, const DispersionOptions& opts)
{
    const auto root = solve_spp(drift_direction(env), omega, env, std::nullopt, opts);
    return 2.0 * units::pi / root.q.real();
}

} // namespace graphent
