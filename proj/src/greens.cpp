#include "graphent/greens.hpp"

#include "graphent/diagnostics.hpp"
#include "graphent/dispersion.hpp"
#include "graphent/errors.hpp"
#include "graphent/parallel.hpp"
#include "graphent/quadrature.hpp"
#include "graphent/units.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>

namespace graphent {
namespace {

constexpr cplx I(0.0, 1.0);
constexpr double kTwoPi = 2.0 * units::pi;

} // namespace

// Unconverged angular sums seen during one spectral integral.
struct LayeredGreens::SpectralStats {
    int unconverged = 0;
    double worst = 0.0;
};

struct LayeredGreens::SelfCache {
    std::mutex mutex;
    std::map<double, double> values;
};

EmitterGeometry EmitterGeometry::planar(double height, double rho, double theta)
{
    return {{0.0, 0.0, height}, {rho * std::cos(theta), rho * std::sin(theta), height}};
}

void EmitterGeometry::validate() const
{
    if (!(r1.z > 0.0) || !(r2.z > 0.0))
        throw InvalidInput("both emitters must lie above the sheet (z > 0)");
}

double EmitterGeometry::lateral_separation() const { return std::hypot(r2.x - r1.x, r2.y - r1.y); }

CouplingMatrix CouplingMatrix::normalized() const
{
    const double scale = gamma(0, 0);
    if (!(scale > 0.0))
        throw NumericalInstability("cannot normalise couplings: Gamma_11 is not positive");
    return {gamma / scale, g / scale};
}

double GridSpec::dx() const { return nx > 1 ? (x_max - x_min) / (nx - 1) : 0.0; }
double GridSpec::dy() const { return ny > 1 ? (y_max - y_min) / (ny - 1) : 0.0; }
double GridSpec::x(int ix) const { return x_min + ix * dx(); }
double GridSpec::y(int iy) const { return y_min + iy * dy(); }

LayeredGreens::LayeredGreens(double omega, Environment env, QuadratureOptions opts)
    : omega_(units::Frequency(omega).omega()), env_(std::move(env)), opts_(opts),
      self_cache_(std::make_shared<SelfCache>())
{
    env_.validate();
    k1_ = env_.k1(omega_);
    k2_ = env_.k2(omega_);
    if (!env_.has_sheet())
        return;
    sigma_local_ = local_conductivity(omega_, env_.sheet_params());
    const bool reciprocal = env_.sheet_params().v_d == 0.0;
    for (double phi : {0.0, units::pi}) {
        const auto s = try_solve_spp(phi, omega_, env_, std::nullopt);
        if (s.status == RootStatus::ok) {
            poles_.push_back(s.q.real());
            poles_.push_back(2.0 * s.q.real());
        }
        if (reciprocal)
            break;
    }
    std::sort(poles_.begin(), poles_.end());
}

bool LayeredGreens::drift_free() const noexcept { return !env_.sheet || env_.sheet->v_d == 0.0; }

cplx LayeredGreens::principal(const Point3& r, const Point3& r_src) const
{
    const double rho2 = (r.x - r_src.x) * (r.x - r_src.x) + (r.y - r_src.y) * (r.y - r_src.y);
    const double dz = r.z - r_src.z;
    const double R = std::sqrt(rho2 + dz * dz);
    if (!(R * k2_ > 1e-12))
        throw CoincidentSource("principal Green's function evaluated at the source point");
    const double k = k2_;
    const cplx phase = std::exp(I * k * R);
    // g = e^{ikR}/(4 pi R); d^2 g/dz^2 = g''(R) dz^2/R^2 + g'(R) rho^2/R^3
    const cplx g = phase / (4.0 * units::pi * R);
    const cplx g1 = phase * (I * k * R - 1.0) / (4.0 * units::pi * R * R);
    const cplx g2 = phase * (2.0 - 2.0 * I * k * R - k * k * R * R) / (4.0 * units::pi * R * R * R);
    return k * k * g + g2 * (dz * dz) / (R * R) + g1 * rho2 / (R * R * R);
}

cplx LayeredGreens::reflection(double q, cplx p1, cplx p2, double cos_phi) const
{
    const auto& sheet = env_.sheet_params();
    const double eps2 = units::eps0 * env_.eps_r2;
    const double ratio = env_.eps_r1 / env_.eps_r2;
    const double shift = q * cos_phi * sheet.v_d;
    if (shift == 0.0) {
        const cplx s = sigma_local_ * p1 * p2 / (-I * omega_ * eps2);
        return (ratio * p2 - p1 + s) / (ratio * p2 + p1 + s);
    }
    // sigma_d/(-i w eps2) = sigma(w')/(-i w' eps2); multiply through by w'.
    const double shifted = omega_ - shift;
    cplx sigma;
    try {
        sigma = kubo_conductivity(shifted, sheet);
    } catch (const DomainError&) {
        return 1.0;  // |sigma| -> infinity at the interband edge
    }
    const cplx s = I * sigma * p1 * p2 / eps2;
    return (shifted * (ratio * p2 - p1) + s) / (shifted * (ratio * p2 + p1) + s);
}

cplx LayeredGreens::angular_integral(double q, cplx p1, cplx p2, double rho, double theta,
                                     SpectralStats& stats) const
{
    // Periodic trapezoid on [-pi, pi); N doubles until successive sums agree.
    // R depends on phi through cos(phi) only, so mirrored nodes share one evaluation.
    const double qrho = q * rho;
    auto term = [&](double phi, cplx refl) { return refl * std::exp(I * qrho * std::cos(phi - theta)); };

    auto add_nodes = [&](int n, int first, int stride, cplx& sum, double& l1) {
        for (int j = first; j <= n / 2; j += stride) {
            const double phi = -units::pi + kTwoPi * j / n;
            const cplx refl = reflection(q, p1, p2, std::cos(phi));
            const cplx a = term(phi, refl);
            sum += a;
            l1 += std::abs(a);
            const int mirror = n - j;
            if (j != 0 && mirror != j && mirror < n) {
                const cplx b = term(-phi, refl);
                sum += b;
                l1 += std::abs(b);
            }
        }
    };

    int n = opts_.phi_min_points;
    cplx sum{};
    double l1 = 0.0;
    add_nodes(n, 0, 1, sum, l1);
    cplx prev = sum * (kTwoPi / n);
    while (true) {
        const int n2 = 2 * n;
        add_nodes(n2, 1, 2, sum, l1);
        const cplx next = sum * (kTwoPi / n2);
        const double diff = std::abs(next - prev);
        const double scale = std::max(std::abs(next), 1e-3 * l1 * (kTwoPi / n2));
        n = n2;
        if (diff <= opts_.phi_rel_tol * scale)
            return next;
        if (n >= opts_.phi_max_points) {
            ++stats.unconverged;
            stats.worst = std::max(stats.worst, diff / std::max(scale, 1e-300));
            return next;
        }
        prev = next;
    }
}

double LayeredGreens::truncation(double z_plus_zp) const
{
    double q_max = 30.0 / z_plus_zp;
    if (!poles_.empty())
        q_max = std::max(q_max, 10.0 * poles_.front());
    return std::max(q_max, 4.0 * k2_);
}

cplx LayeredGreens::spectral_integral(double rho, double theta, double h, bool bessel_path) const
{
    if (!(h > 0.0))
        throw InvalidInput("z + z' must be positive for the scattered Green's function");
    if (!(rho >= 0.0))
        throw InvalidInput("lateral separation must be non-negative");
    const auto& sheet = env_.sheet_params();
    if (bessel_path && sheet.v_d != 0.0)
        throw InvalidInput("the J0 reduction requires zero drift velocity");

    const bool same_media = env_.eps_r1 == env_.eps_r2;
    SpectralStats stats;

    // Common spectral factor q^3 e^{-p2 h}/2 times the angular integral; the 1/p2
    // and dq Jacobian are supplied by each segment's change of variables.
    auto kernel = [&](double q, cplx p2) -> cplx {
        const cplx p1 = same_media ? p2 : decaying_sqrt(cplx(q * q - k1_ * k1_));
        const cplx common = q * q * q * std::exp(-p2 * h) * 0.5;
        if (bessel_path)
            return common * reflection(q, p1, p2, 1.0) * kTwoPi * std::cyl_bessel_j(0.0, q * rho);
        return common * angular_integral(q, p1, p2, rho, theta, stats);
    };

    const double k2 = k2_;
    const double inv_scale = 1.0 / (4.0 * units::pi * units::pi);

    // [0, k2]: q = k2 sin t, p2 = -i k2 cos t, dq/p2 = i dt.
    auto below = [&](double t) { return I * kernel(k2 * std::sin(t), -I * k2 * std::cos(t)); };
    // [k2, 2 k2]: q = k2 cosh u, p2 = k2 sinh u, dq/p2 = du.
    auto near = [&](double u) { return kernel(k2 * std::cosh(u), cplx(k2 * std::sinh(u))); };
    auto above = [&](double q) {
        const cplx p2 = decaying_sqrt(cplx(q * q - k2 * k2));
        return kernel(q, p2) / p2;
    };

    std::vector<double> breaks_q = {2.0 * k2};
    if (!same_media && k1_ > 2.0 * k2)
        breaks_q.push_back(k1_);
    for (double p : poles_)
        if (p > 2.0 * k2)
            breaks_q.push_back(p);
    double q_max = truncation(h);
    breaks_q.push_back(q_max);
    std::sort(breaks_q.begin(), breaks_q.end());
    breaks_q.erase(std::unique(breaks_q.begin(), breaks_q.end()), breaks_q.end());
    breaks_q.erase(std::remove_if(breaks_q.begin(), breaks_q.end(), [&](double b) { return b > q_max; }),
                   breaks_q.end());

    std::vector<double> breaks_t = {0.0, units::pi / 2.0};
    std::vector<double> breaks_u = {0.0};
    if (!same_media && k1_ < k2)
        breaks_t.insert(breaks_t.begin() + 1, std::asin(k1_ / k2));
    if (!same_media && k1_ > k2 && k1_ < 2.0 * k2)
        breaks_u.push_back(std::acosh(k1_ / k2));
    breaks_u.push_back(std::acosh(2.0));

    const double tol = opts_.rel_tol;
    // Crude magnitude from a first pass sets an absolute floor so segments whose
    // contribution is negligible do not chase relative accuracy.
    const auto main = quad::integrate(above, breaks_q, tol, 0.0, opts_.max_intervals);
    const double floor = tol * std::abs(main.value);
    const auto low = quad::integrate(below, breaks_t, tol, floor, opts_.max_intervals);
    const auto mid = quad::integrate(near, breaks_u, tol, floor, opts_.max_intervals);
    cplx total = main.value + low.value + mid.value;

    // Extend past q_max until the remaining tail is negligible.
    for (int ext = 0; ext < 40; ++ext) {
        const double tail = std::abs(above(q_max)) / std::max(h - 3.0 / q_max, 0.1 * h);
        if (tail <= opts_.tail_tol * std::abs(total))
            break;
        const double next = q_max * 1.5;
        const std::vector<double> seg = {q_max, next};
        total += quad::integrate(above, seg, tol, tol * std::abs(total), opts_.max_intervals).value;
        q_max = next;
    }

    if (stats.unconverged > 0) {
        std::ostringstream msg;
        msg << "angular trapezoid sum unconverged at " << stats.unconverged
            << " spectral nodes (worst relative change " << stats.worst << ")";
        warn(msg.str());
    }
    return total * inv_scale;
}

cplx LayeredGreens::scattered(double rho, double theta, double z_plus_zp) const
{
    return spectral_integral(rho, theta, z_plus_zp, false);
}

cplx LayeredGreens::scattered_reciprocal(double rho, double z_plus_zp) const
{
    return spectral_integral(rho, 0.0, z_plus_zp, true);
}

cplx LayeredGreens::total(const Point3& r, const Point3& r_src) const
{
    if (!(r.z > 0.0) || !(r_src.z > 0.0))
        throw InvalidInput("observation and source points must lie above the sheet (z > 0)");
    cplx g = principal(r, r_src);
    if (!env_.has_sheet())
        return g;
    const double dx = r.x - r_src.x;
    const double dy = r.y - r_src.y;
    const double rho = std::hypot(dx, dy);
    const double theta = rho > 0.0 ? std::atan2(dy, dx) : 0.0;
    const double h = r.z + r_src.z;
    g += drift_free() ? scattered_reciprocal(rho, h) : scattered(rho, theta, h);
    return g;
}

double LayeredGreens::self_imag(double z) const
{
    if (!(z > 0.0))
        throw InvalidInput("emitter height must be positive");
    {
        std::lock_guard lock(self_cache_->mutex);
        if (auto it = self_cache_->values.find(z); it != self_cache_->values.end())
            return it->second;
    }
    double value = k2_ * k2_ * k2_ / (6.0 * units::pi);
    if (env_.has_sheet())
        value += (drift_free() ? scattered_reciprocal(0.0, 2.0 * z) : scattered(0.0, 0.0, 2.0 * z)).imag();
    std::lock_guard lock(self_cache_->mutex);
    self_cache_->values.emplace(z, value);
    return value;
}

CouplingMatrix LayeredGreens::couplings(const EmitterGeometry& geom, DipoleScale scale) const
{
    geom.validate();
    // Gamma_ab = 2 d^2/(eps0 hbar) Im G(r_a, r_b); g_ab = d^2/(eps0 hbar) Re G(r_a, r_b)
    const double pref = scale.is_normalized() ? 1.0
                                              : scale.dipole() * scale.dipole() / (units::eps0 * units::hbar);
    const cplx g12 = total(geom.r1, geom.r2);
    const cplx g21 = total(geom.r2, geom.r1);
    CouplingMatrix m;
    m.gamma(0, 0) = 2.0 * pref * self_imag(geom.r1.z);
    m.gamma(1, 1) = geom.r2.z == geom.r1.z ? m.gamma(0, 0) : 2.0 * pref * self_imag(geom.r2.z);
    m.gamma(0, 1) = 2.0 * pref * g12.imag();
    m.gamma(1, 0) = 2.0 * pref * g21.imag();
    m.g(0, 1) = pref * g12.real();
    m.g(1, 0) = pref * g21.real();
    return scale.is_normalized() ? m.normalized() : m;
}

FieldMap LayeredGreens::field_map(const Point3& source, const GridSpec& grid, int threads) const
{
    if (grid.nx < 1 || grid.ny < 1)
        throw InvalidInput("field map grid must have at least one point per axis");
    if ((grid.nx > 1 && !(grid.x_max > grid.x_min)) || (grid.ny > 1 && !(grid.y_max > grid.y_min)))
        throw InvalidInput("field map grid bounds must be increasing");
    if (!(grid.z > 0.0) || !(source.z > 0.0))
        throw InvalidInput("field map source and observation plane must lie above the sheet");

    double cell = std::numeric_limits<double>::infinity();
    if (grid.nx > 1)
        cell = std::min(cell, grid.dx());
    if (grid.ny > 1)
        cell = std::min(cell, grid.dy());
    for (int iy = 0; iy < grid.ny; ++iy) {
        for (int ix = 0; ix < grid.nx; ++ix) {
            const double d = std::hypot(grid.x(ix) - source.x, grid.y(iy) - source.y);
            const double excluded = std::isfinite(cell) ? 0.5 * cell : 0.0;
            if (d < excluded || (d == 0.0 && grid.z == source.z)) {
                std::ostringstream msg;
                msg << "grid cell (ix=" << ix << ", iy=" << iy << ") at x=" << grid.x(ix) << " m, y="
                    << grid.y(iy) << " m lies within half a cell of the source";
                throw InvalidInput(msg.str());
            }
        }
    }

    FieldMap out{grid, source, omega_, std::vector<cplx>(static_cast<std::size_t>(grid.nx) * grid.ny)};
    const cplx to_field = 1.0 / (-I * omega_ * units::eps0);
    parallel_for(out.values.size(), threads, [&](std::size_t k) {
        const int ix = static_cast<int>(k % grid.nx);
        const int iy = static_cast<int>(k / grid.nx);
        out.values[k] = total({grid.x(ix), grid.y(iy), grid.z}, source) * to_field;
    });
    return out;
}

cplx principal_gzz(double omega, const Environment& env, const Point3& r, const Point3& r_src)
{
    Environment host = env;
    host.sheet.reset();
    return LayeredGreens(omega, host).principal(r, r_src);
}

cplx scattered_gzz(double omega, const Environment& env, double rho, double theta, double z_plus_zp,
                   const QuadratureOptions& opts)
{
    return LayeredGreens(omega, env, opts).scattered(rho, theta, z_plus_zp);
}

cplx scattered_gzz_reciprocal(double omega, const Environment& env, double rho, double z_plus_zp,
                              const QuadratureOptions& opts)
{
    return LayeredGreens(omega, env, opts).scattered_reciprocal(rho, z_plus_zp);
}

cplx gzz_total(double omega, const Environment& env, const EmitterGeometry& geom, const QuadratureOptions& opts)
{
    return LayeredGreens(omega, env, opts).total(geom.r2, geom.r1);
}

CouplingMatrix coupling_coefficients(double omega, const Environment& env, const EmitterGeometry& geom,
                                     DipoleScale scale, const QuadratureOptions& opts)
{
    return LayeredGreens(omega, env, opts).couplings(geom, scale);
}

FieldMap field_map(double omega, const Environment& env, const Point3& source, const GridSpec& grid,
                   const QuadratureOptions& opts, int threads)
{
    return LayeredGreens(omega, env, opts).field_map(source, grid, threads);
}

} // namespace graphent
