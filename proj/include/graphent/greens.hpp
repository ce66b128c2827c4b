#pragma once

#include "graphent/environment.hpp"

#include <Eigen/Core>

#include <memory>
#include <vector>

namespace graphent {

struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

/// Two z-oriented dipole emitters above the sheet (region 2).
struct EmitterGeometry {
    Point3 r1;
    Point3 r2;

    /// QB1 at the origin, QB2 at (rho cos theta, rho sin theta), both at `height`.
    static EmitterGeometry planar(double height, double rho, double theta);
    void validate() const;
    double lateral_separation() const;
};

struct QuadratureOptions {
    double rel_tol = 1e-8;          // outer q integral
    double phi_rel_tol = 1e-8;      // successive trapezoid doublings
    int phi_min_points = 64;
    int phi_max_points = 1 << 15;
    int max_intervals = 4000;
    double tail_tol = 1e-12;        // truncated tail relative to the integral
};

/// Gamma_ab (decay) and g_ab (dipole-dipole shift). Diagonal g entries (Lamb
/// shifts) are not computed and are left at zero.
struct CouplingMatrix {
    Eigen::Matrix2d gamma = Eigen::Matrix2d::Zero();
    Eigen::Matrix2d g = Eigen::Matrix2d::Zero();

    /// Everything divided by Gamma_11.
    CouplingMatrix normalized() const;
};

class DipoleScale {
public:
    /// Results in units of Gamma_11 (dipole moment cancels).
    static DipoleScale normalized() { return DipoleScale(0.0); }
    /// Absolute rates in rad/s for a transition dipole `d` in C m.
    static DipoleScale absolute(double dipole_cm) { return DipoleScale(dipole_cm); }

    bool is_normalized() const noexcept { return dipole_ == 0.0; }
    double dipole() const noexcept { return dipole_; }

private:
    explicit DipoleScale(double d) : dipole_(d) {}
    double dipole_;
};

/// Uniform observation lattice at height z, row-major with x varying fastest.
struct GridSpec {
    double x_min = 0.0, x_max = 0.0;
    int nx = 0;
    double y_min = 0.0, y_max = 0.0;
    int ny = 0;
    double z = 0.0;

    double dx() const;
    double dy() const;
    double x(int ix) const;
    double y(int iy) const;
};

struct FieldMap {
    GridSpec grid;
    Point3 source;
    double omega = 0.0;
    std::vector<cplx> values;  // E_z per grid point, row-major

    const cplx& at(int ix, int iy) const { return values[static_cast<std::size_t>(iy) * grid.nx + ix]; }
};

/// Evaluator for the zz Green's function [k2^2 + d^2/dz^2](g^p + g^s) above a
/// (possibly drift-biased) graphene sheet. Immutable after construction, so a
/// single instance can be shared by concurrent sweep workers.
class LayeredGreens {
public:
    LayeredGreens(double omega, Environment env, QuadratureOptions opts = {});

    double omega() const noexcept { return omega_; }
    const Environment& environment() const noexcept { return env_; }
    const QuadratureOptions& options() const noexcept { return opts_; }
    double k2() const noexcept { return k2_; }

    /// Real parts of the plasmon poles used as quadrature breakpoints.
    const std::vector<double>& pole_breakpoints() const noexcept { return poles_; }

    /// Closed-form principal (homogeneous-medium) term.
    cplx principal(const Point3& r, const Point3& r_src) const;

    /// Scattered term by the full (q, phi) double integral. theta is the lateral
    /// direction of the observer as seen from the source.
    cplx scattered(double rho, double theta, double z_plus_zp) const;

    /// Scattered term via the J0 reduction; valid only without drift.
    cplx scattered_reciprocal(double rho, double z_plus_zp) const;

    /// principal + scattered (zero without a sheet). Uses the J0 path when v_d = 0.
    cplx total(const Point3& r, const Point3& r_src) const;

    /// Im G_zz(r, r) for an emitter at height z: k2^3/(6 pi) + Im g^s at rho = 0.
    /// Memoised per height.
    double self_imag(double z) const;

    CouplingMatrix couplings(const EmitterGeometry& geom, DipoleScale scale) const;

    FieldMap field_map(const Point3& source, const GridSpec& grid, int threads = 1) const;

    /// TM reflection coefficient N^E/Z^E at real q along cos(phi), with the
    /// Doppler factor cleared from numerator and denominator so the result stays
    /// finite where sigma_d diverges (it tends to 1 there).
    cplx reflection(double q, cplx p1, cplx p2, double cos_phi) const;

    /// Upper limit of the spectral integral before tail extension.
    double truncation(double z_plus_zp) const;

private:
    struct SpectralStats;
    struct SelfCache;

    cplx spectral_integral(double rho, double theta, double z_plus_zp, bool bessel_path) const;
    cplx angular_integral(double q, cplx p1, cplx p2, double rho, double theta, SpectralStats& stats) const;
    bool drift_free() const noexcept;

    double omega_;
    Environment env_;
    QuadratureOptions opts_;
    double k1_;
    double k2_;
    cplx sigma_local_{};
    std::vector<double> poles_;
    std::shared_ptr<SelfCache> self_cache_;  // memoised self_imag(z), mutex-guarded
};

// Free-function forms of the evaluator methods.
cplx principal_gzz(double omega, const Environment& env, const Point3& r, const Point3& r_src);
cplx scattered_gzz(double omega, const Environment& env, double rho, double theta, double z_plus_zp,
                   const QuadratureOptions& opts = {});
cplx scattered_gzz_reciprocal(double omega, const Environment& env, double rho, double z_plus_zp,
                              const QuadratureOptions& opts = {});
cplx gzz_total(double omega, const Environment& env, const EmitterGeometry& geom,
               const QuadratureOptions& opts = {});
CouplingMatrix coupling_coefficients(double omega, const Environment& env, const EmitterGeometry& geom,
                                     DipoleScale scale, const QuadratureOptions& opts = {});
FieldMap field_map(double omega, const Environment& env, const Point3& source, const GridSpec& grid,
                   const QuadratureOptions& opts = {}, int threads = 1);

} // namespace graphent
