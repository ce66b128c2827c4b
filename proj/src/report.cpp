#include "graphent/report.hpp"

#include "graphent/entanglement.hpp"
#include "graphent/errors.hpp"
#include "graphent/units.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace graphent::report {
namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

std::string escape(const std::string& s)
{
    std::string out;
    for (char ch : s) {
        switch (ch) {
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '&':
            out += "&amp;";
            break;
        default:
            out += ch;
        }
    }
    return out;
}

std::string short_num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

struct Range {
    double lo = 0.0;
    double hi = 1.0;
};

Range finite_range(const std::vector<double>& v)
{
    Range r{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (double x : v)
        if (std::isfinite(x)) {
            r.lo = std::min(r.lo, x);
            r.hi = std::max(r.hi, x);
        }
    if (!(r.lo <= r.hi))
        return {0.0, 1.0};
    if (r.hi == r.lo) {
        const double pad = r.lo == 0.0 ? 1.0 : 0.05 * std::abs(r.lo);
        r.lo -= pad;
        r.hi += pad;
    }
    return r;
}

std::string svg_open(const std::string& title)
{
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
       << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" << escape(title)
       << "</text>\n";
    return os.str();
}

std::string axes(Range xr, Range yr, const std::string& x_label, const std::string& y_label)
{
    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    std::ostringstream os;
    os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double fx = kLeft + pw * k / 4.0;
        const double fy = kTop + ph - ph * k / 4.0;
        os << "<line x1=\"" << fx << "\" y1=\"" << kTop + ph << "\" x2=\"" << fx << "\" y2=\"" << kTop + ph + 5
           << "\" stroke=\"black\"/>\n"
           << "<text x=\"" << fx << "\" y=\"" << kTop + ph + 18 << "\" text-anchor=\"middle\">"
           << short_num(xr.lo + (xr.hi - xr.lo) * k / 4.0) << "</text>\n"
           << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << fy << "\" x2=\"" << kLeft << "\" y2=\"" << fy
           << "\" stroke=\"black\"/>\n"
           << "<text x=\"" << kLeft - 8 << "\" y=\"" << fy + 4 << "\" text-anchor=\"end\">"
           << short_num(yr.lo + (yr.hi - yr.lo) * k / 4.0) << "</text>\n";
    }
    os << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 15 << "\" text-anchor=\"middle\">"
       << escape(x_label) << "</text>\n"
       << "<text x=\"18\" y=\"" << kTop + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
       << kTop + ph / 2 << ")\">" << escape(y_label) << "</text>\n";
    return os.str();
}

} // namespace

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string conductivity_csv(const ConductivityGrid& grid, const GrapheneParams& sheet)
{
    if (grid.f_thz.empty() || grid.qx_per_m.empty())
        throw InvalidInput("conductivity grid is empty");
    const double smin = sigma_min();
    std::ostringstream os;
    os << "f_THz,qx_per_m,Re_sigma_over_sigmin,Im_sigma_over_sigmin\n";
    for (double f : grid.f_thz) {
        const double omega = units::thz_to_omega(f);
        for (double qx : grid.qx_per_m) {
            const cplx s = doppler_conductivity(omega, qx, sheet) / smin;
            os << fmt(f) << ',' << fmt(qx) << ',' << fmt(s.real()) << ',' << fmt(s.imag()) << '\n';
        }
    }
    return os.str();
}

std::string dispersion_csv(const std::vector<DispersionSample>& samples)
{
    std::ostringstream os;
    os << "f_THz,phi_deg,Re_q_per_m,Im_q_per_m,residual,status\n";
    for (const auto& s : samples)
        os << fmt(units::omega_to_thz(s.omega)) << ',' << fmt(s.phi * 180.0 / units::pi) << ','
           << fmt(s.q.real()) << ',' << fmt(s.q.imag()) << ',' << fmt(s.residual) << ',' << to_string(s.status)
           << '\n';
    return os.str();
}

std::string field_map_csv(const FieldMap& map)
{
    std::ostringstream os;
    os << "x_m,y_m,Re_Ez,Im_Ez,abs_Ez\n";
    for (int iy = 0; iy < map.grid.ny; ++iy)
        for (int ix = 0; ix < map.grid.nx; ++ix) {
            const cplx e = map.at(ix, iy);
            os << fmt(map.grid.x(ix)) << ',' << fmt(map.grid.y(iy)) << ',' << fmt(e.real()) << ','
               << fmt(e.imag()) << ',' << fmt(std::abs(e)) << '\n';
        }
    return os.str();
}

std::string trajectory_csv(const Trajectory& tr)
{
    std::ostringstream os;
    os << "t_gamma11";
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j)
            os << ",rho" << i << j << "_re,rho" << i << j << "_im";
    os << ",concurrence\n";
    for (std::size_t k = 0; k < tr.t.size(); ++k) {
        os << fmt(tr.t[k]);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                os << ',' << fmt(tr.states[k](i, j).real()) << ',' << fmt(tr.states[k](i, j).imag());
        os << ',' << fmt(tr.concurrence[k]) << '\n';
    }
    return os.str();
}

std::string svg_line_plot(const Series& s, const std::string& title, const std::string& x_label,
                          const std::string& y_label)
{
    const Range xr = finite_range(s.x);
    const Range yr = finite_range(s.y);
    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    std::ostringstream os;
    os << svg_open(title) << axes(xr, yr, x_label, y_label);
    bool open = false;
    for (std::size_t k = 0; k < s.x.size() && k < s.y.size(); ++k) {
        if (!std::isfinite(s.x[k]) || !std::isfinite(s.y[k])) {
            if (open)
                os << "\"/>\n";
            open = false;
            continue;
        }
        const double px = kLeft + pw * (s.x[k] - xr.lo) / (xr.hi - xr.lo);
        const double py = kTop + ph - ph * (s.y[k] - yr.lo) / (yr.hi - yr.lo);
        if (!open)
            os << "<polyline fill=\"none\" stroke=\"#1f5fa8\" stroke-width=\"1.5\" points=\"";
        open = true;
        os << short_num(px) << ',' << short_num(py) << ' ';
    }
    if (open)
        os << "\"/>\n";
    os << "</svg>\n";
    return os.str();
}

std::string svg_heatmap(const FieldMap& map, const std::string& title)
{
    double peak = 0.0;
    for (const auto& v : map.values)
        peak = std::max(peak, std::abs(v));
    const Range xr{map.grid.x_min, map.grid.x_max};
    const Range yr{map.grid.y_min, map.grid.y_max};
    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    const double cw = pw / map.grid.nx;
    const double ch = ph / map.grid.ny;
    std::ostringstream os;
    os << svg_open(title);
    for (int iy = 0; iy < map.grid.ny; ++iy)
        for (int ix = 0; ix < map.grid.nx; ++ix) {
            const double level = peak > 0.0 ? std::abs(map.at(ix, iy)) / peak : 0.0;
            const int grey = static_cast<int>(std::lround(255.0 * (1.0 - level)));
            os << "<rect x=\"" << short_num(kLeft + cw * ix) << "\" y=\"" << short_num(kTop + ph - ch * (iy + 1))
               << "\" width=\"" << short_num(cw + 0.5) << "\" height=\"" << short_num(ch + 0.5) << "\" fill=\"rgb("
               << grey << ',' << grey << ',' << grey << ")\"/>\n";
        }
    os << axes(xr, yr, "x (m)", "y (m)") << "</svg>\n";
    return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& content)
{
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InvalidInput("cannot open '" + path.string() + "' for writing");
    out << content;
    if (!out)
        throw InvalidInput("failed writing '" + path.string() + "'");
}

} // namespace graphent::report
