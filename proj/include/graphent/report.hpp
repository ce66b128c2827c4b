#pragma once

#include "graphent/dispersion.hpp"
#include "graphent/greens.hpp"
#include "graphent/pipeline.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace graphent::report {

/// printf("%.9g"), the number format of every CSV.
std::string fmt(double v);

struct ConductivityGrid {
    std::vector<double> f_thz;
    std::vector<double> qx_per_m;
};

/// `f_THz,qx_per_m,Re_sigma_over_sigmin,Im_sigma_over_sigmin`, f outer, q_x inner.
std::string conductivity_csv(const ConductivityGrid& grid, const GrapheneParams& sheet);

/// `f_THz,phi_deg,Re_q_per_m,Im_q_per_m,residual,status`.
std::string dispersion_csv(const std::vector<DispersionSample>& samples);

/// `x_m,y_m,Re_Ez,Im_Ez,abs_Ez`, row-major over the grid.
std::string field_map_csv(const FieldMap& map);

/// `t_gamma11`, real and imaginary parts of all 16 density-matrix entries, `concurrence`.
std::string trajectory_csv(const Trajectory& tr);

struct Series {
    std::vector<double> x;
    std::vector<double> y;
};

/// Minimal line plot: frame, five ticks per axis, one polyline. NaN points break the line.
std::string svg_line_plot(const Series& s, const std::string& title, const std::string& x_label,
                          const std::string& y_label);

/// Grey-scale heatmap of |E_z| normalised to its maximum.
std::string svg_heatmap(const FieldMap& map, const std::string& title);

void write_file(const std::filesystem::path& path, const std::string& content);

} // namespace graphent::report
