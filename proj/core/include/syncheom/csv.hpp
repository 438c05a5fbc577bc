#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "syncheom/heom.hpp"
#include "syncheom/phase_space.hpp"

namespace syncheom {

inline constexpr std::string_view kTimeSeriesHeader = "t,mx,my,mz,p,re_c,im_c,s_max,phi_star,trace_dev";
inline constexpr std::string_view kGridHeader = "axis1,axis2,value,converged";
inline constexpr std::string_view kQFieldHeader = "theta,phi,q";
inline constexpr std::string_view kRrcLinesHeader = "k,z_k,omega_rrc";
inline constexpr std::string_view kQArgmaxHeader = "t,theta,phi";

struct TimeSeriesRow {
    double t = 0.0;
    double mx = 0.0, my = 0.0, mz = 0.0;
    double p = 0.0;
    double re_c = 0.0, im_c = 0.0;
    double s_max = 0.0;
    double phi_star = 0.0;
    double trace_dev = 0.0;
};

TimeSeriesRow time_series_row(const PropagationSample& s);
std::vector<TimeSeriesRow> time_series(const PropagationResult& r);

struct GridCell {
    double axis1 = 0.0;
    double axis2 = 0.0;
    double value = 0.0;  // NaN when the cell failed
    bool converged = false;
};

struct RrcLine {
    int k = 0;
    double z_k = 0.0;
    double omega_rrc = 0.0;
};

// Shortest round-trip decimal form; locale independent.
std::string format_number(double v);

std::string time_series_csv(std::span<const TimeSeriesRow> rows);
std::string grid_csv(std::span<const GridCell> cells);
std::string q_field_csv(const DensityMatrix& rho, const SphereGrid& grid);
std::string rrc_lines_csv(std::span<const RrcLine> lines);
std::string q_argmax_csv(const PropagationResult& r);

// Writes the whole file, creating parent directories. Throws std::runtime_error.
void write_text_file(const std::string& path, std::string_view content);

}  // namespace syncheom
