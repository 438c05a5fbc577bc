#include "syncheom/csv.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace syncheom {

namespace {

void append(std::string& out, double v) {
    char buf[32];
    if (std::isnan(v)) {
        out += "nan";
        return;
    }
    if (v == 0.0) v = 0.0;  // drop the sign of negative zero
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, res.ptr);
}

template <class... Ts>
void append_row(std::string& out, double first, Ts... rest) {
    append(out, first);
    ((out += ',', append(out, static_cast<double>(rest))), ...);
    out += '\n';
}

std::string with_header(std::string_view header) {
    std::string out(header);
    out += '\n';
    return out;
}

}  // namespace

std::string format_number(double v) {
    std::string s;
    append(s, v);
    return s;
}

TimeSeriesRow time_series_row(const PropagationSample& s) {
    const BlochVector m = bloch_vector(s.rho);
    const SyncMaximum sm = max_sync(s.rho);
    const cplx c = s.rho.c();
    return {s.t, m.x, m.y, m.z, s.rho.p(), c.real(), c.imag(), sm.value, sm.phi_star, s.trace_deviation};
}

std::vector<TimeSeriesRow> time_series(const PropagationResult& r) {
    std::vector<TimeSeriesRow> rows;
    rows.reserve(r.samples.size());
    for (const auto& s : r.samples) rows.push_back(time_series_row(s));
    return rows;
}

std::string time_series_csv(std::span<const TimeSeriesRow> rows) {
    std::string out = with_header(kTimeSeriesHeader);
    for (const auto& r : rows) {
        append_row(out, r.t, r.mx, r.my, r.mz, r.p, r.re_c, r.im_c, r.s_max, r.phi_star, r.trace_dev);
    }
    return out;
}

std::string grid_csv(std::span<const GridCell> cells) {
    std::string out = with_header(kGridHeader);
    for (const auto& c : cells) {
        append(out, c.axis1);
        out += ',';
        append(out, c.axis2);
        out += ',';
        append(out, c.value);
        out += c.converged ? ",1\n" : ",0\n";
    }
    return out;
}

std::string q_field_csv(const DensityMatrix& rho, const SphereGrid& grid) {
    std::string out = with_header(kQFieldHeader);
    for (const double theta : grid.theta) {
        for (const double phi : grid.phi) append_row(out, theta, phi, husimi_q(rho, theta, phi));
    }
    return out;
}

std::string rrc_lines_csv(std::span<const RrcLine> lines) {
    std::string out = with_header(kRrcLinesHeader);
    for (const auto& l : lines) {
        out += std::to_string(l.k);
        out += ',';
        append(out, l.z_k);
        out += ',';
        append(out, l.omega_rrc);
        out += '\n';
    }
    return out;
}

std::string q_argmax_csv(const PropagationResult& r) {
    std::string out = with_header(kQArgmaxHeader);
    for (const auto& s : r.samples) {
        const QArgmax a = q_argmax(s.rho);
        append_row(out, s.t, a.theta, a.phi);
    }
    return out;
}

void write_text_file(const std::string& path, std::string_view content) {
    const std::filesystem::path p(path);
    std::error_code ec;
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
    if (ec) throw std::runtime_error("cannot create directory for '" + path + "': " + ec.message());
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace syncheom
