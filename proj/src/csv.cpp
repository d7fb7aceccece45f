#include "serro/csv.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>

namespace serro {

namespace {

const char* sweep_columns =
    "f_m_hz,N,a_star,conversion_loss_db,suppression_db,spur_offset_hz";
const char* lockshift_columns = "f_m_hz,dxi_hz,dxi_over_linewidth";

double parse_field(const std::string& field, std::size_t line_no) {
    const char* begin = field.data();
    const char* end = begin + field.size();
    while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end)
        throw ParseError("csv: bad numeric field '" + field + "'", line_no);
    return v;
}

std::vector<double> split_row(const std::string& line, std::size_t n_cols,
                              std::size_t line_no) {
    std::vector<double> out;
    out.reserve(n_cols);
    std::size_t pos = 0;
    while (true) {
        const auto comma = line.find(',', pos);
        const std::string field =
            line.substr(pos, comma == std::string::npos ? std::string::npos
                                                        : comma - pos);
        out.push_back(parse_field(field, line_no));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.size() != n_cols)
        throw ParseError("csv: expected " + std::to_string(n_cols) + " columns",
                         line_no);
    return out;
}

} // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

void emit_sweep_csv(std::ostream& out, std::span<const SweepRow> rows,
                    std::span<const std::string> footer) {
    out << "# schema=1\n";
    out << "# " << sweep_columns << "\n";
    for (const SweepRow& row : rows) {
        if (!row.error.empty()) {
            out << "# error f_m_hz=" << format_double(row.ramp_freq_hz) << " "
                << row.error << "\n";
            continue;
        }
        out << format_double(row.ramp_freq_hz) << ',' << row.shift_index << ','
            << format_double(row.amplitude) << ','
            << format_double(row.best.conversion_loss_db) << ','
            << format_double(row.best.suppression_db) << ','
            << format_double(row.best.spur_offset_hz) << "\n";
    }
    for (const std::string& line : footer) out << "# " << line << "\n";
}

std::vector<SweepRow> parse_sweep_csv(std::istream& in) {
    std::vector<SweepRow> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        const auto v = split_row(line, 6, line_no);
        SweepRow row;
        row.ramp_freq_hz = v[0];
        row.shift_index = static_cast<int>(v[1]);
        row.amplitude = v[2];
        row.best.target_hz = v[0] * v[1];
        row.best.conversion_loss_db = v[3];
        row.best.suppression_db = v[4];
        row.best.suppression_unbounded = std::isinf(v[4]);
        row.best.spur_offset_hz = v[5];
        rows.push_back(std::move(row));
    }
    return rows;
}

void emit_lockshift_csv(std::ostream& out, std::span<const LockShiftRow> rows,
                        std::span<const std::string> header) {
    out << "# schema=1\n";
    for (const std::string& line : header) out << "# " << line << "\n";
    out << "# " << lockshift_columns << "\n";
    for (const LockShiftRow& row : rows) {
        if (row.no_lock_point) {
            out << "# error f_m_hz=" << format_double(row.ramp_freq_hz)
                << " no lock point in bracket\n";
            continue;
        }
        out << format_double(row.ramp_freq_hz) << ','
            << format_double(row.shift_hz) << ','
            << format_double(row.shift_over_linewidth) << "\n";
    }
}

std::vector<LockShiftRow> parse_lockshift_csv(std::istream& in) {
    std::vector<LockShiftRow> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        const auto v = split_row(line, 3, line_no);
        LockShiftRow row;
        row.ramp_freq_hz = v[0];
        row.shift_hz = v[1];
        row.shift_over_linewidth = v[2];
        rows.push_back(std::move(row));
    }
    return rows;
}

void cavity_report(std::ostream& out, const CavityModel& cavity) {
    cavity.validate();
    const double fsr = cavity.fsr_hz();
    const double nu_h = higher_order_mode_offset(cavity);
    out << "cavity length_m=" << format_double(cavity.length_m)
        << " r1_m=" << format_double(cavity.r1_m)
        << " r2_m=" << format_double(cavity.r2_m)
        << " linewidth_hz=" << format_double(cavity.linewidth_hz) << "\n";
    out << "nu_fsr_hz=" << format_double(fsr) << "\n";
    out << "nu_h_hz=" << format_double(nu_h) << "\n";
    out << "modes (one free spectral range):\n";
    out << "  offset_hz=0 contrast=1 (fundamental)\n";
    for (const auto& [k, c] : cavity.contrasts)
        out << "  offset_hz=" << format_double(k * nu_h)
            << " contrast=" << format_double(c) << " (k=" << k << ")\n";
}

} // namespace serro
