#include "serro/transfer_function.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <sstream>

#include "fft.hpp"

namespace serro {

namespace {
constexpr double db_floor = -120.0;

double db_to_linear(double db) { return std::pow(10.0, db / 20.0); }
} // namespace

TransferFunction::TransferFunction(std::vector<TfPoint> points,
                                   std::string name, std::string source)
    : points_(std::move(points)), name_(std::move(name)),
      source_(std::move(source)) {
    if (points_.empty())
        throw EmptyTable("TransferFunction: table has no rows");
    double prev = 0.0;
    for (const TfPoint& p : points_) {
        if (!(p.freq_hz > 0.0) || !std::isfinite(p.freq_hz))
            throw InvalidArgument("TransferFunction: frequencies must be positive");
        if (p.freq_hz == prev)
            throw DuplicateFrequency("TransferFunction: duplicate frequency " +
                                     std::to_string(p.freq_hz) + " Hz");
        if (p.freq_hz < prev)
            throw InvalidArgument("TransferFunction: frequencies must ascend");
        if (!std::isfinite(p.mag_db) || !std::isfinite(p.phase_rad))
            throw InvalidArgument("TransferFunction: non-finite table entry");
        prev = p.freq_hz;
    }
}

TransferFunction TransferFunction::flat(double gain_db) {
    return TransferFunction({{1.0, gain_db, 0.0}}, "flat", "synthetic");
}

TransferFunction load_table(std::istream& in, const std::string& source) {
    std::vector<TfPoint> points;
    std::string line;
    std::size_t line_no = 0;
    bool header_allowed = true;

    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        // trim
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const auto e = line.find_last_not_of(" \t\r");
        line = line.substr(b, e - b + 1);

        double v[3];
        std::size_t pos = 0;
        bool ok = true;
        for (int col = 0; col < 3; ++col) {
            const auto comma = line.find(',', pos);
            const std::string field =
                line.substr(pos, comma == std::string::npos ? std::string::npos
                                                            : comma - pos);
            try {
                std::size_t used = 0;
                v[col] = std::stod(field, &used);
                while (used < field.size() &&
                       (field[used] == ' ' || field[used] == '\t'))
                    ++used;
                if (used != field.size()) throw std::invalid_argument(field);
            } catch (const std::exception&) {
                if (header_allowed) {
                    ok = false;
                    break;
                }
                throw ParseError("load_table: bad value in column " +
                                     std::to_string(col + 1) + ": '" + field + "'",
                                 line_no);
            }
            if (comma == std::string::npos) {
                if (col != 2)
                    throw ParseError("load_table: expected 3 columns", line_no);
                pos = line.size();
            } else {
                if (col == 2)
                    throw ParseError("load_table: expected 3 columns", line_no);
                pos = comma + 1;
            }
        }
        header_allowed = false;
        if (!ok) continue; // skipped header row
        points.push_back({v[0], v[1], v[2]});
    }

    if (points.empty())
        throw EmptyTable("load_table: no data rows" +
                         (source.empty() ? "" : " in " + source));
    std::sort(points.begin(), points.end(),
              [](const TfPoint& a, const TfPoint& b) { return a.freq_hz < b.freq_hz; });
    return TransferFunction(std::move(points), "", source);
}

namespace {

// Clamp-extrapolating linear interpolation of one table column.
double interp_column(const TransferFunction& tf, double f, bool phase) {
    const auto& pts = tf.points();
    auto pick = [phase](const TfPoint& p) {
        return phase ? p.phase_rad : p.mag_db;
    };
    if (f <= pts.front().freq_hz) return pick(pts.front());
    if (f >= pts.back().freq_hz) return pick(pts.back());
    const auto it = std::lower_bound(
        pts.begin(), pts.end(), f,
        [](const TfPoint& p, double x) { return p.freq_hz < x; });
    const TfPoint& hi = *it;
    const TfPoint& lo = *(it - 1);
    const double t = (f - lo.freq_hz) / (hi.freq_hz - lo.freq_hz);
    return pick(lo) + t * (pick(hi) - pick(lo));
}

} // namespace

std::complex<double> evaluate(const TransferFunction& tf, double freq_hz) {
    if (freq_hz < 0.0)
        throw InvalidArgument("evaluate: frequency must be >= 0");
    return std::polar(db_to_linear(interp_column(tf, freq_hz, false)),
                      interp_column(tf, freq_hz, true));
}

TransferFunction compose(const TransferFunction& a, const TransferFunction& b) {
    std::vector<double> grid;
    grid.reserve(a.points().size() + b.points().size());
    for (const TfPoint& p : a.points()) grid.push_back(p.freq_hz);
    for (const TfPoint& p : b.points()) grid.push_back(p.freq_hz);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    std::vector<TfPoint> points;
    points.reserve(grid.size());
    for (double f : grid)
        points.push_back({f,
                          interp_column(a, f, false) + interp_column(b, f, false),
                          interp_column(a, f, true) + interp_column(b, f, true)});
    return TransferFunction(std::move(points),
                            a.name() + "*" + b.name(), "composed");
}

SampledWaveform apply(const TransferFunction& tf, const SampledWaveform& w) {
    w.validate();
    const std::size_t n = w.samples.size();
    auto half = detail::rfft(w.samples);
    const double df = w.sample_rate_hz / static_cast<double>(n);

    // DC carries only the real response part; same at Nyquist, where the
    // half-spectrum element must stay real for a real output record.
    half[0] *= evaluate(tf, 0.0).real();
    const std::size_t last = half.size() - 1;
    for (std::size_t k = 1; k < last; ++k)
        half[k] *= evaluate(tf, df * static_cast<double>(k));
    if (n % 2 == 0)
        half[last] *= evaluate(tf, df * static_cast<double>(last)).real();
    else if (last >= 1)
        half[last] *= evaluate(tf, df * static_cast<double>(last));

    SampledWaveform out;
    out.sample_rate_hz = w.sample_rate_hz;
    out.unit = WaveformUnit::Radians;
    out.coherent_periods = w.coherent_periods;
    out.samples = detail::irfft(half, n);
    return out;
}

TransferFunction synth_bandpass(double f_lo_hz, double f_hi_hz) {
    if (!(f_lo_hz > 0.0) || !(f_lo_hz < f_hi_hz))
        throw InvalidArgument("synth_bandpass: need 0 < f_lo < f_hi");

    const double start = f_lo_hz * 1e-6;
    const double stop = f_hi_hz * 1e4;
    const double decades = std::log10(stop / start);
    const int n = std::max(2, static_cast<int>(std::ceil(decades * 64.0)) + 1);

    std::vector<TfPoint> points;
    points.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double f =
            start * std::pow(10.0, decades * static_cast<double>(i) / (n - 1));
        const std::complex<double> jw_lo(0.0, f / f_lo_hz);
        const std::complex<double> jw_hi(0.0, f / f_hi_hz);
        const std::complex<double> h = (jw_lo / (1.0 + jw_lo)) / (1.0 + jw_hi);
        const double mag_db =
            std::max(db_floor, 20.0 * std::log10(std::abs(h)));
        points.push_back({f, mag_db, std::arg(h)});
    }
    return TransferFunction(std::move(points), "bandpass", "synthetic");
}

} // namespace serro
