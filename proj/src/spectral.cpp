#include "serro/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "fft.hpp"

namespace serro {

namespace {
constexpr double pi = std::numbers::pi;
}

OpticalSpectrum modulate(const SampledWaveform& phi_rad, double scale) {
    phi_rad.validate();
    if (phi_rad.unit != WaveformUnit::Radians)
        throw InvalidArgument("modulate: phase record must be in radians");
    if (phi_rad.coherent_periods < 1)
        throw NonCoherentRecord(
            "modulate: record is not marked as a whole number of ramp periods");
    const std::size_t n = phi_rad.samples.size();
    if (n < 4)
        throw InvalidArgument("modulate: record too short");

    std::vector<std::complex<double>> field(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double p = scale * phi_rad.samples[k];
        field[k] = {std::cos(p), std::sin(p)};
    }
    const auto dft = detail::fft(field);

    // |field| == 1 per sample, so Parseval makes the bins sum to one up to
    // rounding; no renormalization is applied.
    OpticalSpectrum s;
    s.bin_spacing_hz = phi_rad.sample_rate_hz / static_cast<double>(n);
    s.offset_hz.resize(n);
    s.power.resize(n);
    const std::ptrdiff_t half = static_cast<std::ptrdiff_t>(n) / 2;
    const double inv_n2 = 1.0 / (static_cast<double>(n) * static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const std::ptrdiff_t c = static_cast<std::ptrdiff_t>(i) - half;
        const std::size_t k =
            static_cast<std::size_t>((c + static_cast<std::ptrdiff_t>(n)) %
                                     static_cast<std::ptrdiff_t>(n));
        s.offset_hz[i] = static_cast<double>(c) * s.bin_spacing_hz;
        s.power[i] = std::norm(dft[k]) * inv_n2;
    }
    return s;
}

double sideband_power_analytic(double total_amplitude_cycles, int k) {
    if (total_amplitude_cycles < 0.0)
        throw InvalidArgument("sideband_power_analytic: amplitude must be >= 0");
    const double x = total_amplitude_cycles - static_cast<double>(k);
    if (std::abs(x) < 1e-12) return 1.0;
    const double s = std::sin(pi * x) / (pi * x);
    return s * s;
}

ShiftMetrics metrics(const OpticalSpectrum& s, double target_hz,
                     int exclusion_bins) {
    if (s.size() == 0) throw InvalidArgument("metrics: empty spectrum");
    if (exclusion_bins < 0)
        throw InvalidArgument("metrics: exclusion_bins must be >= 0");

    const double df = s.bin_spacing_hz;
    const double pos = (target_hz - s.offset_hz.front()) / df;
    const auto idx = static_cast<std::ptrdiff_t>(std::llround(pos));
    if (idx < 0 || idx >= static_cast<std::ptrdiff_t>(s.size()) ||
        std::abs(target_hz - s.offset_hz[static_cast<std::size_t>(idx)]) >
            0.5 * df * (1.0 + 1e-9))
        throw TargetOffGrid("metrics: target " + std::to_string(target_hz) +
                            " Hz not on the spectrum grid");

    const auto i_target = static_cast<std::size_t>(idx);
    const double p_shift = s.power[i_target];

    double p_spur = 0.0;
    std::size_t i_spur = s.size();
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (std::llabs(static_cast<long long>(i) -
                       static_cast<long long>(i_target)) <=
            static_cast<long long>(exclusion_bins))
            continue;
        if (s.power[i] > p_spur) {
            p_spur = s.power[i];
            i_spur = i;
        }
    }

    ShiftMetrics m;
    m.target_hz = target_hz;
    m.conversion_loss_db = -10.0 * std::log10(p_shift) + 0.0; // avoid -0

    if (i_spur == s.size() || p_spur <= 0.0) {
        m.suppression_unbounded = true;
        m.suppression_db = std::numeric_limits<double>::infinity();
        m.spur_offset_hz = std::numeric_limits<double>::quiet_NaN();
    } else {
        m.suppression_db = 10.0 * std::log10(p_shift / p_spur);
        m.spur_offset_hz = s.offset_hz[i_spur];
    }
    return m;
}

namespace {

// Full evaluation chain for one amplitude: the phase record is fixed, only
// the scalar drive scale changes.
struct LossEvaluator {
    const SampledWaveform& phi;
    double target_hz;
    int exclusion_bins;

    ShiftMetrics at(double a) const {
        return metrics(modulate(phi, a), target_hz, exclusion_bins);
    }
    double loss(double a) const { return at(a).conversion_loss_db; }
};

} // namespace

OptimizeResult optimize_amplitude(const SawtoothSpec& spec,
                                  const TransferFunction& tf,
                                  double sample_rate_hz, int n_periods,
                                  const OptimizeOptions& opt) {
    if (opt.oversample < 1)
        throw InvalidArgument("optimize_amplitude: oversample must be >= 1");

    SawtoothSpec unit = spec;
    unit.amplitude = 1.0;
    SampledWaveform phi = sample_ideal(unit, sample_rate_hz, n_periods);
    if (opt.oversample > 1) phi = interpolate(phi, opt.oversample, opt.interp);
    phi = apply(tf, phi);

    const double target = unit.ramp_freq_hz * unit.shift_index;
    const LossEvaluator eval{phi, target, opt.exclusion_bins};

    // Coarse scan. The default bracket tops out at 1.5*N; when the minimum
    // sits on that edge (chain attenuation beyond ~3.5 dB) the scan extends
    // until the minimum is interior.
    double hi = 1.5 * unit.shift_index;
    const double hi_limit = 8.0 * unit.shift_index;
    double best_a = opt.scan_lo;
    double best_loss = std::numeric_limits<double>::infinity();
    double a = opt.scan_lo;
    while (true) {
        const double l = eval.loss(a);
        if (l < best_loss) {
            best_loss = l;
            best_a = a;
        }
        if (a >= hi - opt.scan_step / 2) {
            if (best_a >= hi - opt.scan_step / 2 && hi < hi_limit)
                hi = std::min(hi_limit, hi * 2.0);
            else
                break;
        }
        a += opt.scan_step;
    }

    // Golden-section refinement inside the winning coarse cell.
    double lo = std::max(0.0, best_a - opt.scan_step);
    double up = best_a + opt.scan_step;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = up - gr * (up - lo);
    double d = lo + gr * (up - lo);
    double fc = eval.loss(c);
    double fd = eval.loss(d);
    while (up - lo > opt.refine_tol) {
        if (fc < fd) {
            up = d;
            d = c;
            fd = fc;
            c = up - gr * (up - lo);
            fc = eval.loss(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + gr * (up - lo);
            fd = eval.loss(d);
        }
    }

    OptimizeResult res;
    res.amplitude = 0.5 * (lo + up);
    res.best = eval.at(res.amplitude);
    return res;
}

std::vector<SweepRow> sweep(std::span<const double> ramp_freqs_hz,
                            int shift_index, const TransferFunction& tf,
                            double sample_rate_hz, const SweepOptions& opt) {
    if (ramp_freqs_hz.empty())
        throw InvalidArgument("sweep: frequency list is empty");
    if (shift_index < 1)
        throw InvalidArgument("sweep: shift index must be >= 1");

    std::vector<SweepRow> rows;
    rows.reserve(ramp_freqs_hz.size());
    for (double fm : ramp_freqs_hz) {
        SweepRow row;
        row.shift_index = shift_index;
        try {
            if (!(fm > 0.0) || !(fm < sample_rate_hz / 2.0))
                throw OutOfRange("sweep: f_m must lie in (0, f_s/2)");
            // Snap to the nearest commensurate frequency: integer periods in
            // an integer-length record, preferring leakage-free spectra over
            // exact frequency honoring.
            const auto record = static_cast<std::size_t>(std::max<double>(
                static_cast<double>(opt.min_samples),
                std::ceil(opt.min_periods * sample_rate_hz / fm)));
            const int periods = std::max(
                1, static_cast<int>(std::llround(fm / sample_rate_hz *
                                                 static_cast<double>(record))));
            const double snapped =
                static_cast<double>(periods) * sample_rate_hz /
                static_cast<double>(record);
            row.ramp_freq_hz = snapped;

            SawtoothSpec spec{snapped, shift_index, 1.6, 1.0};
            OptimizeOptions oo;
            oo.oversample = opt.oversample;
            oo.interp = opt.interp;
            oo.exclusion_bins = opt.exclusion_bins;
            const OptimizeResult r =
                optimize_amplitude(spec, tf, sample_rate_hz, periods, oo);
            row.amplitude = r.amplitude;
            row.best = r.best;
        } catch (const Error& e) {
            row.ramp_freq_hz = row.ramp_freq_hz > 0.0 ? row.ramp_freq_hz : fm;
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

bool BandPredicate::pass(const SweepRow& row) const {
    if (!row.error.empty()) return false;
    switch (kind) {
    case Kind::LossBelow:
        return row.best.conversion_loss_db < threshold_db;
    case Kind::SuppressionAbove:
        return row.best.suppression_unbounded ||
               row.best.suppression_db > threshold_db;
    }
    return false;
}

std::string BandPredicate::describe() const {
    switch (kind) {
    case Kind::LossBelow:
        return "conversion_loss_db<" + std::to_string(threshold_db);
    case Kind::SuppressionAbove:
        return "suppression_db>" + std::to_string(threshold_db);
    }
    return "";
}

std::vector<Band> extract_bands(std::span<const SweepRow> rows,
                                const BandPredicate& predicate) {
    std::vector<Band> bands;
    std::size_t i = 0;
    while (i < rows.size()) {
        if (!predicate.pass(rows[i])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < rows.size() && predicate.pass(rows[j + 1])) ++j;
        bands.push_back({rows[i].ramp_freq_hz, rows[j].ramp_freq_hz});
        i = j + 1;
    }
    std::stable_sort(bands.begin(), bands.end(),
                     [](const Band& a, const Band& b) {
                         return a.width_hz() > b.width_hz();
                     });
    return bands;
}

} // namespace serro
