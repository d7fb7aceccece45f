#include "serro/waveform.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace serro {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

void SawtoothSpec::validate() const {
    if (!(ramp_freq_hz > 0.0) || !std::isfinite(ramp_freq_hz))
        throw InvalidArgument("SawtoothSpec: ramp frequency must be positive");
    if (shift_index < 1)
        throw InvalidArgument("SawtoothSpec: shift index must be >= 1");
    if (!(v_pi > 0.0) || !std::isfinite(v_pi))
        throw InvalidArgument("SawtoothSpec: v_pi must be positive");
    if (amplitude < 0.0 || !std::isfinite(amplitude))
        throw InvalidArgument("SawtoothSpec: amplitude must be >= 0");
}

void SampledWaveform::validate() const {
    if (!(sample_rate_hz > 0.0) || !std::isfinite(sample_rate_hz))
        throw InvalidArgument("SampledWaveform: sample rate must be positive");
    if (samples.empty())
        throw InvalidArgument("SampledWaveform: record must not be empty");
    for (double v : samples)
        if (!std::isfinite(v))
            throw InvalidArgument("SampledWaveform: non-finite sample");
}

double ideal_phase(const SawtoothSpec& spec, double t_seconds) {
    const double cycles = spec.ramp_freq_hz * t_seconds;
    const double frac = cycles - std::floor(cycles); // [0, 1)
    return spec.amplitude * two_pi * spec.shift_index * (frac - 0.5);
}

SampledWaveform sample_ideal(const SawtoothSpec& spec, double sample_rate_hz,
                             int n_periods) {
    spec.validate();
    if (!(sample_rate_hz > 0.0))
        throw InvalidArgument("sample_ideal: sample rate must be positive");
    if (!(spec.ramp_freq_hz < sample_rate_hz / 2.0))
        throw OutOfRange("sample_ideal: f_m must be below f_s/2");
    if (n_periods < 1)
        throw InvalidArgument("sample_ideal: n_periods must be >= 1");

    const double len = n_periods * sample_rate_hz / spec.ramp_freq_hz;
    const double rounded = std::round(len);
    if (std::abs(len - rounded) > 1e-9 * std::max(1.0, len))
        throw NonCommensurate("sample_ideal: " + std::to_string(n_periods) +
                              " periods of f_m=" +
                              std::to_string(spec.ramp_freq_hz) +
                              " Hz is not an integer number of samples at f_s=" +
                              std::to_string(sample_rate_hz) + " Hz");

    SampledWaveform w;
    w.sample_rate_hz = sample_rate_hz;
    w.unit = WaveformUnit::Radians;
    w.coherent_periods = n_periods;
    const auto n = static_cast<std::size_t>(rounded);
    w.samples.resize(n);
    for (std::size_t k = 0; k < n; ++k)
        w.samples[k] = ideal_phase(spec, static_cast<double>(k) / sample_rate_hz);
    return w;
}

SampledWaveform interpolate(const SampledWaveform& w, int oversample,
                            InterpKind kind) {
    w.validate();
    if (oversample < 2)
        throw InvalidArgument("interpolate: oversample must be >= 2");

    const std::size_t n = w.samples.size();
    SampledWaveform out;
    out.sample_rate_hz = w.sample_rate_hz * oversample;
    out.unit = w.unit;
    out.coherent_periods = w.coherent_periods;
    out.samples.resize(n * static_cast<std::size_t>(oversample));

    for (std::size_t i = 0; i < n; ++i) {
        const double a = w.samples[i];
        const double b = w.samples[(i + 1) % n]; // periodic wrap
        for (int r = 0; r < oversample; ++r) {
            double v = a;
            if (kind == InterpKind::Linear)
                v += (b - a) * (static_cast<double>(r) / oversample);
            out.samples[i * oversample + r] = v;
        }
    }
    return out;
}

std::uint32_t freq_to_inc(double ramp_freq_hz, double sample_rate_hz) {
    if (!(sample_rate_hz > 0.0))
        throw InvalidArgument("freq_to_inc: sample rate must be positive");
    if (!(ramp_freq_hz > 0.0) || !(ramp_freq_hz < sample_rate_hz / 2.0))
        throw OutOfRange("freq_to_inc: f_m must lie in (0, f_s/2)");
    const double scaled = ramp_freq_hz / sample_rate_hz * 4294967296.0; // 2^32
    return static_cast<std::uint32_t>(std::llround(scaled));
}

double inc_to_freq(std::uint32_t inc, double sample_rate_hz) {
    return static_cast<double>(inc) * sample_rate_hz / 4294967296.0;
}

void RampGenConfig::validate() const {
    if (inc == 0)
        throw OutOfRange("RampGenConfig: increment must be nonzero");
    if (lanes < 1)
        throw InvalidArgument("RampGenConfig: lanes must be >= 1");
    if (dac_bits < 1 || dac_bits > 16)
        throw InvalidArgument("RampGenConfig: dac_bits must be in [1, 16]");
    if (!(sample_rate_hz > 0.0))
        throw InvalidArgument("RampGenConfig: sample rate must be positive");
}

namespace {

// 32-bit accumulator word -> DAC code: signed offset interpretation, gain
// multiply (48-bit product), MSB slice with truncation. Gain 2^15 maps full
// accumulator scale onto full DAC scale; larger gains clip at the rails.
inline std::int32_t dac_code(std::uint32_t acc, std::uint16_t gain,
                             int dac_bits) {
    const std::int64_t centered =
        static_cast<std::int64_t>(acc) - (std::int64_t{1} << 31);
    const std::int64_t product = centered * static_cast<std::int64_t>(gain);
    std::int64_t code = product >> (47 - dac_bits);
    const std::int64_t full = std::int64_t{1} << (dac_bits - 1);
    if (code >= full) code = full - 1;
    if (code < -full) code = -full;
    return static_cast<std::int32_t>(code);
}

} // namespace

std::vector<std::int32_t> rampgen_codes(const RampGenConfig& cfg,
                                        std::size_t n_samples) {
    cfg.validate();
    if (n_samples < 1)
        throw InvalidArgument("rampgen_codes: need at least one sample");
    std::vector<std::int32_t> codes(n_samples);
    std::uint32_t acc = cfg.acc_seed;
    for (std::size_t k = 0; k < n_samples; ++k) {
        codes[k] = dac_code(acc, cfg.gain, cfg.dac_bits);
        acc += cfg.inc; // wraps mod 2^32
    }
    return codes;
}

std::vector<std::int32_t> rampgen_codes_parallel(const RampGenConfig& cfg,
                                                 std::size_t n_samples) {
    cfg.validate();
    if (n_samples < 1)
        throw InvalidArgument("rampgen_codes_parallel: need at least one sample");
    std::vector<std::int32_t> codes(n_samples);
    const auto lanes = static_cast<std::uint32_t>(cfg.lanes);
    const std::uint32_t stride = cfg.inc * lanes; // mod 2^32
    for (std::uint32_t lane = 0; lane < lanes; ++lane) {
        std::uint32_t acc = cfg.acc_seed + lane * cfg.inc;
        for (std::size_t k = lane; k < n_samples; k += lanes) {
            codes[k] = dac_code(acc, cfg.gain, cfg.dac_bits);
            acc += stride;
        }
    }
    return codes;
}

SampledWaveform rampgen_emulate(const RampGenConfig& cfg,
                                std::size_t n_samples) {
    const auto codes = rampgen_codes(cfg, n_samples);
    SampledWaveform w;
    w.sample_rate_hz = cfg.sample_rate_hz;
    w.unit = WaveformUnit::Volts; // normalized full scale
    w.samples.resize(codes.size());
    const double half = static_cast<double>(std::int64_t{1} << (cfg.dac_bits - 1));
    for (std::size_t i = 0; i < codes.size(); ++i)
        w.samples[i] = static_cast<double>(codes[i]) / half;
    return w;
}

} // namespace serro
