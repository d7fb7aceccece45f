#ifndef SERRO_WAVEFORM_HPP
#define SERRO_WAVEFORM_HPP

#include <cstdint>
#include <vector>

#include "serro/errors.hpp"

namespace serro {

/// Parametric description of a serrodyne drive ramp.
///
/// amplitude = 1 gives a peak-to-peak optical phase excursion of
/// 2*pi*shift_index radians, i.e. a drive swing of 2*N*V_pi volts.
struct SawtoothSpec {
    double ramp_freq_hz = 0.0; ///< f_m
    int shift_index = 1;       ///< N >= 1
    double v_pi = 1.6;         ///< half-wave voltage, volts
    double amplitude = 1.0;    ///< dimensionless drive scale a

    void validate() const;
};

enum class WaveformUnit { Volts, Radians };

/// Uniformly sampled real signal. The universal carrier between the
/// waveform, rf chain and spectral stages.
struct SampledWaveform {
    double sample_rate_hz = 0.0;
    std::vector<double> samples;
    WaveformUnit unit = WaveformUnit::Radians;
    /// Number of whole ramp periods in the record; 0 when unknown.
    /// Spectral analysis requires a nonzero value (leakage-free records).
    int coherent_periods = 0;

    void validate() const;
};

/// Optical phase of the ideal continuous sawtooth drive at time t, radians.
/// Total in t; exactly periodic with period 1/f_m.
double ideal_phase(const SawtoothSpec& spec, double t_seconds);

/// Point-sample the ideal sawtooth at rate f_s over n_periods ramp periods.
/// The record length n_periods*f_s/f_m must be integral (coherent record);
/// throws NonCommensurate otherwise and OutOfRange for f_m >= f_s/2.
SampledWaveform sample_ideal(const SawtoothSpec& spec, double sample_rate_hz,
                             int n_periods);

enum class InterpKind {
    Linear,       ///< slew-unconstrained front end, full-scale swing in 1/f_s
    ZeroOrderHold ///< staircase alternative for sensitivity studies
};

/// Reconstruct the waveform on a grid oversample times denser, wrapping the
/// last sample back to the first (periodic record). oversample >= 2.
SampledWaveform interpolate(const SampledWaveform& w, int oversample,
                            InterpKind kind = InterpKind::Linear);

/// Map a ramp frequency to the 32-bit phase-accumulator increment.
/// Requires 0 < f_m < f_s/2.
std::uint32_t freq_to_inc(double ramp_freq_hz, double sample_rate_hz);

/// Inverse of freq_to_inc; round-trip error is below f_s/2^33.
double inc_to_freq(std::uint32_t inc, double sample_rate_hz);

/// Register-level description of the FPGA ramp generator: a 32-bit wrapping
/// accumulator scaled by a 16-bit gain, sliced to the DAC width.
struct RampGenConfig {
    std::uint32_t inc = 0;      ///< phase increment per sample, nonzero
    std::uint16_t gain = 0;     ///< gain register; 2^15 is unity (full scale)
    int lanes = 16;             ///< samples computed per logic clock
    int dac_bits = 14;          ///< output code width, 1..16
    double sample_rate_hz = 9.85e9;
    std::uint32_t acc_seed = 0; ///< initial accumulator value

    void validate() const;
};

/// Emulate the ramp generator sample by sample. Returns raw DAC codes in
/// [-2^(dac_bits-1), 2^(dac_bits-1)-1]. The product is truncated, not
/// rounded, and saturates at the DAC rails for gain > 2^15.
std::vector<std::int32_t> rampgen_codes(const RampGenConfig& cfg,
                                        std::size_t n_samples);

/// Same output computed as `lanes` parallel streams, each advancing by
/// lanes*inc, the way the replicated hardware core works. Bit-identical to
/// rampgen_codes by construction of modular addition.
std::vector<std::int32_t> rampgen_codes_parallel(const RampGenConfig& cfg,
                                                 std::size_t n_samples);

/// Scalar emulation normalized to [-1, 1): code / 2^(dac_bits-1).
SampledWaveform rampgen_emulate(const RampGenConfig& cfg, std::size_t n_samples);

} // namespace serro

#endif
