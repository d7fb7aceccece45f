#ifndef SERRO_TRANSFER_FUNCTION_HPP
#define SERRO_TRANSFER_FUNCTION_HPP

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include "serro/waveform.hpp"

namespace serro {

struct TfPoint {
    double freq_hz;
    double mag_db;
    double phase_rad;
};

/// Tabulated complex frequency response (DAC-to-optical chain, amplifier,
/// EOM...). Frequencies are strictly ascending and positive. Between points
/// the magnitude is interpolated linearly in dB and the phase linearly in
/// radians, both against a linear frequency axis; outside the table the edge
/// value is held (measured tables span the band of interest, extrapolation
/// should not invent behavior). Phase must be supplied already unwrapped.
class TransferFunction {
public:
    TransferFunction(std::vector<TfPoint> points, std::string name = "",
                     std::string source = "");

    /// Frequency-independent response of gain_db decibels.
    static TransferFunction flat(double gain_db = 0.0);

    const std::vector<TfPoint>& points() const { return points_; }
    const std::string& name() const { return name_; }
    const std::string& source() const { return source_; }

private:
    std::vector<TfPoint> points_;
    std::string name_;
    std::string source_;
};

/// Parse a comma-separated table `freq_hz,mag_db,phase_rad`. `#` starts a
/// comment; a single leading non-numeric row is accepted as a header. Rows
/// are sorted by frequency; duplicate frequencies are rejected.
TransferFunction load_table(std::istream& in, const std::string& source = "");

/// Linear-scale complex response at frequency f >= 0.
std::complex<double> evaluate(const TransferFunction& tf, double freq_hz);

/// Cascade of two responses, tabulated on the union of both grids
/// (dB magnitudes add, phases add).
TransferFunction compose(const TransferFunction& a, const TransferFunction& b);

/// Apply the response to a periodic record: DFT, multiply each positive
/// frequency bin by evaluate(tf, f), negative bins by the conjugate, the DC
/// (and Nyquist) bin by the real part. Output is real by construction.
SampledWaveform apply(const TransferFunction& tf, const SampledWaveform& w);

/// First-order high-pass at f_lo cascaded with first-order low-pass at f_hi,
/// tabulated on a logarithmic grid (64 points per decade) with the magnitude
/// floored at -120 dB. Synthetic stand-in for a band-limited amplifier.
TransferFunction synth_bandpass(double f_lo_hz, double f_hi_hz);

} // namespace serro

#endif
