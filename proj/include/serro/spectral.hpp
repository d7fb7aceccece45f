#ifndef SERRO_SPECTRAL_HPP
#define SERRO_SPECTRAL_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "serro/transfer_function.hpp"
#include "serro/waveform.hpp"

namespace serro {

/// Discrete power spectrum of the phase-modulated optical field, centered on
/// the carrier. Phase modulation conserves power, so the bins sum to one.
struct OpticalSpectrum {
    double bin_spacing_hz = 0.0;
    std::vector<double> offset_hz; ///< offset from the optical carrier
    std::vector<double> power;     ///< relative power per bin, sum == 1

    std::size_t size() const { return power.size(); }
};

/// Shift-quality figures extracted from one spectrum.
struct ShiftMetrics {
    double target_hz = 0.0;           ///< intended shift N*f_m
    double conversion_loss_db = 0.0;  ///< -10*log10(P_shift), >= 0
    double suppression_db = 0.0;      ///< 10*log10(P_shift/P_spur)
    bool suppression_unbounded = false; ///< no spur found above the floor
    double spur_offset_hz = 0.0;      ///< frequency of the strongest spur
    /// Optical insertion loss is a hardware property; the phase-modulation
    /// model is lossless, so this is pass-through metadata only.
    std::optional<double> insertion_loss_db;
};

/// Spectrum of exp(i * scale * phi) for a coherent periodic phase record.
/// Bin k of the DFT maps to the carrier offset (k - L/2)*f_s/L.
OpticalSpectrum modulate(const SampledWaveform& phi_rad, double scale = 1.0);

/// Relative power of sideband k for an ideal continuous sawtooth of total
/// amplitude A cycles: sinc^2(A - k). The analytic oracle for modulate.
double sideband_power_analytic(double total_amplitude_cycles, int k);

/// Extract shift metrics at target_hz (must lie on the grid within half a
/// bin). The spur search skips the target bin plus exclusion_bins neighbours
/// on each side, standing in for the analyzer's finite resolution.
ShiftMetrics metrics(const OpticalSpectrum& s, double target_hz,
                     int exclusion_bins = 1);

struct OptimizeOptions {
    /// Reconstruction factor fed to interpolate(); 1 analyzes the sampled
    /// record as-is (no reconstruction penalty), >= 2 models the DAC front
    /// end and is what the sweep uses.
    int oversample = 1;
    InterpKind interp = InterpKind::Linear;
    int exclusion_bins = 1;
    double scan_lo = 0.5;
    double scan_step = 0.02;
    double refine_tol = 1e-4;
};

struct OptimizeResult {
    double amplitude = 0.0; ///< a*, argmin of conversion loss
    ShiftMetrics best;
};

/// Scan the drive amplitude over [scan_lo, 1.5*N] at scan_step, extending the
/// bracket when the minimum sits on its upper edge, then refine by golden
/// section to |da| < refine_tol. Deterministic.
OptimizeResult optimize_amplitude(const SawtoothSpec& spec,
                                  const TransferFunction& tf,
                                  double sample_rate_hz, int n_periods,
                                  const OptimizeOptions& opt = {});

struct SweepOptions {
    int min_periods = 32;
    std::size_t min_samples = 8192;
    int oversample = 8; ///< reconstruction model for the sampling penalty
    InterpKind interp = InterpKind::Linear;
    int exclusion_bins = 1;
};

struct SweepRow {
    double ramp_freq_hz = 0.0; ///< snapped to the commensurate grid
    int shift_index = 1;
    double amplitude = 0.0; ///< optimal a*
    ShiftMetrics best;
    std::string error; ///< empty on success; row kept, sweep continues
};

/// Run the measurement procedure over a list of ramp frequencies: snap each
/// to the nearest commensurate frequency, optimize the amplitude, record the
/// metrics. Rows are independent and keep the input order.
std::vector<SweepRow> sweep(std::span<const double> ramp_freqs_hz,
                            int shift_index, const TransferFunction& tf,
                            double sample_rate_hz, const SweepOptions& opt = {});

/// Performance-band predicate over sweep rows.
struct BandPredicate {
    enum class Kind { LossBelow, SuppressionAbove };
    Kind kind = Kind::LossBelow;
    double threshold_db = 1.0;

    bool pass(const SweepRow& row) const;
    std::string describe() const;
};

struct Band {
    double f_start_hz = 0.0;
    double f_end_hz = 0.0;
    double width_hz() const { return f_end_hz - f_start_hz; }
};

/// Maximal contiguous runs of rows satisfying the predicate, as closed
/// intervals of the run endpoints, ordered widest first. Rows carrying an
/// error annotation never pass. Rows must be sorted by frequency.
std::vector<Band> extract_bands(std::span<const SweepRow> rows,
                                const BandPredicate& predicate);

} // namespace serro

#endif
