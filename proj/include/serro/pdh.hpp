#ifndef SERRO_PDH_HPP
#define SERRO_PDH_HPP

#include <cmath>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "serro/constants.hpp"
#include "serro/spectral.hpp"

namespace serro {

/// Fabry-Perot cavity geometry plus the misalignment coupling into
/// higher-order transverse modes. Contrast C_k = V_00/V_k is the ratio of
/// the fundamental-mode detector signal to the mode k*nu_h above it; a mode
/// absent from the map couples nothing.
struct CavityModel {
    double length_m = 0.0;
    double r1_m = INFINITY; ///< mirror radius of curvature; INFINITY = planar
    double r2_m = INFINITY;
    double linewidth_hz = 0.0; ///< FWHM cavity linewidth
    std::map<int, double> contrasts; ///< k >= 1 -> C_k >= 1

    double fsr_hz() const { return speed_of_light / (2.0 * length_m); }
    void validate() const;
};

/// Transverse-mode frequency spacing nu_h = (FSR/pi) * arccos(sqrt(g1*g2)).
/// Throws UnstableCavity when the radicand leaves [0, 1].
double higher_order_mode_offset(const CavityModel& cavity);

/// Transmitted photodetector voltage when a probe laser scans across the
/// cavity: Lorentzians of width linewidth_hz at every n*FSR plus the
/// contrast-weighted higher-order modes at n*FSR + k*nu_h, scaled by v00.
/// The FSR sum covers the grid span padded by ten linewidths.
std::vector<double> transmission_spectrum(const CavityModel& cavity, double v00,
                                          std::span<const double> detuning_hz);

/// PDH modulation parameters for the lock error signal.
struct PdhConfig {
    double mod_freq_hz = 25e6; ///< Omega/2pi
    double depth_rad = 1.082;  ///< beta; 1.082 maximizes the slope J0*J1
    double linewidth_hz = 0.0; ///< FWHM of the addressed resonance

    void validate() const;
};

/// Reflection PDH error of a single Lorentzian resonance at detuning Delta,
/// scaled by the carrier/sideband powers J0(beta)*J1(beta). Antisymmetric in
/// Delta with one zero crossing inside half a linewidth of resonance.
double pdh_error(double detuning_hz, const PdhConfig& cfg);

/// Slope k_e = d(error)/d(detuning) at resonance, in 1/Hz (closed form).
double pdh_error_slope(const PdhConfig& cfg);

/// One discrete spectral feature of the offset-lock laser beam, positioned
/// relative to the lock target in units of the modulation frequency.
struct LaserFeature {
    double offset_fm = 0.0; ///< (feature index - target index)
    double rel_power = 0.0; ///< power relative to the lock target
};

struct LaserSpectrumModel {
    std::string name;
    std::vector<LaserFeature> features; ///< includes the target at offset 0

    void validate() const;
};

/// Serrodyne feature set as observed on the spectrum analyzer: relative to
/// the +1 target, the 0 and +2 features are 13 dB down and the -1 and +3
/// features 16 dB down.
LaserSpectrumModel serrodyne_measured_spectrum();

/// Dual-sideband (single-tone) spectrum locked to the +1 sideband: features
/// 0, +-1, +-2 with Bessel powers J_k(beta)^2 normalized to the target.
LaserSpectrumModel dsb_spectrum(double beta_rad);

/// Worst-case lock-point shift from one spur of relative power power_ratio
/// overlapping a mode of contrast C: (1/C)*(P'/P00)*(linewidth/2).
double lock_shift_worst_case(double contrast, double power_ratio,
                             double linewidth_hz);

struct LockShiftOptions {
    double window_linewidths = 20.0;  ///< feature-mode interaction reach
    double bisect_tol_linewidths = 1e-6;
    int max_fsr_index = 8; ///< guard for the cavity-mode search
};

/// One (feature, cavity mode) interaction entering the total error signal.
struct ContribPair {
    double feature_offset_fm = 0.0;
    double mode_pos_hz = 0.0; ///< relative to the lock mode
    double weight = 0.0;      ///< P_feature / C_mode
};

struct LockShiftRow {
    double ramp_freq_hz = 0.0;
    double shift_hz = 0.0; ///< signed lock-point displacement
    double shift_over_linewidth = 0.0;
    bool no_lock_point = false; ///< no zero crossing inside the bracket
    std::vector<ContribPair> pairs;
};

/// For each modulation frequency, place every laser feature on the cavity
/// mode grid, sum the contrast-weighted PDH error of all pairs within the
/// interaction window, and locate the shifted lock point by bisection inside
/// [-linewidth/2, +linewidth/2].
std::vector<LockShiftRow> lock_shift_sweep(std::span<const double> ramp_freqs_hz,
                                           const CavityModel& cavity,
                                           const LaserSpectrumModel& laser,
                                           const PdhConfig& cfg,
                                           const LockShiftOptions& opt = {});

struct DynamicRange {
    double f2_hz = 0.0;
    bool reached = false; ///< false: half power never hit, f2 = sweep edge
};

/// Largest usable offset: the smallest f2 > f1 where the shifted-feature
/// power falls to half its value at f1 (3 dB of loop gain, the stability
/// margin rule), interpolated linearly between sweep rows.
DynamicRange dynamic_range(std::span<const SweepRow> gain_curve, double f1_hz);

} // namespace serro

#endif
