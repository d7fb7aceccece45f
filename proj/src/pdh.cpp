#include "serro/pdh.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace serro {

namespace {

double bessel_j(int order, double x) {
    const double v = std::cyl_bessel_j(static_cast<double>(std::abs(order)), x);
    return (order < 0 && (order & 1)) ? -v : v;
}

double lorentzian(double x, double center, double fwhm) {
    const double u = (x - center) / (fwhm / 2.0);
    return 1.0 / (1.0 + u * u);
}

// Reflection response of a single resonance, F(x) = (ix/g)/(1 + ix/g).
std::complex<double> reflection(double detuning, double half_linewidth) {
    const std::complex<double> z(0.0, detuning / half_linewidth);
    return z / (1.0 + z);
}

// PDH error without the J0*J1 power scale; the root finder only needs the
// shape, and the Bessel factors are detuning-independent.
double pdh_error_unscaled(double detuning, double mod_freq, double g) {
    const std::complex<double> f0 = reflection(detuning, g);
    const std::complex<double> fp = reflection(detuning + mod_freq, g);
    const std::complex<double> fm = reflection(detuning - mod_freq, g);
    return std::imag(f0 * std::conj(fp) - std::conj(f0) * fm);
}

} // namespace

void CavityModel::validate() const {
    if (!(length_m > 0.0))
        throw InvalidArgument("CavityModel: length must be positive");
    if (!(linewidth_hz > 0.0))
        throw InvalidArgument("CavityModel: linewidth must be positive");
    const double g1 = 1.0 - length_m / r1_m;
    const double g2 = 1.0 - length_m / r2_m;
    const double g = g1 * g2;
    if (!(g >= 0.0) || !(g <= 1.0))
        throw UnstableCavity("CavityModel: (1-d/R1)(1-d/R2) = " +
                             std::to_string(g) + " outside [0, 1]");
    for (const auto& [k, c] : contrasts) {
        if (k < 1)
            throw InvalidArgument("CavityModel: contrast index must be >= 1");
        if (!(c >= 1.0))
            throw InvalidArgument("CavityModel: contrast must be >= 1");
    }
}

double higher_order_mode_offset(const CavityModel& cavity) {
    cavity.validate();
    const double g = (1.0 - cavity.length_m / cavity.r1_m) *
                     (1.0 - cavity.length_m / cavity.r2_m);
    return cavity.fsr_hz() / std::numbers::pi * std::acos(std::sqrt(g));
}

std::vector<double> transmission_spectrum(const CavityModel& cavity, double v00,
                                          std::span<const double> detuning_hz) {
    cavity.validate();
    std::vector<double> out(detuning_hz.size(), 0.0);
    if (detuning_hz.empty()) return out;

    const double fsr = cavity.fsr_hz();
    const double nu_h = higher_order_mode_offset(cavity);
    const double pad = 10.0 * cavity.linewidth_hz;
    const auto [min_it, max_it] =
        std::minmax_element(detuning_hz.begin(), detuning_hz.end());
    const int n_lo = static_cast<int>(std::floor((*min_it - pad) / fsr)) - 1;
    const int n_hi = static_cast<int>(std::ceil((*max_it + pad) / fsr)) + 1;

    for (std::size_t i = 0; i < detuning_hz.size(); ++i) {
        const double xi = detuning_hz[i];
        double v = 0.0;
        for (int n = n_lo; n <= n_hi; ++n) {
            const double base = n * fsr;
            v += lorentzian(xi, base, cavity.linewidth_hz);
            for (const auto& [k, c] : cavity.contrasts)
                v += lorentzian(xi, base + k * nu_h, cavity.linewidth_hz) / c;
        }
        out[i] = v00 * v;
    }
    return out;
}

void PdhConfig::validate() const {
    if (!(mod_freq_hz > 0.0))
        throw InvalidArgument("PdhConfig: modulation frequency must be positive");
    if (!(depth_rad > 0.0))
        throw InvalidArgument("PdhConfig: modulation depth must be positive");
    if (!(linewidth_hz > 0.0))
        throw InvalidArgument("PdhConfig: linewidth must be positive");
}

double pdh_error(double detuning_hz, const PdhConfig& cfg) {
    cfg.validate();
    const double scale = bessel_j(0, cfg.depth_rad) * bessel_j(1, cfg.depth_rad);
    return scale *
           pdh_error_unscaled(detuning_hz, cfg.mod_freq_hz, cfg.linewidth_hz / 2.0);
}

double pdh_error_slope(const PdhConfig& cfg) {
    cfg.validate();
    const double g = cfg.linewidth_hz / 2.0;
    const double w = cfg.mod_freq_hz / g;
    // d(error)/d(detuning) at resonance: (2/g) * Re F(Omega) * J0*J1.
    return 2.0 / g * (w * w / (1.0 + w * w)) * bessel_j(0, cfg.depth_rad) *
           bessel_j(1, cfg.depth_rad);
}

void LaserSpectrumModel::validate() const {
    bool target = false;
    for (const LaserFeature& f : features) {
        if (f.rel_power < 0.0)
            throw InvalidArgument("LaserSpectrumModel: negative feature power");
        if (f.offset_fm == 0.0 && f.rel_power == 1.0) target = true;
    }
    if (!target)
        throw InvalidArgument(
            "LaserSpectrumModel: lock target (offset 0, power 1) missing");
}

LaserSpectrumModel serrodyne_measured_spectrum() {
    const double db13 = std::pow(10.0, -1.3);
    const double db16 = std::pow(10.0, -1.6);
    LaserSpectrumModel m;
    m.name = "serrodyne";
    // Carrier-frame features -1, 0, +1 (target), +2, +3.
    m.features = {{-2.0, db16}, {-1.0, db13}, {0.0, 1.0}, {1.0, db13},
                  {2.0, db16}};
    return m;
}

LaserSpectrumModel dsb_spectrum(double beta_rad) {
    if (!(beta_rad > 0.0))
        throw InvalidArgument("dsb_spectrum: depth must be positive");
    const double j1 = bessel_j(1, beta_rad);
    LaserSpectrumModel m;
    m.name = "dsb";
    for (int k = -2; k <= 2; ++k) {
        const double ratio = bessel_j(k, beta_rad) / j1;
        m.features.push_back({static_cast<double>(k - 1), ratio * ratio});
    }
    return m;
}

double lock_shift_worst_case(double contrast, double power_ratio,
                             double linewidth_hz) {
    if (!(contrast >= 1.0))
        throw InvalidArgument("lock_shift_worst_case: contrast must be >= 1");
    if (power_ratio < 0.0)
        throw InvalidArgument("lock_shift_worst_case: power ratio must be >= 0");
    if (!(linewidth_hz > 0.0))
        throw InvalidArgument("lock_shift_worst_case: linewidth must be positive");
    return power_ratio / contrast * linewidth_hz / 2.0;
}

namespace {

// Cavity modes near a given absolute frequency (relative to the lock mode):
// fundamentals at q*FSR couple with contrast 1, misalignment modes at
// q*FSR + k*nu_h with contrast C_k.
struct ModeGrid {
    double fsr;
    double nu_h;
    const std::map<int, double>* contrasts;
    int max_q;

    template <typename Fn>
    void for_each_near(double pos, double window, Fn&& fn) const {
        const int q0 = static_cast<int>(std::llround(pos / fsr));
        for (int q = q0 - 1; q <= q0 + 1; ++q) {
            if (std::abs(q) > max_q) continue;
            const double base = q * fsr;
            if (std::abs(pos - base) <= window) fn(base, 1.0);
            for (const auto& [k, c] : *contrasts) {
                const double mode = base + k * nu_h;
                if (std::abs(pos - mode) <= window) fn(mode, c);
            }
        }
    }
};

} // namespace

std::vector<LockShiftRow> lock_shift_sweep(std::span<const double> ramp_freqs_hz,
                                           const CavityModel& cavity,
                                           const LaserSpectrumModel& laser,
                                           const PdhConfig& cfg,
                                           const LockShiftOptions& opt) {
    cavity.validate();
    laser.validate();
    cfg.validate();

    const double linewidth = cavity.linewidth_hz;
    const double window = opt.window_linewidths * linewidth;
    const double half = linewidth / 2.0;
    const double tol = opt.bisect_tol_linewidths * linewidth;
    const ModeGrid grid{cavity.fsr_hz(), higher_order_mode_offset(cavity),
                        &cavity.contrasts, opt.max_fsr_index};
    // The resonance shape follows the cavity; cfg contributes Omega and beta.
    const double err_half = linewidth / 2.0;

    std::vector<LockShiftRow> rows;
    rows.reserve(ramp_freqs_hz.size());
    std::vector<std::pair<double, double>> terms; // (base detuning, weight)
    for (double fm : ramp_freqs_hz) {
        LockShiftRow row;
        row.ramp_freq_hz = fm;
        terms.clear();

        for (const LaserFeature& feat : laser.features) {
            const double pos = feat.offset_fm * fm;
            grid.for_each_near(pos, window, [&](double mode, double contrast) {
                row.pairs.push_back(
                    {feat.offset_fm, mode, feat.rel_power / contrast});
                terms.emplace_back(pos - mode, feat.rel_power / contrast);
            });
        }

        auto total = [&](double delta) {
            double sum = 0.0;
            for (const auto& [base, weight] : terms)
                sum += weight *
                       pdh_error_unscaled(base + delta, cfg.mod_freq_hz, err_half);
            return sum;
        };

        if (row.pairs.empty()) {
            row.shift_hz = 0.0; // nothing inside the interaction window
        } else {
            double lo = -half, hi = half;
            double flo = total(lo), fhi = total(hi);
            if (flo == 0.0) {
                row.shift_hz = lo;
            } else if (fhi == 0.0) {
                row.shift_hz = hi;
            } else if ((flo > 0.0) == (fhi > 0.0)) {
                row.no_lock_point = true;
                row.shift_hz = std::numeric_limits<double>::quiet_NaN();
            } else {
                while (hi - lo > tol) {
                    const double mid = 0.5 * (lo + hi);
                    const double fmid = total(mid);
                    if (fmid == 0.0) {
                        lo = hi = mid;
                        break;
                    }
                    if ((fmid > 0.0) == (flo > 0.0)) {
                        lo = mid;
                        flo = fmid;
                    } else {
                        hi = mid;
                    }
                }
                row.shift_hz = 0.5 * (lo + hi);
            }
        }
        row.shift_over_linewidth = row.shift_hz / linewidth;
        rows.push_back(std::move(row));
    }
    return rows;
}

DynamicRange dynamic_range(std::span<const SweepRow> gain_curve, double f1_hz) {
    std::vector<std::pair<double, double>> curve; // (f, P_shift)
    for (const SweepRow& row : gain_curve) {
        if (!row.error.empty()) continue;
        curve.emplace_back(row.ramp_freq_hz,
                           std::pow(10.0, -row.best.conversion_loss_db / 10.0));
    }
    if (curve.size() < 2)
        throw InvalidArgument("dynamic_range: need at least two usable rows");
    std::sort(curve.begin(), curve.end());
    if (f1_hz < curve.front().first || f1_hz > curve.back().first)
        throw F1OutOfRange("dynamic_range: f1 outside the gain curve span");

    auto interp = [&](double f) {
        const auto it = std::lower_bound(
            curve.begin(), curve.end(), f,
            [](const auto& p, double x) { return p.first < x; });
        if (it == curve.begin()) return it->second;
        const auto lo = it - 1;
        const double t = (f - lo->first) / (it->first - lo->first);
        return lo->second + t * (it->second - lo->second);
    };

    const double p1 = interp(f1_hz);
    const double target = p1 / 2.0;
    double prev_f = f1_hz;
    double prev_p = p1;
    for (const auto& [f, p] : curve) {
        if (f <= f1_hz) continue;
        if (p <= target) {
            const double t = (prev_p - target) / (prev_p - p);
            return {prev_f + t * (f - prev_f), true};
        }
        prev_f = f;
        prev_p = p;
    }
    return {curve.back().first, false};
}

} // namespace serro
