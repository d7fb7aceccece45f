// Python bindings for the serrodyne simulation core.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "serro/constants.hpp"
#include "serro/csv.hpp"
#include "serro/pdh.hpp"
#include "serro/spectral.hpp"
#include "serro/transfer_function.hpp"
#include "serro/waveform.hpp"

namespace py = pybind11;
using namespace serro;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Serrodyne offset generation and PDH offset-lock simulation";
    m.attr("SPEED_OF_LIGHT") = speed_of_light;

    py::register_exception<Error>(m, "SerroError", PyExc_RuntimeError);

    // ------------------------------------------------------------ waveform
    py::class_<SawtoothSpec>(m, "SawtoothSpec")
        .def(py::init([](double fm, int n, double v_pi, double amplitude) {
                 SawtoothSpec s{fm, n, v_pi, amplitude};
                 s.validate();
                 return s;
             }),
             py::arg("ramp_freq_hz"), py::arg("shift_index") = 1,
             py::arg("v_pi") = 1.6, py::arg("amplitude") = 1.0)
        .def_readwrite("ramp_freq_hz", &SawtoothSpec::ramp_freq_hz)
        .def_readwrite("shift_index", &SawtoothSpec::shift_index)
        .def_readwrite("v_pi", &SawtoothSpec::v_pi)
        .def_readwrite("amplitude", &SawtoothSpec::amplitude);

    py::enum_<WaveformUnit>(m, "WaveformUnit")
        .value("Volts", WaveformUnit::Volts)
        .value("Radians", WaveformUnit::Radians);

    py::enum_<InterpKind>(m, "InterpKind")
        .value("Linear", InterpKind::Linear)
        .value("ZeroOrderHold", InterpKind::ZeroOrderHold);

    py::class_<SampledWaveform>(m, "SampledWaveform")
        .def(py::init([](double fs, std::vector<double> samples,
                         WaveformUnit unit, int periods) {
                 SampledWaveform w{fs, std::move(samples), unit, periods};
                 w.validate();
                 return w;
             }),
             py::arg("sample_rate_hz"), py::arg("samples"),
             py::arg("unit") = WaveformUnit::Radians,
             py::arg("coherent_periods") = 0)
        .def_readonly("sample_rate_hz", &SampledWaveform::sample_rate_hz)
        .def_readonly("samples", &SampledWaveform::samples)
        .def_readonly("unit", &SampledWaveform::unit)
        .def_readonly("coherent_periods", &SampledWaveform::coherent_periods)
        .def("__len__", [](const SampledWaveform& w) { return w.samples.size(); });

    m.def("ideal_phase", &ideal_phase, py::arg("spec"), py::arg("t_seconds"));
    m.def("sample_ideal", &sample_ideal, py::arg("spec"),
          py::arg("sample_rate_hz"), py::arg("n_periods"));
    m.def("interpolate", &interpolate, py::arg("waveform"), py::arg("oversample"),
          py::arg("kind") = InterpKind::Linear);
    m.def("freq_to_inc", &freq_to_inc, py::arg("ramp_freq_hz"),
          py::arg("sample_rate_hz"));
    m.def("inc_to_freq", &inc_to_freq, py::arg("inc"), py::arg("sample_rate_hz"));

    py::class_<RampGenConfig>(m, "RampGenConfig")
        .def(py::init([](std::uint32_t inc, std::uint16_t gain, int lanes,
                         int dac_bits, double fs, std::uint32_t acc_seed) {
                 RampGenConfig c{inc, gain, lanes, dac_bits, fs, acc_seed};
                 c.validate();
                 return c;
             }),
             py::arg("inc"), py::arg("gain"), py::arg("lanes") = 16,
             py::arg("dac_bits") = 14, py::arg("sample_rate_hz") = 9.85e9,
             py::arg("acc_seed") = 0)
        .def_readwrite("inc", &RampGenConfig::inc)
        .def_readwrite("gain", &RampGenConfig::gain)
        .def_readwrite("lanes", &RampGenConfig::lanes)
        .def_readwrite("dac_bits", &RampGenConfig::dac_bits)
        .def_readwrite("sample_rate_hz", &RampGenConfig::sample_rate_hz)
        .def_readwrite("acc_seed", &RampGenConfig::acc_seed);

    m.def("rampgen_codes", &rampgen_codes, py::arg("config"),
          py::arg("n_samples"));
    m.def("rampgen_codes_parallel", &rampgen_codes_parallel, py::arg("config"),
          py::arg("n_samples"));
    m.def("rampgen_emulate", &rampgen_emulate, py::arg("config"),
          py::arg("n_samples"));

    // ------------------------------------------------------------ rf chain
    py::class_<TfPoint>(m, "TfPoint")
        .def(py::init<double, double, double>(), py::arg("freq_hz"),
             py::arg("mag_db"), py::arg("phase_rad"))
        .def_readwrite("freq_hz", &TfPoint::freq_hz)
        .def_readwrite("mag_db", &TfPoint::mag_db)
        .def_readwrite("phase_rad", &TfPoint::phase_rad);

    py::class_<TransferFunction>(m, "TransferFunction")
        .def(py::init<std::vector<TfPoint>, std::string, std::string>(),
             py::arg("points"), py::arg("name") = "", py::arg("source") = "")
        .def_static("flat", &TransferFunction::flat, py::arg("gain_db") = 0.0)
        .def_property_readonly("points", &TransferFunction::points)
        .def_property_readonly("name", &TransferFunction::name);

    m.def(
        "load_table",
        [](const std::string& text, const std::string& source) {
            std::istringstream in(text);
            return load_table(in, source);
        },
        py::arg("text"), py::arg("source") = "",
        "Parse a freq_hz,mag_db,phase_rad table from a string");
    m.def("evaluate", &evaluate, py::arg("tf"), py::arg("freq_hz"));
    m.def("compose", &compose, py::arg("a"), py::arg("b"));
    m.def("apply", &apply, py::arg("tf"), py::arg("waveform"));
    m.def("synth_bandpass", &synth_bandpass, py::arg("f_lo_hz"),
          py::arg("f_hi_hz"));

    // ------------------------------------------------------------ spectral
    py::class_<OpticalSpectrum>(m, "OpticalSpectrum")
        .def_readonly("bin_spacing_hz", &OpticalSpectrum::bin_spacing_hz)
        .def_readonly("offset_hz", &OpticalSpectrum::offset_hz)
        .def_readonly("power", &OpticalSpectrum::power)
        .def("__len__", &OpticalSpectrum::size);

    py::class_<ShiftMetrics>(m, "ShiftMetrics")
        .def_readonly("target_hz", &ShiftMetrics::target_hz)
        .def_readonly("conversion_loss_db", &ShiftMetrics::conversion_loss_db)
        .def_readonly("suppression_db", &ShiftMetrics::suppression_db)
        .def_readonly("suppression_unbounded",
                      &ShiftMetrics::suppression_unbounded)
        .def_readonly("spur_offset_hz", &ShiftMetrics::spur_offset_hz);

    m.def("modulate", &modulate, py::arg("phi_rad"), py::arg("scale") = 1.0);
    m.def("sideband_power_analytic", &sideband_power_analytic,
          py::arg("total_amplitude_cycles"), py::arg("k"));
    m.def("metrics", &metrics, py::arg("spectrum"), py::arg("target_hz"),
          py::arg("exclusion_bins") = 1);

    py::class_<OptimizeOptions>(m, "OptimizeOptions")
        .def(py::init<>())
        .def_readwrite("oversample", &OptimizeOptions::oversample)
        .def_readwrite("interp", &OptimizeOptions::interp)
        .def_readwrite("exclusion_bins", &OptimizeOptions::exclusion_bins);

    py::class_<OptimizeResult>(m, "OptimizeResult")
        .def_readonly("amplitude", &OptimizeResult::amplitude)
        .def_readonly("best", &OptimizeResult::best);

    m.def("optimize_amplitude", &optimize_amplitude, py::arg("spec"),
          py::arg("tf"), py::arg("sample_rate_hz"), py::arg("n_periods"),
          py::arg("options") = OptimizeOptions{});

    py::class_<SweepOptions>(m, "SweepOptions")
        .def(py::init<>())
        .def_readwrite("min_periods", &SweepOptions::min_periods)
        .def_readwrite("min_samples", &SweepOptions::min_samples)
        .def_readwrite("oversample", &SweepOptions::oversample)
        .def_readwrite("exclusion_bins", &SweepOptions::exclusion_bins);

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("ramp_freq_hz", &SweepRow::ramp_freq_hz)
        .def_readonly("shift_index", &SweepRow::shift_index)
        .def_readonly("amplitude", &SweepRow::amplitude)
        .def_readonly("best", &SweepRow::best)
        .def_readonly("error", &SweepRow::error);

    m.def(
        "sweep",
        [](const std::vector<double>& fm, int n, const TransferFunction& tf,
           double fs, const SweepOptions& opt) {
            return sweep(fm, n, tf, fs, opt);
        },
        py::arg("ramp_freqs_hz"), py::arg("shift_index"), py::arg("tf"),
        py::arg("sample_rate_hz"), py::arg("options") = SweepOptions{});

    py::class_<BandPredicate>(m, "BandPredicate")
        .def_static("loss_below",
                    [](double db) {
                        return BandPredicate{BandPredicate::Kind::LossBelow, db};
                    })
        .def_static("suppression_above", [](double db) {
            return BandPredicate{BandPredicate::Kind::SuppressionAbove, db};
        });

    py::class_<Band>(m, "Band")
        .def_readonly("f_start_hz", &Band::f_start_hz)
        .def_readonly("f_end_hz", &Band::f_end_hz);

    m.def(
        "extract_bands",
        [](const std::vector<SweepRow>& rows, const BandPredicate& p) {
            return extract_bands(rows, p);
        },
        py::arg("rows"), py::arg("predicate"));

    // ----------------------------------------------------------------- pdh
    py::class_<CavityModel>(m, "CavityModel")
        .def(py::init([](double d, double r1, double r2, double linewidth,
                         std::map<int, double> contrasts) {
                 CavityModel c{d, r1, r2, linewidth, std::move(contrasts)};
                 c.validate();
                 return c;
             }),
             py::arg("length_m"), py::arg("r1_m"), py::arg("r2_m"),
             py::arg("linewidth_hz"),
             py::arg("contrasts") = std::map<int, double>{})
        .def_readonly("length_m", &CavityModel::length_m)
        .def_readonly("linewidth_hz", &CavityModel::linewidth_hz)
        .def_readonly("contrasts", &CavityModel::contrasts)
        .def("fsr_hz", &CavityModel::fsr_hz);

    m.def("higher_order_mode_offset", &higher_order_mode_offset,
          py::arg("cavity"));
    m.def(
        "transmission_spectrum",
        [](const CavityModel& c, double v00, const std::vector<double>& xi) {
            return transmission_spectrum(c, v00, xi);
        },
        py::arg("cavity"), py::arg("v00"), py::arg("detuning_hz"));

    py::class_<PdhConfig>(m, "PdhConfig")
        .def(py::init([](double f, double depth, double lw) {
                 PdhConfig c{f, depth, lw};
                 c.validate();
                 return c;
             }),
             py::arg("mod_freq_hz") = 25e6, py::arg("depth_rad") = 1.082,
             py::arg("linewidth_hz") = 200e3)
        .def_readwrite("mod_freq_hz", &PdhConfig::mod_freq_hz)
        .def_readwrite("depth_rad", &PdhConfig::depth_rad)
        .def_readwrite("linewidth_hz", &PdhConfig::linewidth_hz);

    m.def("pdh_error", &pdh_error, py::arg("detuning_hz"), py::arg("config"));
    m.def("pdh_error_slope", &pdh_error_slope, py::arg("config"));

    py::class_<LaserFeature>(m, "LaserFeature")
        .def_readonly("offset_fm", &LaserFeature::offset_fm)
        .def_readonly("rel_power", &LaserFeature::rel_power);

    py::class_<LaserSpectrumModel>(m, "LaserSpectrumModel")
        .def_readonly("name", &LaserSpectrumModel::name)
        .def_readonly("features", &LaserSpectrumModel::features);

    m.def("serrodyne_measured_spectrum", &serrodyne_measured_spectrum);
    m.def("dsb_spectrum", &dsb_spectrum, py::arg("beta_rad"));
    m.def("lock_shift_worst_case", &lock_shift_worst_case, py::arg("contrast"),
          py::arg("power_ratio"), py::arg("linewidth_hz"));

    py::class_<LockShiftRow>(m, "LockShiftRow")
        .def_readonly("ramp_freq_hz", &LockShiftRow::ramp_freq_hz)
        .def_readonly("shift_hz", &LockShiftRow::shift_hz)
        .def_readonly("shift_over_linewidth",
                      &LockShiftRow::shift_over_linewidth)
        .def_readonly("no_lock_point", &LockShiftRow::no_lock_point);

    m.def(
        "lock_shift_sweep",
        [](const std::vector<double>& fm, const CavityModel& cavity,
           const LaserSpectrumModel& laser, const PdhConfig& cfg) {
            return lock_shift_sweep(fm, cavity, laser, cfg);
        },
        py::arg("ramp_freqs_hz"), py::arg("cavity"), py::arg("laser"),
        py::arg("config"));

    py::class_<DynamicRange>(m, "DynamicRange")
        .def_readonly("f2_hz", &DynamicRange::f2_hz)
        .def_readonly("reached", &DynamicRange::reached);

    m.def(
        "dynamic_range",
        [](const std::vector<SweepRow>& rows, double f1) {
            return dynamic_range(rows, f1);
        },
        py::arg("gain_curve"), py::arg("f1_hz"));
}
