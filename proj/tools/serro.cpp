// serro: command-line front end for the serrodyne offset-lock simulator.
//
// Subcommands: simulate (single-point metrics), sweep (performance tables),
// pdh (lock-shift curves + cavity report), rampgen (DDS emulator dump).
// All outputs are deterministic; identical configs give identical bytes.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "serro/constants.hpp"
#include "serro/csv.hpp"
#include "serro/pdh.hpp"
#include "serro/spectral.hpp"
#include "serro/transfer_function.hpp"
#include "serro/waveform.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_compute = 3;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

serro::TransferFunction parse_tf(const std::string& spec) {
    if (spec == "flat") return serro::TransferFunction::flat();
    if (spec.rfind("bandpass:", 0) == 0) {
        const auto rest = spec.substr(9);
        const auto colon = rest.find(':');
        if (colon == std::string::npos)
            throw ConfigError("--tf bandpass needs bandpass:<f_lo>:<f_hi>");
        try {
            const double lo = std::stod(rest.substr(0, colon));
            const double hi = std::stod(rest.substr(colon + 1));
            return serro::synth_bandpass(lo, hi);
        } catch (const std::exception&) {
            throw ConfigError("--tf bandpass: bad corner frequency in '" + spec +
                              "'");
        }
    }
    std::ifstream in(spec);
    if (!in)
        throw ConfigError("--tf: cannot open transfer function file '" + spec +
                          "'");
    return serro::load_table(in, spec);
}

serro::CavityModel parse_cavity(const std::string& desc,
                                const std::vector<std::string>& contrasts) {
    serro::CavityModel cavity;
    std::stringstream ss(desc);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw ConfigError("--cavity: expected key=value, got '" + item + "'");
        const std::string key = item.substr(0, eq);
        const std::string val = item.substr(eq + 1);
        double num;
        if (val == "inf")
            num = INFINITY;
        else {
            try {
                num = std::stod(val);
            } catch (const std::exception&) {
                throw ConfigError("--cavity: bad value for " + key);
            }
        }
        if (key == "d")
            cavity.length_m = num;
        else if (key == "r1")
            cavity.r1_m = num;
        else if (key == "r2")
            cavity.r2_m = num;
        else if (key == "linewidth")
            cavity.linewidth_hz = num;
        else
            throw ConfigError("--cavity: unknown key '" + key + "'");
    }
    for (const std::string& c : contrasts) {
        const auto eq = c.find('=');
        if (eq == std::string::npos)
            throw ConfigError("--contrast: expected k=value, got '" + c + "'");
        try {
            cavity.contrasts[std::stoi(c.substr(0, eq))] =
                std::stod(c.substr(eq + 1));
        } catch (const std::exception&) {
            throw ConfigError("--contrast: bad entry '" + c + "'");
        }
    }
    return cavity;
}

serro::LaserSpectrumModel parse_laser(const std::string& spec) {
    if (spec == "serrodyne") return serro::serrodyne_measured_spectrum();
    if (spec.rfind("dsb:", 0) == 0) {
        try {
            return serro::dsb_spectrum(std::stod(spec.substr(4)));
        } catch (const serro::Error&) {
            throw;
        } catch (const std::exception&) {
            throw ConfigError("--laser dsb: bad depth in '" + spec + "'");
        }
    }
    throw ConfigError("--laser: expected serrodyne or dsb:<beta>, got '" + spec +
                      "'");
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("--out: cannot write '" + path + "'");
    return out;
}

std::vector<double> frequency_grid(double start, double stop, double step) {
    if (!(start > 0.0) || !(stop >= start) || !(step > 0.0))
        throw ConfigError("--fm-start/--fm-stop/--fm-step: empty or invalid range");
    std::vector<double> grid;
    const auto n = static_cast<std::size_t>(std::floor((stop - start) / step)) + 1;
    grid.reserve(n);
    for (std::size_t i = 0; i < n; ++i) grid.push_back(start + i * step);
    return grid;
}

void print_metrics(std::ostream& out, const serro::SweepRow& row) {
    out << "f_m_hz=" << serro::format_double(row.ramp_freq_hz)
        << " n_index=" << row.shift_index
        << " target_hz=" << serro::format_double(row.best.target_hz)
        << " a_star=" << serro::format_double(row.amplitude)
        << " conversion_loss_db="
        << serro::format_double(row.best.conversion_loss_db)
        << " suppression_db=" << serro::format_double(row.best.suppression_db)
        << " spur_offset_hz=" << serro::format_double(row.best.spur_offset_hz)
        << "\n";
}

// ---------------------------------------------------------------- simulate

int cmd_simulate(double fs, double fm, int n_index, const std::string& tf_spec,
                 int periods, int oversample, const std::string& out_path,
                 const std::string& spectrum_path) {
    if (!(fm > 0.0) || !(fm < fs / 2.0))
        throw ConfigError("--fm: must lie in (0, fs/2)");
    const serro::TransferFunction tf = parse_tf(tf_spec);

    serro::SweepOptions opt;
    opt.oversample = oversample;
    opt.min_periods = periods;
    const std::vector<double> one{fm};
    const auto rows = serro::sweep(one, n_index, tf, fs, opt);
    if (!rows.front().error.empty()) {
        std::cerr << "computation failed: " << rows.front().error << "\n";
        return exit_compute;
    }
    print_metrics(std::cout, rows.front());
    if (!out_path.empty()) {
        auto out = open_out(out_path);
        serro::emit_sweep_csv(out, rows);
    }
    if (!spectrum_path.empty()) {
        // Rebuild the snapped record (same arithmetic as the sweep).
        const serro::SweepRow& row = rows.front();
        const auto record = static_cast<std::size_t>(
            std::max<double>(static_cast<double>(opt.min_samples),
                             std::ceil(opt.min_periods * fs / fm)));
        const int n_per = std::max(
            1, static_cast<int>(std::llround(fm / fs * static_cast<double>(record))));
        serro::SawtoothSpec spec{row.ramp_freq_hz, n_index, 1.6, 1.0};
        auto phi = serro::sample_ideal(spec, fs, n_per);
        if (oversample > 1) phi = serro::interpolate(phi, oversample);
        phi = serro::apply(tf, phi);
        const auto spectrum = serro::modulate(phi, row.amplitude);
        auto out = open_out(spectrum_path);
        out << "# schema=1\n# offset_hz,power\n";
        for (std::size_t i = 0; i < spectrum.size(); ++i)
            out << serro::format_double(spectrum.offset_hz[i]) << ','
                << serro::format_double(spectrum.power[i]) << "\n";
    }
    return exit_ok;
}

// ------------------------------------------------------------------- sweep

int cmd_sweep(double fs, double start, double stop, double step,
              std::vector<int> n_indices, const std::string& tf_spec,
              const std::string& out_path) {
    const auto grid = frequency_grid(start, stop, step);
    const serro::TransferFunction tf = parse_tf(tf_spec);
    if (n_indices.empty()) n_indices = {1};

    bool first = true;
    for (int n : n_indices) {
        const auto rows = serro::sweep(grid, n, tf, fs);

        std::vector<std::string> footer;
        using Kind = serro::BandPredicate::Kind;
        for (const auto& pred :
             {serro::BandPredicate{Kind::LossBelow, 1.0},
              serro::BandPredicate{Kind::LossBelow, 2.0},
              serro::BandPredicate{Kind::SuppressionAbove, 10.0},
              serro::BandPredicate{Kind::SuppressionAbove, 15.0}}) {
            for (const serro::Band& band : serro::extract_bands(rows, pred)) {
                footer.push_back("band " + pred.describe() +
                                 " f_start_hz=" + serro::format_double(band.f_start_hz) +
                                 " f_end_hz=" + serro::format_double(band.f_end_hz));
            }
        }

        std::ostream* out = &std::cout;
        std::ofstream file;
        if (!out_path.empty()) {
            std::string path = out_path;
            if (n_indices.size() > 1) {
                const auto dot = path.rfind('.');
                const std::string suffix = "_n" + std::to_string(n);
                if (dot == std::string::npos)
                    path += suffix;
                else
                    path.insert(dot, suffix);
            }
            file = open_out(path);
            out = &file;
        } else if (!first) {
            std::cout << "\n";
        }
        *out << "# n_index=" << n << "\n";
        serro::emit_sweep_csv(*out, rows, footer);
        first = false;
    }
    return exit_ok;
}

// --------------------------------------------------------------------- pdh

int cmd_pdh(double fs, double start, double stop, double step,
            const std::string& cavity_desc,
            const std::vector<std::string>& contrasts,
            const std::string& laser_spec, double pdh_freq, double pdh_depth,
            double dr_f1, const std::string& out_path) {
    const serro::CavityModel cavity = parse_cavity(cavity_desc, contrasts);
    cavity.validate(); // UnstableCavity -> config error with geometry echo
    const serro::LaserSpectrumModel laser = parse_laser(laser_spec);
    const auto grid = frequency_grid(start, stop, step);

    serro::PdhConfig cfg{pdh_freq, pdh_depth, cavity.linewidth_hz};
    const auto rows = serro::lock_shift_sweep(grid, cavity, laser, cfg);

    serro::cavity_report(std::cout, cavity);

    // Offset-frequency dynamic range from the flat-chain sampling model.
    const double f1 = dr_f1 > 0.0 ? dr_f1 : start;
    const double gain_stop = std::min(0.45 * fs, std::max(stop, 8.0 * f1));
    if (!(gain_stop > f1))
        throw ConfigError("--dr-f1: must lie below 0.45*fs");
    serro::SweepOptions gain_opt;
    gain_opt.min_samples = 4096;
    gain_opt.oversample = 4;
    // frequencies snap to the record grid; start one cell early so the
    // snapped curve is guaranteed to cover f1
    const double pad = fs / static_cast<double>(gain_opt.min_samples);
    const double gain_start = std::max(pad, f1 - pad);
    std::vector<double> gain_grid;
    for (int i = 0; i < 33; ++i)
        gain_grid.push_back(gain_start + (gain_stop - gain_start) * i / 32.0);
    const auto gain_rows =
        serro::sweep(gain_grid, 1, serro::TransferFunction::flat(), fs, gain_opt);
    const serro::DynamicRange dr = serro::dynamic_range(gain_rows, f1);
    std::cout << "dynamic_range f1_hz=" << serro::format_double(f1)
              << " f2_hz=" << serro::format_double(dr.f2_hz)
              << " reached=" << (dr.reached ? 1 : 0) << "\n";

    std::vector<std::string> header;
    header.push_back("laser=" + laser.name);
    header.push_back("nu_fsr_hz=" + serro::format_double(cavity.fsr_hz()));
    header.push_back("nu_h_hz=" +
                     serro::format_double(serro::higher_order_mode_offset(cavity)));
    header.push_back("linewidth_hz=" +
                     serro::format_double(cavity.linewidth_hz));
    header.push_back("pdh_freq_hz=" + serro::format_double(pdh_freq));
    header.push_back("pdh_depth_rad=" + serro::format_double(pdh_depth));

    if (!out_path.empty()) {
        auto out = open_out(out_path);
        serro::emit_lockshift_csv(out, rows, header);
    } else {
        serro::emit_lockshift_csv(std::cout, rows, header);
    }
    return exit_ok;
}

// ----------------------------------------------------------------- rampgen

int cmd_rampgen(double fs, double fm, double amplitude, int n_index,
                int dac_bits, int lanes, std::size_t max_record,
                const std::string& tf_spec, const std::string& out_path) {
    if (!(fm > 0.0) || !(fm < fs / 2.0))
        throw ConfigError("--fm: must lie in (0, fs/2)");
    if (!(amplitude >= 0.0) || amplitude > 2.0)
        throw ConfigError("--amplitude: gain register covers [0, 2] full scale");

    // Snap the increment so that the accumulator sequence is periodic within
    // max_record samples; keeps the spectrum record coherent.
    const std::uint32_t inc_raw = serro::freq_to_inc(fm, fs);
    const std::uint32_t align = static_cast<std::uint32_t>(
        std::max<std::uint64_t>(1, (std::uint64_t{1} << 32) / max_record));
    std::uint32_t inc =
        static_cast<std::uint32_t>(std::llround(static_cast<double>(inc_raw) /
                                                align)) *
        align;
    if (inc == 0) inc = align;
    const auto gain = static_cast<std::uint16_t>(
        std::min<long long>(65535, std::llround(amplitude * 32768.0)));
    if (gain == 0)
        std::cerr << "warning: gain register is 0, output is all zeros\n";

    serro::RampGenConfig cfg;
    cfg.inc = inc;
    cfg.gain = gain;
    cfg.lanes = lanes;
    cfg.dac_bits = dac_bits;
    cfg.sample_rate_hz = fs;

    const std::uint64_t period =
        (std::uint64_t{1} << 32) / std::gcd(std::uint64_t{inc}, std::uint64_t{1} << 32);
    const auto record = static_cast<std::size_t>(period);

    std::cout << "inc=" << inc << " gain=" << gain
              << " f_m_hz=" << serro::format_double(serro::inc_to_freq(inc, fs))
              << " record=" << record << "\n";

    auto wave = serro::rampgen_emulate(cfg, record);
    wave.coherent_periods = static_cast<int>(
        std::uint64_t{inc} / std::gcd(std::uint64_t{inc}, std::uint64_t{1} << 32));

    // Optical spectrum of the quantized ramp: full DAC scale spans one
    // serrodyne cycle per shift index.
    serro::SampledWaveform phase = wave;
    phase.unit = serro::WaveformUnit::Radians;
    for (double& v : phase.samples) v *= std::numbers::pi * n_index;
    if (!tf_spec.empty()) phase = serro::apply(parse_tf(tf_spec), phase);
    const auto spectrum = serro::modulate(phase);
    const auto m = serro::metrics(spectrum, serro::inc_to_freq(inc, fs) * n_index);
    std::cout << "conversion_loss_db="
              << serro::format_double(m.conversion_loss_db)
              << " suppression_db=" << serro::format_double(m.suppression_db)
              << " spur_offset_hz=" << serro::format_double(m.spur_offset_hz)
              << "\n";

    if (!out_path.empty()) {
        auto out = open_out(out_path);
        out << "# schema=1\n# inc=" << inc << " gain=" << gain
            << " dac_bits=" << dac_bits << "\n# sample_index,code\n";
        const auto codes = serro::rampgen_codes(cfg, record);
        for (std::size_t i = 0; i < codes.size(); ++i)
            out << i << ',' << codes[i] << "\n";
    }
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"serrodyne offset-generation and PDH offset-lock simulator"};
    app.set_config("--config", "", "Read options from an INI/TOML file");
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "Metrics for one (f_m, N, tf)");
    double fs = 9.85e9, fm = 100e6;
    int n_index = 1, periods = 32, oversample = 8;
    std::string tf_spec = "flat", out_path, spectrum_path;
    sim->add_option("--fs", fs, "DAC sample rate, Hz");
    sim->add_option("--fm", fm, "ramp frequency, Hz");
    sim->add_option("--n-index", n_index, "shift index N");
    sim->add_option("--tf", tf_spec, "flat | bandpass:<f_lo>:<f_hi> | <path>");
    sim->add_option("--periods", periods, "minimum ramp periods in the record");
    sim->add_option("--oversample", oversample, "reconstruction oversampling");
    sim->add_option("--out", out_path, "write metrics row as CSV");
    sim->add_option("--spectrum-out", spectrum_path, "write full spectrum CSV");

    // sweep
    auto* swp = app.add_subcommand("sweep", "Performance table over f_m");
    double fm_start = 40e6, fm_stop = 1.6e9, fm_step = 20e6;
    std::vector<int> n_indices;
    std::string swp_tf = "flat", swp_out;
    swp->add_option("--fs", fs, "DAC sample rate, Hz");
    swp->add_option("--fm-start", fm_start, "first ramp frequency, Hz");
    swp->add_option("--fm-stop", fm_stop, "last ramp frequency, Hz");
    swp->add_option("--fm-step", fm_step, "frequency step, Hz");
    swp->add_option("--n-index", n_indices, "shift indices (repeatable)");
    swp->add_option("--tf", swp_tf, "flat | bandpass:<f_lo>:<f_hi> | <path>");
    swp->add_option("--out", swp_out, "output CSV path");

    // pdh
    auto* pdh = app.add_subcommand("pdh", "Lock-shift curve and cavity report");
    std::string cavity_desc = "d=0.1,r1=0.5,r2=inf,linewidth=200e3";
    std::vector<std::string> contrasts;
    std::string laser_spec = "serrodyne", pdh_out;
    double pdh_freq = 25e6, pdh_depth = 1.082, dr_f1 = 0.0;
    double pdh_start = 50e6, pdh_stop = 1.6e9, pdh_step = 1e6;
    pdh->add_option("--cavity", cavity_desc,
                    "d=<m>,r1=<m>,r2=<m|inf>,linewidth=<hz>");
    pdh->add_option("--contrast", contrasts, "k=<value> (repeatable)");
    pdh->add_option("--laser", laser_spec, "serrodyne | dsb:<beta>");
    pdh->add_option("--pdh-freq", pdh_freq, "PDH modulation frequency, Hz");
    pdh->add_option("--pdh-depth", pdh_depth, "PDH modulation depth, rad");
    pdh->add_option("--fm-start", pdh_start, "first offset frequency, Hz");
    pdh->add_option("--fm-stop", pdh_stop, "last offset frequency, Hz");
    pdh->add_option("--fm-step", pdh_step, "offset frequency step, Hz");
    pdh->add_option("--fs", fs, "DAC rate for the dynamic-range gain model");
    pdh->add_option("--dr-f1", dr_f1, "dynamic-range anchor f1, Hz");
    pdh->add_option("--out", pdh_out, "lock-shift CSV path");

    // rampgen
    auto* rg = app.add_subcommand("rampgen", "DDS ramp emulator dump + spectrum");
    double rg_amp = 1.0;
    int dac_bits = 14, lanes = 16;
    std::size_t max_record = 1 << 20;
    std::string rg_tf, rg_out;
    rg->add_option("--fs", fs, "DAC sample rate, Hz");
    rg->add_option("--fm", fm, "requested ramp frequency, Hz");
    rg->add_option("--amplitude", rg_amp, "drive scale; 1.0 = full DAC range");
    rg->add_option("--n-index", n_index, "shift index N");
    rg->add_option("--dac-bits", dac_bits, "DAC width");
    rg->add_option("--lanes", lanes, "parallel lanes");
    rg->add_option("--max-record", max_record, "record length bound (snaps inc)");
    rg->add_option("--tf", rg_tf, "optional transfer function for the spectrum");
    rg->add_option("--out", rg_out, "write the code dump CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
            e.get_name() == "CallForVersion")
            return app.exit(e);
        app.exit(e);
        return exit_config;
    }

    try {
        if (sim->parsed())
            return cmd_simulate(fs, fm, n_index, tf_spec, periods, oversample,
                                out_path, spectrum_path);
        if (swp->parsed())
            return cmd_sweep(fs, fm_start, fm_stop, fm_step, n_indices, swp_tf,
                             swp_out);
        if (pdh->parsed())
            return cmd_pdh(fs, pdh_start, pdh_stop, pdh_step, cavity_desc,
                           contrasts, laser_spec, pdh_freq, pdh_depth, dr_f1,
                           pdh_out);
        if (rg->parsed())
            return cmd_rampgen(fs, fm, rg_amp, n_index, dac_bits, lanes,
                               max_record, rg_tf, rg_out);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const serro::InvalidArgument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const serro::Error& e) {
        std::cerr << "computation error: " << e.what() << "\n";
        return exit_compute;
    }
    return exit_config;
}
