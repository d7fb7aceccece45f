#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "serro/waveform.hpp"

using namespace serro;
namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("ideal_phase ramp endpoints") {
    SawtoothSpec s{1e6, 1, 1.6, 1.0};
    CHECK(ideal_phase(s, 0.0) == doctest::Approx(-pi).epsilon(1e-15));
    CHECK(ideal_phase(s, 0.5 / s.ramp_freq_hz) == doctest::Approx(0.0).scale(1.0));

    SawtoothSpec s3{1e6, 3, 1.6, 1.0};
    // approaches +3*pi at the end of the ramp
    const double t = (1.0 - 1e-9) / s3.ramp_freq_hz;
    CHECK(ideal_phase(s3, t) == doctest::Approx(3 * pi).epsilon(1e-7));
}

TEST_CASE("ideal_phase exact periodicity at representable times") {
    SawtoothSpec s{0.25, 1, 1.6, 1.0}; // period 4, exactly representable
    for (double t : {0.5, 1.25, 3.75, 17.5, -2.5}) {
        CHECK(ideal_phase(s, t) == ideal_phase(s, t + 4.0));
    }
}

TEST_CASE("ideal_phase amplitude scale") {
    SawtoothSpec s{1.0, 2, 1.6, 0.5};
    CHECK(ideal_phase(s, 0.0) == doctest::Approx(-0.5 * 2 * pi * 2 * 0.5));
}

TEST_CASE("sample_ideal quarter-period record") {
    SawtoothSpec s{2.5e9, 1, 1.6, 1.0}; // f_m = f_s/4
    const auto w = sample_ideal(s, 10e9, 1);
    REQUIRE(w.samples.size() == 4);
    CHECK(w.samples[0] == doctest::Approx(-pi));
    CHECK(w.samples[1] == doctest::Approx(-pi / 2));
    CHECK(w.samples[2] == doctest::Approx(0.0).scale(1.0));
    CHECK(w.samples[3] == doctest::Approx(pi / 2));
    CHECK(w.coherent_periods == 1);
    CHECK(w.unit == WaveformUnit::Radians);
}

TEST_CASE("sample_ideal rejects the Nyquist edge") {
    SawtoothSpec s{5e9, 1, 1.6, 1.0};
    CHECK_THROWS_AS((void)sample_ideal(s, 10e9, 1), OutOfRange);
}

TEST_CASE("sample_ideal record length at the hardware rate") {
    SawtoothSpec s{100e6, 1, 1.6, 1.0};
    const auto w = sample_ideal(s, 9.85e9, 20);
    CHECK(w.samples.size() == 1970); // 20 * 9.85e9 / 1e8
}

TEST_CASE("sample_ideal rejects non-commensurate records") {
    SawtoothSpec s{3.14159e8, 1, 1.6, 1.0};
    CHECK_THROWS_AS((void)sample_ideal(s, 1e9, 1), NonCommensurate);
}

TEST_CASE("sample_ideal single-period mean bound") {
    for (int m : {8, 64, 1024}) {
        SawtoothSpec s{1e9 / m, 2, 1.6, 1.0};
        const auto w = sample_ideal(s, 1e9, 1);
        double mean = 0.0;
        for (double v : w.samples) mean += v;
        mean /= static_cast<double>(w.samples.size());
        CHECK(std::abs(mean) <=
              2 * pi * s.shift_index * s.amplitude / w.samples.size());
    }
}

TEST_CASE("interpolate constant record") {
    SampledWaveform w{1e9, {2.5, 2.5, 2.5}, WaveformUnit::Radians, 1};
    const auto out = interpolate(w, 4);
    REQUIRE(out.samples.size() == 12);
    for (double v : out.samples) CHECK(v == 2.5);
    CHECK(out.sample_rate_hz == 4e9);
}

TEST_CASE("interpolate two-sample record with periodic wrap") {
    SampledWaveform w{1.0, {0.0, 1.0}, WaveformUnit::Radians, 1};
    const auto out = interpolate(w, 2);
    REQUIRE(out.samples.size() == 4);
    CHECK(out.samples[0] == 0.0);
    CHECK(out.samples[1] == 0.5);
    CHECK(out.samples[2] == 1.0);
    CHECK(out.samples[3] == 0.5); // wraps back toward the first sample
}

TEST_CASE("interpolate shrinks the step by the oversample factor") {
    SawtoothSpec s{1e8, 1, 1.6, 1.0};
    const auto w = sample_ideal(s, 1e9, 3);
    const auto out = interpolate(w, 8);
    auto max_step = [](const std::vector<double>& v) {
        double m = 0.0;
        for (std::size_t i = 0; i + 1 < v.size(); ++i)
            m = std::max(m, std::abs(v[i + 1] - v[i]));
        return m;
    };
    CHECK(max_step(out.samples) <= max_step(w.samples) / 8 + 1e-12);
}

TEST_CASE("interpolate zero-order hold repeats samples") {
    SampledWaveform w{1.0, {1.0, -2.0}, WaveformUnit::Volts, 1};
    const auto out = interpolate(w, 3, InterpKind::ZeroOrderHold);
    CHECK(out.samples == std::vector<double>{1.0, 1.0, 1.0, -2.0, -2.0, -2.0});
}

TEST_CASE("interpolate requires oversample >= 2") {
    SampledWaveform w{1.0, {0.0, 1.0}, WaveformUnit::Radians, 1};
    CHECK_THROWS_AS((void)interpolate(w, 1), InvalidArgument);
}

TEST_CASE("freq_to_inc powers of two") {
    CHECK(freq_to_inc(2.5e9, 10e9) == 1073741824u);  // 2^30
    CHECK(freq_to_inc(625e6, 10e9) == 268435456u);   // 2^28
}

TEST_CASE("freq_to_inc at the hardware operating point") {
    // Exact integer oracle: f_m/f_s = 1e8/9.85e9 = 2/197, so the register is
    // round(2^33/197) computed in integer arithmetic.
    const std::uint64_t num = (std::uint64_t{1} << 33);
    const std::uint64_t q = num / 197;
    const std::uint64_t r = num % 197;
    const std::uint32_t expect = static_cast<std::uint32_t>(q + (2 * r >= 197));
    CHECK(expect == 43603729u);
    CHECK(freq_to_inc(100e6, 9.85e9) == expect);
}

TEST_CASE("freq_to_inc range checks") {
    CHECK_THROWS_AS((void)freq_to_inc(0.0, 1e9), OutOfRange);
    CHECK_THROWS_AS((void)freq_to_inc(5e8, 1e9), OutOfRange);
    CHECK_THROWS_AS((void)freq_to_inc(-1.0, 1e9), OutOfRange);
}

TEST_CASE("freq_to_inc round trip stays below half an LSB") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(1e3, 4.9e9);
    const double fs = 9.85e9;
    for (int i = 0; i < 100; ++i) {
        const double fm = dist(rng);
        const double back = inc_to_freq(freq_to_inc(fm, fs), fs);
        CHECK(std::abs(back - fm) < fs / 8589934592.0); // f_s / 2^33
    }
}

TEST_CASE("rampgen hand-traced accumulator arithmetic") {
    RampGenConfig cfg;
    cfg.inc = 1u << 30;
    cfg.gain = 1u << 15;
    const auto w = rampgen_emulate(cfg, 4);
    REQUIRE(w.samples.size() == 4);
    CHECK(w.samples[0] == -1.0);
    CHECK(w.samples[1] == -0.5);
    CHECK(w.samples[2] == 0.0);
    CHECK(w.samples[3] == 0.5);

    const auto codes = rampgen_codes(cfg, 4);
    CHECK(codes == std::vector<std::int32_t>{-8192, -4096, 0, 4096});
}

TEST_CASE("rampgen zero gain gives a flat record") {
    RampGenConfig cfg;
    cfg.inc = 12345;
    cfg.gain = 0;
    for (std::int32_t c : rampgen_codes(cfg, 64)) CHECK(c == 0);
}

TEST_CASE("rampgen full gain saturates at the rails") {
    RampGenConfig cfg;
    cfg.inc = 1u << 24;
    cfg.gain = 65535;
    for (std::int32_t c : rampgen_codes(cfg, 300)) {
        CHECK(c >= -8192);
        CHECK(c <= 8191);
    }
}

TEST_CASE("rampgen scalar and lane-parallel evaluation are bit identical") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 8; ++trial) {
        RampGenConfig cfg;
        cfg.inc = rng() | 1u;
        cfg.gain = static_cast<std::uint16_t>(rng());
        cfg.acc_seed = rng();
        cfg.lanes = 16;
        const std::size_t n = 10000 + trial; // exercise partial lane blocks
        CHECK(rampgen_codes(cfg, n) == rampgen_codes_parallel(cfg, n));
    }
}

TEST_CASE("rampgen accumulator advances by inc modulo 2^32") {
    // Skipping k samples is the same as seeding the accumulator k*inc later.
    RampGenConfig cfg;
    cfg.inc = 0x9e3779b9u;
    cfg.gain = 40000;
    const std::size_t skip = 1234, n = 4096;
    const auto full = rampgen_codes(cfg, skip + n);
    RampGenConfig shifted = cfg;
    shifted.acc_seed = cfg.acc_seed +
                       static_cast<std::uint32_t>(skip) * cfg.inc; // mod 2^32
    const auto tail = rampgen_codes(shifted, n);
    for (std::size_t i = 0; i < n; ++i) CHECK(full[skip + i] == tail[i]);
}

TEST_CASE("rampgen monotone between wraps with expected wrap count") {
    RampGenConfig cfg;
    cfg.inc = 43603729; // ~100 MHz at 9.85 GSPS
    cfg.gain = 1u << 15;
    const std::size_t n = 1u << 20;
    const auto codes = rampgen_codes(cfg, n);
    std::size_t wraps = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (codes[i + 1] < codes[i]) {
            ++wraps;
        }
    }
    const double expected =
        static_cast<double>(n) * cfg.inc / 4294967296.0;
    CHECK(std::abs(static_cast<double>(wraps) - expected) <= 1.0 + 1e-9);
}

TEST_CASE("rampgen rejects bad registers") {
    RampGenConfig cfg;
    cfg.inc = 0;
    CHECK_THROWS_AS((void)rampgen_codes(cfg, 4), OutOfRange);
    cfg.inc = 1;
    cfg.dac_bits = 17;
    CHECK_THROWS_AS((void)rampgen_codes(cfg, 4), InvalidArgument);
}
