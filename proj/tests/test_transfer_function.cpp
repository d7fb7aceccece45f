#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <sstream>

#include "serro/transfer_function.hpp"

#include "fft_probe.hpp"

using namespace serro;
namespace {
constexpr double pi = std::numbers::pi;

double rms(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s / v.size());
}
} // namespace

TEST_CASE("load_table parses a two-row stream") {
    std::istringstream in("1e6,0,0\n1e9,-3,0.1\n");
    const auto tf = load_table(in);
    REQUIRE(tf.points().size() == 2);
    CHECK(tf.points()[0].freq_hz == 1e6);
    CHECK(tf.points()[1].mag_db == -3.0);
    CHECK(tf.points()[1].phase_rad == 0.1);
}

TEST_CASE("load_table accepts header and comments, sorts rows") {
    std::istringstream in(
        "freq_hz,mag_db,phase_rad\n# comment\n2e9,-6,0\n1e6,0,0\n");
    const auto tf = load_table(in);
    REQUIRE(tf.points().size() == 2);
    CHECK(tf.points()[0].freq_hz == 1e6);
    CHECK(tf.points()[1].freq_hz == 2e9);
}

TEST_CASE("load_table error paths") {
    std::istringstream header_only("freq_hz,mag_db,phase_rad\n");
    CHECK_THROWS_AS((void)load_table(header_only), EmptyTable);

    std::istringstream dup("1e6,0,0\n1e6,-1,0\n");
    CHECK_THROWS_AS((void)load_table(dup), DuplicateFrequency);

    std::istringstream bad("1e6,0,0\n2e6,zzz,0\n");
    CHECK_THROWS_AS((void)load_table(bad), ParseError);

    std::istringstream cols("1e6,0\n");
    CHECK_THROWS_AS((void)load_table(cols), ParseError);
}

TEST_CASE("evaluate flat response") {
    const auto tf = TransferFunction::flat();
    for (double f : {0.0, 1.0, 1e9, 3.7e12}) {
        const auto h = evaluate(tf, f);
        CHECK(h.real() == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(h.imag() == 0.0);
    }
}

TEST_CASE("evaluate clamps beyond the table edges") {
    const TransferFunction tf({{1e9, -6.0206, 0.0}});
    CHECK(std::abs(evaluate(tf, 2e9)) == doctest::Approx(0.5).epsilon(1e-5));
    CHECK(std::abs(evaluate(tf, 1e3)) == doctest::Approx(0.5).epsilon(1e-5));
}

TEST_CASE("evaluate interpolates dB linearly against frequency") {
    const TransferFunction tf({{1e6, 0.0, 0.0}, {1e9, -20.0, 0.0}});
    const double mid = (1e6 + 1e9) / 2.0;
    // direct-formula oracle: halfway in Hz is halfway in dB
    CHECK(20.0 * std::log10(std::abs(evaluate(tf, mid))) ==
          doctest::Approx(-10.0).epsilon(1e-12));
}

TEST_CASE("compose identity, doubling and addition") {
    const auto flat = TransferFunction::flat();
    const TransferFunction x({{1e6, -2.0, 0.3}, {1e8, -8.0, -0.2}});

    const auto idx = compose(flat, x);
    for (const TfPoint& p : x.points()) {
        CHECK(std::abs(evaluate(idx, p.freq_hz)) ==
              doctest::Approx(std::abs(evaluate(x, p.freq_hz))).epsilon(1e-12));
    }

    const auto xx = compose(x, x);
    for (const TfPoint& p : xx.points())
        CHECK(p.mag_db ==
              doctest::Approx(2.0 * 20.0 *
                              std::log10(std::abs(evaluate(x, p.freq_hz))))
                  .epsilon(1e-12));

    const auto m3 = compose(TransferFunction::flat(-3.0),
                            TransferFunction::flat(-3.0));
    for (double f : {1e3, 1e6, 1e9})
        CHECK(20.0 * std::log10(std::abs(evaluate(m3, f))) ==
              doctest::Approx(-6.0).epsilon(1e-12));
}

TEST_CASE("compose is associative on a shared grid") {
    const TransferFunction a({{1e6, -1.0, 0.1}, {1e9, -3.0, 0.4}});
    const TransferFunction b({{1e6, -2.0, -0.2}, {1e9, -1.0, 0.1}});
    const TransferFunction c({{1e6, 0.5, 0.05}, {1e9, -0.5, -0.3}});
    const auto left = compose(compose(a, b), c);
    const auto right = compose(a, compose(b, c));
    for (double f : {1e6, 3e7, 1e9}) {
        const auto hl = evaluate(left, f);
        const auto hr = evaluate(right, f);
        CHECK(std::abs(hl - hr) <= 1e-12 * std::abs(hl));
    }
}

TEST_CASE("apply with a flat response is the identity") {
    SampledWaveform w{1e9, {}, WaveformUnit::Radians, 1};
    std::mt19937 rng(3);
    std::normal_distribution<double> dist(0.0, 1.0);
    for (int i = 0; i < 257; ++i) w.samples.push_back(dist(rng));

    const auto out = apply(TransferFunction::flat(), w);
    REQUIRE(out.samples.size() == w.samples.size());
    double err = 0.0;
    for (std::size_t i = 0; i < w.samples.size(); ++i)
        err += std::pow(out.samples[i] - w.samples[i], 2);
    CHECK(std::sqrt(err / w.samples.size()) <= 1e-12 * rms(w.samples));
}

TEST_CASE("apply with pure linear phase rotates the record") {
    const std::size_t n = 64;
    const double fs = 1e9;
    const int shift = 3;
    const double delay = shift / fs;
    // two points suffice: phase is linear in f and so is the interpolation
    const TransferFunction lin({{1e-3, 0.0, -2 * pi * 1e-3 * delay},
                                {fs, 0.0, -2 * pi * fs * delay}});

    SampledWaveform w{fs, {}, WaveformUnit::Radians, 1};
    std::mt19937 rng(4);
    std::normal_distribution<double> dist(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) w.samples.push_back(dist(rng));

    const auto out = apply(lin, w);
    for (std::size_t i = 0; i < n; ++i) {
        // delayed by `shift` samples, circularly
        CHECK(out.samples[(i + shift) % n] ==
              doctest::Approx(w.samples[i]).epsilon(1e-9).scale(1.0));
    }
}

TEST_CASE("apply brick wall keeps only the fundamental of a sawtooth") {
    const double fs = 256e6;
    const double fm = 1e6;
    SawtoothSpec spec{fm, 1, 1.6, 1.0};
    const auto w = sample_ideal(spec, fs, 1);
    const std::size_t n = w.samples.size();

    const TransferFunction wall(
        {{1.5 * fm - 1.0, 0.0, 0.0}, {1.5 * fm + 1.0, -600.0, 0.0}});
    const auto out = apply(wall, w);

    // oracle: project the record onto DC + first harmonic by direct DFT sums
    std::complex<double> c1{0.0, 0.0};
    double c0 = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double ang = -2 * pi * static_cast<double>(k) / n;
        c1 += w.samples[k] * std::complex<double>{std::cos(ang), std::sin(ang)};
        c0 += w.samples[k];
    }
    c1 /= static_cast<double>(n);
    c0 /= static_cast<double>(n);
    double err = 0.0, amp = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double ang = 2 * pi * static_cast<double>(k) / n;
        const double ref =
            c0 + 2.0 * (c1.real() * std::cos(ang) - c1.imag() * std::sin(ang));
        err += std::pow(out.samples[k] - ref, 2);
        amp = std::max(amp, std::abs(ref));
    }
    CHECK(std::sqrt(err / n) <= 1e-10);
    // analytic first-harmonic amplitude of the sawtooth is 2aN radians
    CHECK(2.0 * std::abs(c1) == doctest::Approx(2.0).epsilon(0.01));
}

TEST_CASE("apply preserves spectral power per bin (Parseval)") {
    const double fs = 1e9;
    SampledWaveform w{fs, {}, WaveformUnit::Radians, 1};
    std::mt19937 rng(5);
    std::normal_distribution<double> dist(0.0, 1.0);
    const std::size_t n = 200;
    for (std::size_t i = 0; i < n; ++i) w.samples.push_back(dist(rng));
    const auto tf = synth_bandpass(5e6, 2e8);
    const auto out = apply(tf, w);

    const auto in_bins = probe_rfft(w.samples);
    const auto out_bins = probe_rfft(out.samples);
    const double df = fs / static_cast<double>(n);
    for (std::size_t k = 0; k < in_bins.size(); ++k) {
        double h;
        if (k == 0 || (n % 2 == 0 && k == in_bins.size() - 1))
            h = evaluate(tf, df * k).real();
        else
            h = std::abs(evaluate(tf, df * k));
        CHECK(std::norm(out_bins[k]) ==
              doctest::Approx(h * h * std::norm(in_bins[k])).epsilon(1e-9).scale(1e-12));
    }
}

TEST_CASE("synth_bandpass hits the textbook corner values") {
    const auto tf = synth_bandpass(10e6, 4.2e9);

    const double mid = std::sqrt(10e6 * 4.2e9);
    CHECK(std::abs(20.0 * std::log10(std::abs(evaluate(tf, mid)))) <= 0.3);

    const double hi_db = 20.0 * std::log10(std::abs(evaluate(tf, 4.2e9)));
    CHECK(hi_db == doctest::Approx(-3.01).epsilon(0.04));

    CHECK(20.0 * std::log10(std::abs(evaluate(tf, 0.0))) <= -119.0);
}
