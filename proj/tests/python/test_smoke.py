"""Smoke tests for the python bindings."""

import math

import pytest

import serrodyne as sd


def test_ideal_phase_endpoints():
    spec = sd.SawtoothSpec(ramp_freq_hz=1e6, shift_index=1)
    assert sd.ideal_phase(spec, 0.0) == pytest.approx(-math.pi)
    assert sd.ideal_phase(spec, 0.5e-6) == pytest.approx(0.0, abs=1e-12)


def test_sideband_power_analytic():
    assert sd.sideband_power_analytic(1.0, 1) == 1.0
    assert sd.sideband_power_analytic(0.5, 0) == pytest.approx(4 / math.pi**2)


def test_modulate_ideal_serrodyne():
    spec = sd.SawtoothSpec(ramp_freq_hz=1e6)
    wave = sd.sample_ideal(spec, 256e6, 1)
    spectrum = sd.modulate(wave)
    m = sd.metrics(spectrum, 1e6)
    assert m.conversion_loss_db < 1e-8
    assert m.suppression_unbounded or m.suppression_db > 80


def test_sampling_penalty_at_the_paper_threshold():
    opts = sd.SweepOptions()
    opts.min_samples = 4096
    rows = sd.sweep([0.11e9], 1, sd.TransferFunction.flat(), 1e9, opts)
    assert not rows[0].error
    assert rows[0].best.conversion_loss_db == pytest.approx(1.0, abs=0.05)


def test_transfer_function_round_trip():
    tf = sd.load_table("1e6,0,0\n1e9,-6.0206,0\n")
    h = sd.evaluate(tf, 2e9)
    assert abs(h) == pytest.approx(0.5, rel=1e-4)


def test_rampgen_lane_equivalence():
    cfg = sd.RampGenConfig(inc=43603729, gain=32768)
    assert sd.rampgen_codes(cfg, 10000) == sd.rampgen_codes_parallel(cfg, 10000)


def test_freq_to_inc_register_map():
    assert sd.freq_to_inc(100e6, 9.85e9) == 43603729
    assert sd.freq_to_inc(9.85e9 / 16, 9.85e9) == 2**28


def test_cavity_modes():
    cavity = sd.CavityModel(0.1, 0.5, math.inf, 200e3, {1: 30.0, 2: 15.0})
    assert cavity.fsr_hz() == pytest.approx(1.499e9, rel=1e-3)
    nu_h = sd.higher_order_mode_offset(cavity)
    assert nu_h == pytest.approx(221.22e6, rel=1e-3)


def test_lock_shift_worst_case():
    assert sd.lock_shift_worst_case(10.0, 0.1, 200e3) == pytest.approx(1e3)


def test_lock_shift_sweep_cancellation():
    cavity = sd.CavityModel(0.1, 0.5, math.inf, 200e3, {1: 30.0, 2: 15.0})
    cfg = sd.PdhConfig(25e6, 1.082, 200e3)
    rows = sd.lock_shift_sweep(
        [cavity.fsr_hz()], cavity, sd.serrodyne_measured_spectrum(), cfg
    )
    assert abs(rows[0].shift_hz) < 1.0


def test_errors_surface_as_python_exceptions():
    spec = sd.SawtoothSpec(ramp_freq_hz=3.14159e8)
    with pytest.raises(RuntimeError):
        sd.sample_ideal(spec, 1e9, 1)
