import math

import pytest

import fluxcool as fc


def reference_drive(phi_rf=8.35, f_ghz=0.005, detuning=0.05, waveform=fc.Waveform.SYMMETRIC):
    return fc.Drive(waveform, phi_rf, fc.TWO_PI * f_ghz, detuning)


def test_reference_steady_state_cools():
    m = fc.Model()
    s = fc.steady_state(m, reference_drive())
    assert math.isclose(sum(s["p"]), 1.0, abs_tol=1e-12)
    assert s["p"][1] < fc.equilibrium_p11(m, 0.05)
    assert s["t_eff"] < m.temperature / 3


def test_generator_columns_sum_to_zero():
    g = fc.generator(fc.Model(), reference_drive())
    scale = max(abs(v) for row in g for v in row)
    for c in range(4):
        assert abs(sum(g[r][c] for r in range(4))) <= 1e-14 * scale


def test_driven_rate_reduces_to_static_rate():
    m = fc.Model()
    c = fc.build_channel(m, reference_drive(phi_rf=0.0), fc.Channel.C12)
    assert math.isclose(fc.mdlz_rate(c, fc.Waveform.SYMMETRIC, fc.TWO_PI * 0.005), fc.static_rate(c), rel_tol=1e-12)


def test_optimum_near_reference_amplitude():
    phi, p11, interior = fc.optimal_amplitude(fc.Model(), 0.05, fc.TWO_PI * 0.005, fc.Method.ORDINARY)
    assert abs(phi - 8.35) <= 0.05
    assert interior


def test_errors_carry_their_category():
    m = fc.Model()
    with pytest.raises(fc.FluxcoolError, match="^domain"):
        fc.temperature_from_millikelvin(0.0)
    c = fc.build_channel(m, reference_drive(phi_rf=1.0), fc.Channel.C12)
    with pytest.raises(fc.FluxcoolError, match="^not-reached"):
        fc.lz_probability(reference_drive(phi_rf=1.0), c)


def test_presets():
    names = fc.figure_presets()
    assert names[0] == "fig3" and names[-1] == "fig15" and len(names) == 13
