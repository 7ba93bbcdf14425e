import math

import numpy as np
import pytest

import fockport as fp


def test_version():
    assert fp.__version__ == "0.1.0"


def test_rotation_is_unitary_and_matches_d():
    rng = np.random.default_rng(7)
    a = rng.normal(size=21) + 1j * rng.normal(size=21)
    a /= np.linalg.norm(a)
    out = fp.rotate(a, 0.9)
    assert np.linalg.norm(out) == pytest.approx(1.0, abs=1e-12)

    col = fp.wigner_d_column(20, 0, math.pi / 2)
    assert np.all(np.abs(col[1::2]) < 1e-12)
    assert fp.wigner_d(2, 1, 0, 0.3) == pytest.approx(-math.sin(0.3) / math.sqrt(2), abs=1e-14)


def test_peak_and_balanced_fidelity():
    peak = fp.resource("j0", 20, math.radians(85.5))
    half = fp.resource("j0", 20, math.pi / 2)
    assert fp.fidelity(3.0, peak, 19, parity_correction=True) == pytest.approx(0.993, abs=0.005)
    assert fp.fidelity(3.0, half, 19, parity_correction=True) == pytest.approx(0.498, abs=0.005)


def test_outcomes_and_unreachable():
    half = fp.resource("j0", 20, math.pi / 2)
    rows = fp.outcomes(0.0, half)
    assert rows["probability"].sum() == pytest.approx(1.0, abs=1e-10)
    assert math.isnan(rows["fidelity"][1])
    with pytest.raises(fp.UnreachableOutcome):
        fp.fidelity(0.0, half, 1)

    ideal = fp.resource("ideal", 30, 0.0)
    res = fp.outcomes(1.0, ideal)
    assert np.allclose(res["fidelity"], res["bound"], atol=1e-12)


def test_two_point_region():
    lo, hi = fp.high_fidelity_region(3.0, 21)
    assert (lo, hi) == (12, 15)
    two = fp.resource("2pt", 21, math.pi / 2)
    assert max(fp.fidelity(3.0, two, q) for q in range(lo, hi + 1)) > 0.8
    assert fp.average_fidelity(3.0, two) == pytest.approx(0.6634836945033803, rel=1e-10)


def test_beta_q_and_quality():
    assert math.degrees(fp.find_beta_q(20)) == pytest.approx(85.0)
    assert abs(fp.find_beta_q(40) - fp.beta_q(40)) <= math.radians(0.5) + 1e-12
    q = fp.quality(fp.resource("j0", 20, fp.beta_q(20)))
    assert q["zero_count"] == 0


def test_bad_input_raises_value_error():
    with pytest.raises(ValueError):
        fp.resource("j0", 21, 0.3)
    with pytest.raises(ValueError):
        fp.resource("7pt", 20, 0.3)
    with pytest.raises(ValueError):
        fp.wigner_d(2, 0.25, 0, 0.3)


def test_figure_blocks():
    fig = fp.figure(7)
    block = fig["blocks"][0]
    data = block["data"]
    f = data[:, block["columns"].index("fidelity")]
    beta = data[:, block["columns"].index("beta_deg")]
    assert beta[np.nanargmax(f)] == pytest.approx(85.5)
