import math
import os

import pytest

import tscarma

CONFIG = os.path.join(os.path.dirname(__file__), "..", "..", "examples_configs", "reference_example.json")


def test_specfun_values():
    assert tscarma.specfun.gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-12)
    assert tscarma.specfun.expint(1, 1.0) == pytest.approx(0.21938393439552029, rel=1e-10)
    assert tscarma.specfun.zeta(2.0) == pytest.approx(math.pi**2 / 6, rel=1e-10)


def test_model_and_decomposition():
    m = tscarma.make_ptss(0.5, 1.0)
    assert m.is_subordinator
    assert m.levy_density(1.0) == pytest.approx(math.exp(-1.0), rel=1e-14)
    d = tscarma.decompose([3, 2], [3, 1])
    assert d.lambdas == pytest.approx([-1.0, -2.0], abs=1e-10)
    assert d.residues == pytest.approx([2.0, -1.0], abs=1e-10)
    assert d.integrals() == pytest.approx((1.5, 11 / 12), rel=1e-12)


def test_bad_spec_raises():
    with pytest.raises(tscarma.Error):
        tscarma.decompose([0, -1], [1])
    with pytest.raises(tscarma.ValidationError):
        tscarma.make_ptss(1.5, 1.0)


def test_moments_and_paths():
    m = tscarma.make_ptss(0.5, 1.0)
    tm = tscarma.truncated_moments(m, 100)
    assert tm.m1 == pytest.approx(math.sqrt(math.pi), rel=1e-12)
    assert tm.m2 - tm.m2_n == pytest.approx(tm.sigma_n_sq, abs=1e-12)
    grid, values = tscarma.simulate_path(m, [3, 2], [3, 1], 10.0, 10.0, 50, 0.5, seed=3)
    assert len(grid) == len(values) == 21
    assert min(values) >= -1e-9
    again = tscarma.simulate_path(m, [3, 2], [3, 1], 10.0, 10.0, 50, 0.5, seed=3)
    assert again[1] == values


def test_skeleton_and_histogram():
    m = tscarma.make_ptss(0.5, 1.0)
    times, sizes = tscarma.sample_skeleton(m, 1.0, 0.0, 100, seed=1)
    assert times == sorted(times)
    assert all(s > 0 for s in sizes)
    text = tscarma.emit_density_data([0.1, 0.2, 0.2, 0.9], 4)
    assert text.startswith("bin_left,bin_right,density\n") and text.endswith("\n")


def test_cli_round_trip():
    code, out, err = tscarma.run_cli(["validate", "--config", CONFIG])
    assert code == 0, err
    assert "lambda: -1,-2" in out
    code, _, _ = tscarma.run_cli(["nope"])
    assert code == 1
