from fractions import Fraction

import numpy as np
import pytest
from numpy.testing import assert_allclose

from models.exceptions import InvalidQuantumNumbersError
from models.radial import (
    RadialState,
    laguerre_rule,
    r2_expectation,
    radial_moment,
    radial_moment_quadrature,
    radial_overlap_quadrature,
    radial_wavefunction,
)

LEVELS = [(n, l, Z) for n in range(1, 7) for l in range(n) for Z in (1, 2, 3)]


def test_ground_state_closed_form():
    r = np.linspace(0.0, 10.0, 41)
    assert_allclose(radial_wavefunction(RadialState(1, 0), r), 2 * np.exp(-r), rtol=1e-14)


def test_2p_closed_form():
    r = np.linspace(0.0, 20.0, 41)
    expected = r * np.exp(-r / 2) / (2 * np.sqrt(6))
    assert_allclose(radial_wavefunction(RadialState(2, 1), r), expected, rtol=1e-13, atol=1e-300)


def test_scalar_in_scalar_out():
    value = radial_wavefunction(RadialState(2, 0), 1.0)
    assert isinstance(value, float), f"expected a float, got {type(value).__name__}"


def test_negative_radius_is_rejected():
    with pytest.raises(ValueError):
        radial_wavefunction(RadialState(1, 0), -0.1)


@pytest.mark.parametrize("n, l, Z", [(0, 0, 1), (2, 2, 1), (2, -1, 1), (1, 0, 0)])
def test_invalid_states(n, l, Z):
    with pytest.raises(InvalidQuantumNumbersError):
        RadialState(n, l, Z)


def test_r2_expectation_values():
    assert r2_expectation(1, 0) == 3, "<r^2> of 1s is 3 a0^2"
    assert r2_expectation(2, 1) == 30
    assert r2_expectation(2, 0, Z=2) == Fraction(42, 4)


@pytest.mark.parametrize("n, l, Z", LEVELS)
def test_normalization(n, l, Z):
    state = RadialState(n, l, Z)
    norm = radial_moment_quadrature(state, 0)
    assert abs(norm - 1) <= 1e-12, f"{state}: norm {norm}"


@pytest.mark.parametrize("n, l, Z", LEVELS)
def test_r2_quadrature_matches_closed_form(n, l, Z):
    closed = float(r2_expectation(n, l, Z))
    numeric = radial_moment_quadrature(RadialState(n, l, Z), 2)
    assert_allclose(numeric, closed, rtol=1e-10, err_msg=f"<r^2> for n={n} l={l} Z={Z}")


@pytest.mark.parametrize("k", [-2, -1, 1, 2])
def test_other_moments(k):
    for n in range(1, 5):
        for l in range(n):
            closed = float(radial_moment(n, l, 2, k))
            numeric = radial_moment_quadrature(RadialState(n, l, 2), k)
            assert_allclose(numeric, closed, rtol=1e-10, err_msg=f"<r^{k}> for n={n} l={l}")


def test_unwired_moment_raises():
    with pytest.raises(ValueError):
        radial_moment(2, 1, 1, 3)


@pytest.mark.parametrize("n", range(2, 6))
def test_adjacent_l_linear_overlap(n):
    for l in range(n - 1):
        lower, upper = RadialState(n, l), RadialState(n, l + 1)
        # the r^3 overlap between adjacent l has magnitude (3/2) n sqrt(n^2 - l_>^2)
        magnitude = abs(radial_overlap_quadrature(lower, upper, k=1))
        assert_allclose(magnitude, 1.5 * n * np.sqrt(n * n - (l + 1) ** 2), rtol=1e-10)


def test_overlap_needs_shared_charge():
    with pytest.raises(InvalidQuantumNumbersError):
        radial_overlap_quadrature(RadialState(2, 0, Z=1), RadialState(2, 0, Z=2))


@pytest.mark.parametrize("Z", [1, 3])
@pytest.mark.parametrize("l", range(6))
def test_orthonormal_across_levels(l, Z):
    for n in range(l + 1, 7):
        for n2 in range(l + 1, 7):
            overlap = radial_overlap_quadrature(RadialState(n, l, Z), RadialState(n2, l, Z))
            assert abs(overlap - (n == n2)) < 1e-11, f"<{n}{l}|{n2}{l}> = {overlap}"


@pytest.mark.parametrize("n, l, Z", LEVELS)
def test_node_count(n, l, Z):
    r = np.linspace(1e-6, 60 * n / Z, 20001)
    values = radial_wavefunction(RadialState(n, l, Z), r)
    values = values[np.abs(values) > 1e-12 * np.abs(values).max()]
    assert np.count_nonzero(np.diff(np.sign(values))) == n - l - 1


def test_laguerre_rule_is_read_only():
    x, w = laguerre_rule(8)
    with pytest.raises(ValueError):
        x[0] = 1.0
    assert_allclose(w.sum(), 1.0, rtol=1e-13)
