from fractions import Fraction
from math import sqrt

import numpy as np
import pytest
from numpy.testing import assert_allclose

from commands.verify import SUITE_Z0
from models.angular import HalfInt
from models.exceptions import InvalidQuantumNumbersError, QuadratureConvergenceError
from models.oracle import (
    QuadratureGrid,
    degenerate_subspace_shifts,
    m_conservation_check,
    matrix_element,
    subspace_eigenvalues,
    subspace_matrix,
)
from models.perturb import closed_form_shifts
from models.potentials import (
    Constant,
    DisplacedQuadratic,
    GeneralizedVdW,
    LennardJones,
    Linear,
    Quadratic,
    is_parity_even,
)
from models.states import QuantumNumbers, coupled_state, level_subspaces

POTENTIALS = [
    Linear(0.2),
    Quadratic(0.7),
    Quadratic(-1.1),
    DisplacedQuadratic(0.7, 1.3),
    DisplacedQuadratic(-0.4, 0.5),
    GeneralizedVdW(0.4, 2.25),
    LennardJones(50.0),
    Constant(0.25),
]


def _agree(observed, expected, tol=1e-9):
    return all(abs(o - float(e)) <= max(tol * abs(float(e)), 1e-12) for o, e in zip(observed, expected))


class TestGrid:
    def test_build_defaults(self):
        grid = QuadratureGrid.build(2)
        assert (grid.radial_nodes, grid.polar_nodes, grid.azimuthal_nodes) == (64, 14, 32)
        assert grid.refined() == QuadratureGrid(128, 28, 64)

    def test_azimuthal_resolution(self):
        with pytest.raises(ValueError):
            QuadratureGrid.build(3, azimuthal=14)

    def test_negative_l(self):
        with pytest.raises(InvalidQuantumNumbersError):
            QuadratureGrid.build(-1)

    def test_weights(self, grid_for):
        grid = grid_for(1)
        assert_allclose(grid.polar_weights.sum() * grid.azimuthal_weight * grid.azimuthal_nodes, 4 * np.pi, rtol=1e-14)


class TestMatrixElement:
    def test_constant_is_identity(self, grid_for):
        matrix = subspace_matrix(3, "3/2", "-1/2", 1, Constant(2.0), grid_for(2))
        assert_allclose(matrix, 2 * np.eye(2), atol=1e-12)

    def test_no_potential(self, grid_for):
        matrix = subspace_matrix(2, "1/2", "1/2", 1, None, grid_for(1))
        assert not np.any(matrix)

    def test_parity_even_has_no_off_diagonal(self, grid_for):
        for potential in (Quadratic(1.0), GeneralizedVdW(1.0, 3.0), LennardJones(20.0)):
            matrix = subspace_matrix(3, "3/2", "1/2", 1, potential, grid_for(2))
            assert abs(matrix[0, 1]) < 1e-12, f"{potential}: {matrix[0, 1]}"

    def test_quadratic_diagonal(self, grid_for):
        matrix = subspace_matrix(2, "3/2", "3/2", 1, Quadratic(1), grid_for(1))
        assert_allclose(matrix.real, [[6.0]], rtol=1e-12)

    def test_hermitian(self, grid_for):
        grid = grid_for(2)
        states = [coupled_state(QuantumNumbers(3, l, "3/2", "1/2")) for l in (1, 2)]
        for potential in (Linear(1.0), DisplacedQuadratic(1.0, 0.8)):
            upper = matrix_element(states[0], states[1], potential, grid)
            lower = matrix_element(states[1], states[0], potential, grid)
            assert abs(upper - np.conj(lower)) < 1e-12, f"{potential}: {upper} vs {lower}"

    def test_needs_shared_level(self, grid_for):
        with pytest.raises(InvalidQuantumNumbersError):
            matrix_element(
                coupled_state(QuantumNumbers(1, 0, "1/2", "1/2")),
                coupled_state(QuantumNumbers(2, 0, "1/2", "1/2")),
                Quadratic(1.0),
                grid_for(1),
            )

    def test_coarse_grid_fails_refinement(self):
        state = coupled_state(QuantumNumbers(3, 2, "5/2", "1/2"))
        with pytest.raises(QuadratureConvergenceError):
            matrix_element(state, state, Quadratic(1.0), QuadratureGrid(2, 4, 12))


class TestReferenceValues:
    def test_linear_n2(self, grid_for):
        shifts = degenerate_subspace_shifts(2, "1/2", "1/2", 1, Linear(1.0), grid_for(1))
        assert_allclose(shifts, [sqrt(3), -sqrt(3)], rtol=1e-10)

    def test_displaced_quadratic_n2(self, grid_for):
        shifts = degenerate_subspace_shifts(2, "1/2", "1/2", 1, DisplacedQuadratic(1.0, 1.0), grid_for(1))
        assert_allclose(shifts, [17.0, 9.0], rtol=1e-10)

    def test_wall_2p(self, grid_for):
        d = 5.0
        matrix = subspace_matrix(2, "3/2", "1/2", 1, LennardJones(d), grid_for(1))
        assert matrix.shape == (1, 1)
        assert_allclose(matrix[0, 0].real, -88 / (2 * d) ** 3, rtol=1e-10)

    def test_eigenvalues_of_1x1(self):
        assert subspace_eigenvalues(np.array([[3.0 + 0j]])) == [3.0]


@pytest.mark.parametrize("Z", [1, 2])
@pytest.mark.parametrize("n", range(1, 5))
def test_closed_form_agrees_with_quadrature(n, Z, grid_for):
    grid = grid_for(n - 1)
    for potential in POTENTIALS:
        if isinstance(potential, LennardJones) and Z != 1:
            continue
        for j, m in level_subspaces(n):
            expected = [s.value for s in closed_form_shifts(n, j, m, Z, potential)]
            observed = degenerate_subspace_shifts(n, j, m, Z, potential, grid)
            assert len(observed) == len(expected)
            assert _agree(observed, expected), f"n={n} Z={Z} j={j} m={m} {potential}: {observed} vs {expected}"


@pytest.mark.parametrize("z0", SUITE_Z0)
@pytest.mark.parametrize("n", range(1, 4))
def test_displaced_quadratic_over_suite_offsets(n, z0, grid_for):
    potential = DisplacedQuadratic(0.7, z0)
    for j, m in level_subspaces(n):
        expected = [s.value for s in closed_form_shifts(n, j, m, 1, potential)]
        observed = degenerate_subspace_shifts(n, j, m, 1, potential, grid_for(n - 1))
        assert _agree(observed, expected), f"n={n} j={j} m={m} z0={z0}: {observed} vs {expected}"


@pytest.mark.parametrize("n", range(2, 4))
@pytest.mark.parametrize(
    "potential",
    [p for p in POTENTIALS if is_parity_even(p)] + [DisplacedQuadratic(0.7, 0.0)],
    ids=str,
)
def test_parity_even_potentials_do_not_mix_l(potential, n, grid_for):
    for j, m in level_subspaces(n):
        matrix = subspace_matrix(n, j, m, 1, potential, grid_for(n - 1))
        if matrix.shape == (2, 2):
            assert abs(matrix[0, 1]) < 1e-10, f"n={n} j={j} m={m}: {matrix[0, 1]}"


def test_exact_inputs_reach_the_oracle(grid_for):
    potential = DisplacedQuadratic(Fraction(1, 3), Fraction(3, 2))
    expected = closed_form_shifts(3, "3/2", "-3/2", 1, potential)
    observed = degenerate_subspace_shifts(3, "3/2", "-3/2", 1, potential, grid_for(2))
    assert _agree(observed, [s.value for s in expected])


class TestMConservation:
    @pytest.mark.parametrize("n", range(1, 4))
    @pytest.mark.parametrize("potential", POTENTIALS, ids=str)
    def test_every_j_up_to_n3(self, potential, n, grid_for):
        for twice_j in range(1, 2 * n, 2):
            report = m_conservation_check(n, HalfInt(twice_j), 1, potential, grid_for(n - 1))
            assert report.passed, f"n={n} j={twice_j}/2 {potential}: {report.max_cross_m} at {report.worst_pair}"

    @pytest.mark.parametrize("potential", POTENTIALS, ids=str)
    def test_axially_symmetric_potentials_conserve_m(self, potential, grid_for):
        report = m_conservation_check(3, "3/2", 1, potential, grid_for(2))
        assert report.passed, f"{potential}: {report.max_cross_m} at {report.worst_pair}"
        assert report.worst_pair is not None

    def test_single_state_level(self, grid_for):
        report = m_conservation_check(1, "1/2", 1, Quadratic(1.0), grid_for(0))
        assert report.passed and report.max_cross_m < 1e-12

    def test_missing_j(self):
        with pytest.raises(InvalidQuantumNumbersError):
            m_conservation_check(1, "3/2", 1, Quadratic(1.0))
