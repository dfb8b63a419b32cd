"""Brute-force quadrature oracle for perturbation matrices in a degenerate subspace.

Nothing here reads the closed-form shifts or exact 3j values: spinor
components, radial functions and spherical harmonics are evaluated pointwise
and integrated on a tensor-product grid of Gauss-Laguerre nodes in r,
Gauss-Legendre nodes in cos(theta) and a uniform trapezoid in phi.
"""

import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, Optional, Tuple

import numpy as np
from scipy.special import roots_legendre

from .angular import HALF, HalfInt, HalfIntLike
from .exceptions import InvalidQuantumNumbersError, QuadratureConvergenceError
from .potentials import PotentialSpec
from .radial import DEFAULT_RADIAL_NODES, laguerre_rule, radial_polynomial
from .states import (
    CoupledSpinor,
    QuantumNumbers,
    coupled_state,
    degenerate_subspace,
    evaluate_spinor,
    spherical_harmonic,
)

logger = logging.getLogger(__name__)

DEFAULT_AZIMUTHAL_NODES = 32
ORACLE_TOLERANCE = 1e-10


@lru_cache(maxsize=None)
def _legendre_rule(nodes: int) -> Tuple[np.ndarray, np.ndarray]:
    x, w = roots_legendre(nodes)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


@dataclass(frozen=True)
class QuadratureGrid:
    radial_nodes: int
    polar_nodes: int
    azimuthal_nodes: int
    cos_theta: np.ndarray = field(init=False, repr=False, compare=False)
    polar_weights: np.ndarray = field(init=False, repr=False, compare=False)
    phi: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        for name in ("radial_nodes", "polar_nodes", "azimuthal_nodes"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name}={getattr(self, name)} must be positive")
        cos_theta, polar_weights = _legendre_rule(self.polar_nodes)
        object.__setattr__(self, "cos_theta", cos_theta)
        object.__setattr__(self, "polar_weights", polar_weights)
        object.__setattr__(self, "phi", 2 * np.pi * np.arange(self.azimuthal_nodes) / self.azimuthal_nodes)

    @classmethod
    def build(
        cls,
        l_max: int,
        radial: int = DEFAULT_RADIAL_NODES,
        polar: Optional[int] = None,
        azimuthal: int = DEFAULT_AZIMUTHAL_NODES,
    ) -> "QuadratureGrid":
        """Grid for states up to l_max under potentials at most quadratic in cos(theta)."""
        if l_max < 0:
            raise InvalidQuantumNumbersError(f"l_max={l_max} must be non-negative")
        polar = 2 * (2 * l_max + 3) if polar is None else polar
        # phi integrands are exp(i k phi) with |k| <= 2 l_max + 1
        if azimuthal <= 2 * (2 * l_max + 1):
            raise ValueError(f"{azimuthal} azimuthal nodes cannot resolve l_max={l_max}")
        logger.debug("quadrature grid: %d radial, %d polar, %d azimuthal", radial, polar, azimuthal)
        return cls(radial, polar, azimuthal)

    def refined(self) -> "QuadratureGrid":
        return QuadratureGrid(2 * self.radial_nodes, 2 * self.polar_nodes, 2 * self.azimuthal_nodes)

    @property
    def azimuthal_weight(self) -> float:
        return 2 * np.pi / self.azimuthal_nodes

    @property
    def theta(self) -> np.ndarray:
        return np.arccos(self.cos_theta)


def _check_pair(bra: CoupledSpinor, ket: CoupledSpinor):
    a, b = bra.quantum_numbers, ket.quantum_numbers
    if (a.n, a.Z) != (b.n, b.Z):
        raise InvalidQuantumNumbersError(f"matrix elements need a shared (n, Z): {a} vs {b}")


def _radial_sum(bra: CoupledSpinor, ket: CoupledSpinor, r_power: int, nodes: int) -> float:
    x, w = laguerre_rule(nodes)
    a, b = bra.radial_state, ket.radial_state
    integrand = radial_polynomial(a, x) * radial_polynomial(b, x) * x ** (2 + r_power)
    return float(a.length_scale ** (3 + r_power) * np.dot(w, integrand))


def _angular_sum(bra: CoupledSpinor, ket: CoupledSpinor, cos_power: int, grid: QuadratureGrid) -> complex:
    theta = grid.theta[:, None]
    phi = grid.phi[None, :]
    weights = grid.polar_weights[:, None] * grid.azimuthal_weight
    factor = grid.cos_theta[:, None] ** cos_power
    total = 0j
    for left, right in zip(bra.components, ket.components):
        if not (left.coefficient and right.coefficient):
            continue
        y_left = spherical_harmonic(bra.l, left.ml, theta, phi)
        y_right = spherical_harmonic(ket.l, right.ml, theta, phi)
        integral = np.sum(weights * np.conj(y_left) * factor * y_right)
        total += float(left.coefficient) * float(right.coefficient) * integral
    return complex(total)


def _separated_element(
    bra: CoupledSpinor, ket: CoupledSpinor, v: Optional[PotentialSpec], grid: QuadratureGrid
) -> complex:
    if v is None:
        return 0j
    value = 0j
    for term in v.expand():
        if term.coefficient == 0:
            continue
        radial = _radial_sum(bra, ket, term.r_power, grid.radial_nodes)
        value += float(term.coefficient) * radial * _angular_sum(bra, ket, term.cos_power, grid)
    return value


def matrix_element(
    bra: CoupledSpinor,
    ket: CoupledSpinor,
    v: Optional[PotentialSpec],
    grid: QuadratureGrid,
    tol: float = ORACLE_TOLERANCE,
    check_refinement: bool = True,
) -> complex:
    """<bra|V|ket> in Ry by tensor-product quadrature, evaluated term by term.

    With ``check_refinement`` the element is recomputed on ``grid.refined()``.

    Raises:
        QuadratureConvergenceError: when refinement moves the element by more than
            ``tol`` (relative, floor 1).
    """
    _check_pair(bra, ket)
    coarse = _separated_element(bra, ket, v, grid)
    if check_refinement:
        fine = _separated_element(bra, ket, v, grid.refined())
        if abs(fine - coarse) > tol * max(1.0, abs(fine)):
            raise QuadratureConvergenceError(
                f"<{bra.quantum_numbers}|{v}|{ket.quantum_numbers}>", coarse, fine, tol
            )
    return coarse


def overlap(bra: CoupledSpinor, ket: CoupledSpinor, grid: QuadratureGrid) -> complex:
    """<bra|ket> by the full 3D sum over evaluated spinors."""
    _check_pair(bra, ket)
    x, w = laguerre_rule(grid.radial_nodes)
    scale = bra.radial_state.length_scale
    # undo the e^(-x) of the Laguerre weight; the spinors carry their own exponentials
    log_w = np.full_like(w, -np.inf)
    np.log(w, out=log_w, where=w > 0)
    r_weights = scale**3 * x**2 * np.exp(log_w + x)
    r = (scale * x)[:, None, None]
    theta = grid.theta[None, :, None]
    phi = grid.phi[None, None, :]
    weights = (
        r_weights[:, None, None] * grid.polar_weights[None, :, None] * grid.azimuthal_weight
    )
    left = evaluate_spinor(bra, r, theta, phi)
    right = evaluate_spinor(ket, r, theta, phi)
    return complex(np.sum(weights * np.sum(np.conj(left) * right, axis=0)))


def subspace_matrix(
    n: int,
    j: HalfIntLike,
    m: HalfIntLike,
    Z: int,
    v: Optional[PotentialSpec],
    grid: Optional[QuadratureGrid] = None,
    tol: float = ORACLE_TOLERANCE,
) -> np.ndarray:
    """Hermitian matrix of V over the (n, j, m) subspace, rows in ascending l."""
    states = degenerate_subspace(n, j, m, Z)
    grid = grid or QuadratureGrid.build(max(s.l for s in states))
    size = len(states)
    matrix = np.zeros((size, size), dtype=complex)
    for a in range(size):
        for b in range(a, size):
            element = matrix_element(states[a], states[b], v, grid, tol)
            matrix[a, b] = element
            matrix[b, a] = np.conj(element)
    return matrix


def subspace_eigenvalues(matrix: np.ndarray) -> List[float]:
    """Eigenvalues of a 1x1 or 2x2 hermitian matrix, descending."""
    if matrix.shape == (1, 1):
        return [float(matrix[0, 0].real)]
    h11, h22 = float(matrix[0, 0].real), float(matrix[1, 1].real)
    mean = 0.5 * (h11 + h22)
    root = math.hypot(0.5 * (h11 - h22), abs(matrix[0, 1]))
    return [mean + root, mean - root]


def degenerate_subspace_shifts(
    n: int,
    j: HalfIntLike,
    m: HalfIntLike,
    Z: int,
    v: Optional[PotentialSpec],
    grid: Optional[QuadratureGrid] = None,
    tol: float = ORACLE_TOLERANCE,
) -> List[float]:
    """First-order shifts of the (n, j, m) subspace from the quadrature matrix, descending."""
    return subspace_eigenvalues(subspace_matrix(n, j, m, Z, v, grid, tol))


@dataclass(frozen=True)
class MConservationReport:
    n: int
    j: HalfInt
    potential: str
    max_cross_m: float  # Ry
    worst_pair: Optional[Tuple[QuantumNumbers, QuantumNumbers]]
    threshold: float

    @property
    def passed(self) -> bool:
        return self.max_cross_m < self.threshold


def m_conservation_check(
    n: int,
    j: HalfIntLike,
    Z: int,
    v: Optional[PotentialSpec],
    grid: Optional[QuadratureGrid] = None,
    threshold: float = ORACLE_TOLERANCE,
) -> MConservationReport:
    """Largest |<n l' j m'|V|n l j m>| over m' != m, with the pair that reaches it."""
    j = HalfInt.of(j)
    states = [
        coupled_state(QuantumNumbers(n, l, j, m, Z))
        for m in j.projections()
        for l in (int(j - HALF), int(j + HALF))
        if 0 <= l <= n - 1
    ]
    if not states:
        raise InvalidQuantumNumbersError(f"no states with j={j} exist for n={n}")
    grid = grid or QuadratureGrid.build(max(s.l for s in states))
    worst, worst_pair = 0.0, None
    for a, bra in enumerate(states):
        for ket in states[a + 1:]:
            if bra.quantum_numbers.m == ket.quantum_numbers.m:
                continue
            size = abs(matrix_element(bra, ket, v, grid, check_refinement=False))
            if size > worst or worst_pair is None:
                worst, worst_pair = size, (bra.quantum_numbers, ket.quantum_numbers)
    report = MConservationReport(n, j, str(v), worst, worst_pair, threshold)
    if not report.passed:
        logger.warning("m is not conserved by %s: |%s| = %g", v, worst_pair, worst)
    return report
