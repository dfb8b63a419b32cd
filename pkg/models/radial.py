"""Hydrogenic radial functions R_{n,l}(r), closed-form radial moments and their quadrature.

Units are fixed: lengths in Bohr radii (a0), so R carries a0^(-3/2).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Tuple, Union

import numpy as np
from scipy.special import gammaln, roots_laguerre

from .exceptions import InvalidQuantumNumbersError, QuadratureConvergenceError

logger = logging.getLogger(__name__)

DEFAULT_RADIAL_NODES = 64
MAX_RADIAL_NODES = 512
RADIAL_TOLERANCE = 1e-12

ArrayLike = Union[float, np.ndarray]


@dataclass(frozen=True)
class RadialState:
    n: int  # principal quantum number
    l: int  # orbital angular momentum, 0 <= l <= n-1
    Z: int = 1  # nuclear charge

    def __post_init__(self):
        if self.n < 1:
            raise InvalidQuantumNumbersError(f"n={self.n} must be positive")
        if not 0 <= self.l < self.n:
            raise InvalidQuantumNumbersError(f"l={self.l} must satisfy 0 <= l <= n-1={self.n - 1}")
        if self.Z < 1:
            raise InvalidQuantumNumbersError(f"Z={self.Z} must be a positive integer")

    @property
    def length_scale(self) -> float:
        """r = length_scale * x with x = 2Zr/(n a0)."""
        return self.n / (2 * self.Z)

    @property
    def normalization(self) -> float:
        n, l = self.n, self.l
        log_norm = 0.5 * (
            3 * np.log(2 * self.Z / n) + gammaln(n - l) - np.log(2 * n) - gammaln(n + l + 1)
        )
        return float(np.exp(log_norm))


def _generalized_laguerre(degree: int, alpha: int, x: np.ndarray) -> np.ndarray:
    """L_degree^(alpha)(x) by the three-term recurrence."""
    previous = np.ones_like(x)
    if degree == 0:
        return previous
    current = 1.0 + alpha - x
    for k in range(1, degree):
        previous, current = current, ((2 * k + 1 + alpha - x) * current - (k + alpha) * previous) / (k + 1)
    return current


def radial_polynomial(state: RadialState, x: ArrayLike) -> np.ndarray:
    """R_{n,l} without its exponential: N x^l L_{n-l-1}^{(2l+1)}(x), with x = 2Zr/(n a0)."""
    x = np.asarray(x, dtype=float)
    laguerre = _generalized_laguerre(state.n - state.l - 1, 2 * state.l + 1, x)
    return state.normalization * x**state.l * laguerre


def radial_wavefunction(state: RadialState, r: ArrayLike) -> ArrayLike:
    """Normalized hydrogenic R_{n,l}(r), r in a0, result in a0^(-3/2).

    Raises:
        ValueError: if any r is negative.
    """
    r_array = np.asarray(r, dtype=float)
    if np.any(r_array < 0):
        raise ValueError(f"r must be non-negative, got min {r_array.min()}")
    x = r_array / state.length_scale
    values = radial_polynomial(state, x) * np.exp(-x / 2)
    return float(values) if values.ndim == 0 else values


def _check_level(n: int, l: int, Z: int):
    if n < 1 or Z < 1:
        raise InvalidQuantumNumbersError(f"n={n} and Z={Z} must be positive")
    if not 0 <= l < n:
        raise InvalidQuantumNumbersError(f"l={l} must satisfy 0 <= l <= n-1={n - 1}")


def r2_expectation(n: int, l: int, Z: int = 1) -> Fraction:
    """<r^2>_{n,l} = (a0^2/Z^2)(n^2/2)[5n^2 + 1 - 3l(l+1)], exact, in a0^2."""
    _check_level(n, l, Z)
    return Fraction(n * n * (5 * n * n + 1 - 3 * l * (l + 1)), 2 * Z * Z)


def radial_moment(n: int, l: int, Z: int, k: int) -> Fraction:
    """Exact <r^k>_{n,l} for k in -2..2, in a0^k."""
    _check_level(n, l, Z)
    if k == -2:
        return Fraction(2 * Z * Z, n**3 * (2 * l + 1))
    if k == -1:
        return Fraction(Z, n * n)
    if k == 0:
        return Fraction(1)
    if k == 1:
        return Fraction(3 * n * n - l * (l + 1), 2 * Z)
    if k == 2:
        return r2_expectation(n, l, Z)
    raise ValueError(f"no closed form wired for k={k}; use radial_moment_quadrature")


@lru_cache(maxsize=None)
def laguerre_rule(nodes: int) -> Tuple[np.ndarray, np.ndarray]:
    """Gauss-Laguerre nodes and weights for the weight e^(-x); read-only and cached."""
    if nodes < 1:
        raise ValueError(f"node count must be positive, got {nodes}")
    x, w = roots_laguerre(nodes)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def _overlap_estimate(a: RadialState, b: RadialState, k: int, nodes: int) -> float:
    # shared Laguerre variable t = Zr(1/n_a + 1/n_b) absorbs both exponentials
    x, w = laguerre_rule(nodes)
    scale = a.n * b.n / (a.Z * (a.n + b.n))
    r = scale * x
    integrand = radial_polynomial(a, r / a.length_scale) * radial_polynomial(b, r / b.length_scale) * r ** (2 + k)
    return float(scale * np.dot(w, integrand))


def radial_overlap_quadrature(
    a: RadialState,
    b: RadialState,
    k: int = 0,
    nodes: int = DEFAULT_RADIAL_NODES,
    tol: float = RADIAL_TOLERANCE,
) -> float:
    """Integral of R_a R_b r^(2+k) dr for two states sharing Z, in a0^k.

    The node count is doubled until two successive estimates agree to ``tol``
    (relative, with a floor of 1).

    Raises:
        QuadratureConvergenceError: if MAX_RADIAL_NODES is reached first.
    """
    if a.Z != b.Z:
        raise InvalidQuantumNumbersError(f"radial overlaps need a shared Z; got {a.Z} and {b.Z}")
    if k < -2:
        raise ValueError(f"k={k} makes the radial integrand non-integrable at the origin")
    coarse = _overlap_estimate(a, b, k, nodes)
    while True:
        fine = _overlap_estimate(a, b, k, 2 * nodes)
        if abs(fine - coarse) <= tol * max(1.0, abs(fine)):
            return fine
        nodes *= 2
        logger.debug("radial quadrature %s/%s k=%d refined to %d nodes", a, b, k, 2 * nodes)
        if 2 * nodes > MAX_RADIAL_NODES:
            raise QuadratureConvergenceError(f"radial integral <{a}|r^{k}|{b}>", coarse, fine, tol)
        coarse = fine


def radial_moment_quadrature(
    state: RadialState, k: int, nodes: int = DEFAULT_RADIAL_NODES, tol: float = RADIAL_TOLERANCE
) -> float:
    """<r^k> of a single state by Gauss-Laguerre quadrature in x = 2Zr/(n a0)."""
    return radial_overlap_quadrature(state, state, k, nodes=nodes, tol=tol)


if __name__ == "__main__":
    ground = RadialState(1, 0)
    assert abs(radial_wavefunction(ground, 0.0) - 2.0) < 1e-14, "R_10(0) should be 2"
    for state in (RadialState(1, 0), RadialState(2, 1), RadialState(3, 2, Z=2)):
        closed = float(r2_expectation(state.n, state.l, state.Z))
        numeric = radial_moment_quadrature(state, 2)
        assert abs(closed - numeric) <= 1e-10 * closed, f"{state}: {closed} vs {numeric}"
        print(f"✅ <r^2> for {state} = {closed}")
