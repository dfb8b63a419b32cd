"""Coupled-basis states |n l j m> as two-component spinors.

For fixed (n, j, m) the degenerate partners are the multiplets with
l = j - 1/2 (TYPE_ONE) and l = j + 1/2 (TYPE_TWO); l = 0 gives the s-wave
doublet. Component 0 is spin up and carries Y_l^(m-1/2); component 1 is spin
down and carries Y_l^(m+1/2).
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterator, List, Tuple, Union

import numpy as np

from .angular import HALF, ExactValue, HalfInt, HalfIntLike
from .exceptions import InvalidQuantumNumbersError
from .radial import RadialState, radial_wavefunction

ArrayLike = Union[float, np.ndarray]


class SpinorVariant(Enum):
    TYPE_ONE = "type_one"  # l = j - 1/2, l != 0
    TYPE_TWO = "type_two"  # l = j + 1/2
    S_WAVE = "s_wave"  # l = 0, j = 1/2


@dataclass(frozen=True)
class QuantumNumbers:
    n: int  # principal quantum number
    l: int  # orbital angular momentum
    j: HalfInt  # total angular momentum, half-integer
    m: HalfInt  # projection of j
    Z: int = 1  # nuclear charge

    def __post_init__(self):
        object.__setattr__(self, "j", HalfInt.of(self.j))
        object.__setattr__(self, "m", HalfInt.of(self.m))
        if self.n < 1 or self.Z < 1:
            raise InvalidQuantumNumbersError(f"n={self.n} and Z={self.Z} must be positive")
        if not 0 <= self.l <= self.n - 1:
            raise InvalidQuantumNumbersError(f"l={self.l} must satisfy 0 <= l <= n-1={self.n - 1}")
        if self.j.is_integer or self.j.twice_value < 1:
            raise InvalidQuantumNumbersError(f"j={self.j} must be a half-integer >= 1/2")
        if abs(self.j.twice_value - 2 * self.l) != 1:
            raise InvalidQuantumNumbersError(f"j={self.j} cannot couple with l={self.l} and spin 1/2")
        if self.m.is_integer or abs(self.m.twice_value) > self.j.twice_value:
            raise InvalidQuantumNumbersError(f"m={self.m} must be a half-integer with |m| <= j={self.j}")

    @property
    def sort_key(self) -> Tuple[int, int, int, int]:
        return (self.n, self.l, self.j.twice_value, self.m.twice_value)

    def __str__(self) -> str:
        return f"|n={self.n} l={self.l} j={self.j} m={self.m} Z={self.Z}>"


@dataclass(frozen=True)
class SpinorComponent:
    coefficient: ExactValue  # exact amplitude in front of R_{n,l} Y_l^ml
    ml: int  # azimuthal index of the spherical harmonic


@dataclass(frozen=True)
class CoupledSpinor:
    quantum_numbers: QuantumNumbers
    variant: SpinorVariant
    components: Tuple[SpinorComponent, SpinorComponent] = field(repr=False)

    @property
    def l(self) -> int:
        return self.quantum_numbers.l

    @property
    def parity(self) -> int:
        return -1 if self.l % 2 else 1

    @property
    def radial_state(self) -> RadialState:
        qn = self.quantum_numbers
        return RadialState(qn.n, qn.l, qn.Z)

    def norm_squared(self) -> Fraction:
        """Sum of squared component amplitudes, exact."""
        return sum((c.coefficient.radicand for c in self.components), Fraction(0))


def coupled_state(qn: QuantumNumbers) -> CoupledSpinor:
    """Build the coupled spinor of ``qn`` with exact coefficients."""
    j, m = qn.j.value, qn.m.value
    ml_up, ml_down = int(qn.m - HALF), int(qn.m + HALF)
    if qn.l == 0:
        half = Fraction(1, 2)
        return CoupledSpinor(
            qn,
            SpinorVariant.S_WAVE,
            (
                SpinorComponent(ExactValue.from_rational(m + half), 0),
                SpinorComponent(ExactValue.from_rational(half - m), 0),
            ),
        )
    if qn.j.twice_value == 2 * qn.l + 1:
        up = ExactValue.from_sqrt((j + m) / (2 * j))
        down = ExactValue.from_sqrt((j - m) / (2 * j))
        variant = SpinorVariant.TYPE_ONE
    elif qn.j.twice_value == 2 * qn.l - 1:
        up = ExactValue.from_sqrt((j - m + 1) / (2 * (j + 1)))
        down = -ExactValue.from_sqrt((j + m + 1) / (2 * (j + 1)))
        variant = SpinorVariant.TYPE_TWO
    else:
        raise InvalidQuantumNumbersError(f"inconsistent (l, j) pairing in {qn}")
    return CoupledSpinor(qn, variant, (SpinorComponent(up, ml_up), SpinorComponent(down, ml_down)))


def spherical_harmonic(l: int, m: int, theta: ArrayLike, phi: ArrayLike) -> np.ndarray:
    """Y_l^m(theta, phi) with the Condon-Shortley phase.

    Uses the normalized associated-Legendre recurrence, which stays bounded
    for every l. Returns zeros when |m| > l.
    """
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    shape = np.broadcast(theta, phi).shape
    if l < 0:
        raise InvalidQuantumNumbersError(f"l={l} must be non-negative")
    if abs(m) > l:
        return np.zeros(shape, dtype=complex)
    mu = abs(m)
    x = np.cos(theta)
    s = np.sin(theta)
    p_mm = np.full(x.shape, 1.0 / np.sqrt(4 * np.pi))
    for k in range(1, mu + 1):
        p_mm = -np.sqrt((2 * k + 1) / (2 * k)) * s * p_mm
    if l == mu:
        legendre = p_mm
    else:
        previous, current = p_mm, x * np.sqrt(2 * mu + 3) * p_mm
        for degree in range(mu + 2, l + 1):
            a = np.sqrt((4 * degree * degree - 1) / (degree * degree - mu * mu))
            b = np.sqrt(((degree - 1) ** 2 - mu * mu) / (4 * (degree - 1) ** 2 - 1))
            previous, current = current, a * (x * current - b * previous)
        legendre = current
    y = legendre * np.exp(1j * mu * phi)
    if m < 0:
        y = (-1) ** mu * np.conj(y)
    return np.broadcast_to(y, shape).astype(complex)


def evaluate_spinor(s: CoupledSpinor, r: ArrayLike, theta: ArrayLike, phi: ArrayLike) -> np.ndarray:
    """Both spinor components at (r, theta, phi); shape (2, *broadcast shape), a0^(-3/2).

    Raises:
        ValueError: if r < 0 or theta lies outside [0, pi].
    """
    r = np.asarray(r, dtype=float)
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    if np.any(r < 0):
        raise ValueError("r must be non-negative")
    if np.any(theta < 0) or np.any(theta > np.pi):
        raise ValueError("theta must lie in [0, pi]")
    radial = np.asarray(radial_wavefunction(s.radial_state, r))
    shape = np.broadcast(r, theta, phi).shape
    values = np.zeros((2,) + shape, dtype=complex)
    for index, component in enumerate(s.components):
        if component.coefficient:
            values[index] = float(component.coefficient) * radial * spherical_harmonic(
                s.l, component.ml, theta, phi
            )
    return values


def _check_level(n: int, j: HalfInt, Z: int):
    if n < 1 or Z < 1:
        raise InvalidQuantumNumbersError(f"n={n} and Z={Z} must be positive")
    if j.is_integer or j.twice_value < 1:
        raise InvalidQuantumNumbersError(f"j={j} must be a half-integer >= 1/2")
    if j.twice_value > 2 * n - 1:
        raise InvalidQuantumNumbersError(f"no level with j={j} exists for n={n} (j <= n - 1/2)")


def degenerate_subspace(n: int, j: HalfIntLike, m: HalfIntLike, Z: int = 1) -> List[CoupledSpinor]:
    """States sharing (n, j, m), in ascending l so index 0 is phi1 whenever both exist."""
    j, m = HalfInt.of(j), HalfInt.of(m)
    _check_level(n, j, Z)
    ls = [l for l in (int(j - HALF), int(j + HALF)) if l <= n - 1]
    return [coupled_state(QuantumNumbers(n, l, j, m, Z)) for l in ls]


def level_subspaces(n: int) -> Iterator[Tuple[HalfInt, HalfInt]]:
    """(j, m) labels of the degenerate subspaces of level n, ordered by (2j, 2m)."""
    for twice_j in range(1, 2 * n, 2):
        j = HalfInt(twice_j)
        for m in j.projections():
            yield j, m


def level_states(n: int, Z: int = 1) -> List[QuantumNumbers]:
    """All 2n^2 coupled states of level n, ordered by (l, 2j, 2m)."""
    states = [
        QuantumNumbers(n, l, j, m, Z)
        for j, m in level_subspaces(n)
        for l in (int(j - HALF), int(j + HALF))
        if l <= n - 1
    ]
    return sorted(states, key=lambda qn: qn.sort_key)
