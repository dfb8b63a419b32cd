"""Perturbing potentials, each expanded as a polynomial in (r, cos theta).

Strengths are in Rydberg and Bohr-radius units: Ry/a0 for the linear
potential, Ry/a0^2 for the quadratic forms, a0 for z0 and d.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import isfinite
from numbers import Real
from typing import ClassVar, Tuple, Union

from .exceptions import InvalidPotentialError


@dataclass(frozen=True)
class PolynomialTerm:
    coefficient: Real  # Ry / a0^r_power
    r_power: int  # power of r
    cos_power: int  # power of cos(theta)


def _require_finite(**values: Real):
    for name, value in values.items():
        if not isfinite(float(value)):
            raise InvalidPotentialError(f"{name}={value} must be finite")


def lennard_jones_coupling(d: Real) -> Real:
    """gamma of the wall potential at distance d (a0): -2 (a0/2d)^3 Ry/a0^2.

    With this coupling and beta^2 = 2 the generalized van der Waals shift
    reproduces the wall shift, whose ground-state value is -(a0/d)^3 Ry.
    """
    if not d > 0:
        raise InvalidPotentialError(f"wall distance d={d} must be positive")
    d = Fraction(d) if isinstance(d, int) else d
    return -2 / (2 * d) ** 3


@dataclass(frozen=True)
class Linear:
    strength: Real  # lambda_linear, Ry/a0
    name: ClassVar[str] = "linear"

    def __post_init__(self):
        _require_finite(strength=self.strength)

    def expand(self) -> Tuple[PolynomialTerm, ...]:
        return (PolynomialTerm(self.strength, 1, 1),)

    def __str__(self) -> str:
        return f"linear(lambda={self.strength})"


@dataclass(frozen=True)
class Quadratic:
    strength: Real  # lambda, Ry/a0^2
    name: ClassVar[str] = "quadratic"

    def __post_init__(self):
        _require_finite(strength=self.strength)

    def expand(self) -> Tuple[PolynomialTerm, ...]:
        return (PolynomialTerm(self.strength, 2, 2),)

    def __str__(self) -> str:
        return f"quadratic(lambda={self.strength})"


@dataclass(frozen=True)
class DisplacedQuadratic:
    strength: Real  # lambda, Ry/a0^2
    z0: Real  # displacement along z, a0
    name: ClassVar[str] = "dq"

    def __post_init__(self):
        _require_finite(strength=self.strength, z0=self.z0)

    def expand(self) -> Tuple[PolynomialTerm, ...]:
        # lambda (z - z0)^2 = lambda z^2 - 2 lambda z0 z + lambda z0^2
        lam, z0 = self.strength, self.z0
        return (
            PolynomialTerm(lam, 2, 2),
            PolynomialTerm(-2 * lam * z0, 1, 1),
            PolynomialTerm(lam * z0 * z0, 0, 0),
        )

    def __str__(self) -> str:
        return f"dq(lambda={self.strength}, z0={self.z0})"


@dataclass(frozen=True)
class GeneralizedVdW:
    gamma: Real  # Ry/a0^2
    beta_squared: Real  # anisotropy, dimensionless
    name: ClassVar[str] = "vdw"

    def __post_init__(self):
        _require_finite(gamma=self.gamma, beta_squared=self.beta_squared)
        if self.beta_squared < 0:
            raise InvalidPotentialError(f"beta^2={self.beta_squared} must be non-negative")

    @classmethod
    def from_beta(cls, gamma: Real, beta: Real) -> "GeneralizedVdW":
        return cls(gamma, beta * beta)

    def expand(self) -> Tuple[PolynomialTerm, ...]:
        # gamma (x^2 + y^2 + beta^2 z^2) = gamma r^2 + gamma (beta^2 - 1) z^2
        return (
            PolynomialTerm(self.gamma, 2, 0),
            PolynomialTerm(self.gamma * (self.beta_squared - 1), 2, 2),
        )

    def __str__(self) -> str:
        return f"vdw(gamma={self.gamma}, beta^2={self.beta_squared})"


@dataclass(frozen=True)
class LennardJones:
    d: Real  # wall distance, a0
    name: ClassVar[str] = "lj"

    def __post_init__(self):
        _require_finite(d=self.d)
        if not self.d > 0:
            raise InvalidPotentialError(f"wall distance d={self.d} must be positive")

    def as_vdw(self) -> GeneralizedVdW:
        return GeneralizedVdW(lennard_jones_coupling(self.d), 2)

    def expand(self) -> Tuple[PolynomialTerm, ...]:
        return self.as_vdw().expand()

    def __str__(self) -> str:
        return f"lj(d={self.d})"


@dataclass(frozen=True)
class Constant:
    value: Real  # Ry
    name: ClassVar[str] = "constant"

    def __post_init__(self):
        _require_finite(value=self.value)

    def expand(self) -> Tuple[PolynomialTerm, ...]:
        return (PolynomialTerm(self.value, 0, 0),)

    def __str__(self) -> str:
        return f"constant({self.value})"


PotentialSpec = Union[Linear, Quadratic, DisplacedQuadratic, GeneralizedVdW, LennardJones, Constant]


def is_parity_even(potential: PotentialSpec) -> bool:
    """True when the potential is even under r -> -r, so states of opposite parity never mix."""
    return all(term.cos_power % 2 == 0 for term in potential.expand() if term.coefficient != 0)
