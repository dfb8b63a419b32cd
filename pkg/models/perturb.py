"""Closed-form first-order energy shifts of hydrogen-like levels in the coupled basis.

Energies are in Rydberg, lengths in Bohr radii. Every formula stays in exact
rational arithmetic while its inputs are ints or Fractions and falls back to
floats as soon as a float strength or an irrational root enters.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real
from typing import List, Optional, Tuple

from scipy.constants import Boltzmann, c, fine_structure, m_e, m_p, nano, physical_constants

from .angular import HALF, ExactValue, HalfInt, HalfIntLike, gaunt
from .exceptions import InvalidPotentialError, InvalidQuantumNumbersError, RegimeError
from .potentials import (
    Constant,
    DisplacedQuadratic,
    GeneralizedVdW,
    LennardJones,
    Linear,
    PotentialSpec,
    Quadratic,
    lennard_jones_coupling,
)
from .radial import r2_expectation
from .states import QuantumNumbers, coupled_state, level_states

logger = logging.getLogger(__name__)

FINE_STRUCTURE_ALPHA2 = fine_structure**2
NORMAL_PRESSURE = 101325.0  # Pa
NORMAL_TEMPERATURE = 293.15  # K
BOHR_RADIUS = physical_constants["Bohr radius"][0]  # m
BOUND_STATE_LIFETIME = 1e-9  # s
LAMB_SHIFT_S_SCALE = 1e-6  # Ry, times 1/n^3
LAMB_SHIFT_OTHER_SCALE = 1e-9  # Ry, times 1/n^3

PLUS, MINUS = "+", "-"

__all__ = [
    "EnergyShift",
    "RegimeReport",
    "closed_form_shifts",
    "cos2_angular_factor",
    "displaced_quadratic_shift",
    "fine_structure_energy",
    "hermitian2x2_eigenvalues",
    "lennard_jones_coupling",
    "lennard_jones_shift",
    "level_shifts",
    "linear_shift",
    "quadratic_shift",
    "regime_check",
    "vdw_shift",
    "y00_contribution",
    "y20_contribution",
]


@dataclass(frozen=True)
class EnergyShift:
    value: Real  # Ry
    branch: Optional[str] = None  # "+" or "-" for paired results, "+" is the larger
    dominant_l: Optional[int] = None  # l the state connects to as the mixing vanishes

    def __post_init__(self):
        try:
            finite = math.isfinite(float(self.value))
        except OverflowError:
            finite = False
        if not finite:
            raise InvalidPotentialError(f"energy shift {self.value} is not finite; the potential strength is out of range")

    def __float__(self) -> float:
        return float(self.value)


def _exact(x: Real) -> Real:
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    return Fraction(x) if isinstance(x, int) else x


def _sqrt(x: Real) -> Real:
    """Exact root when x is a rational perfect square, float otherwise."""
    if isinstance(x, Fraction):
        root = ExactValue.from_sqrt(x)
        return root.to_fraction() if root.is_rational() else float(root)
    return math.sqrt(x)


def _j_factor(j: HalfInt) -> Fraction:
    jv = j.value
    return jv * (jv + 1)


def _subspace_ls(n: int, j: HalfInt, m: HalfInt, Z: int) -> List[int]:
    """l values of the (n, j, m) subspace in ascending order, validating everything on the way."""
    if n < 1 or Z < 1:
        raise InvalidQuantumNumbersError(f"n={n} and Z={Z} must be positive")
    if j.is_integer or j.twice_value < 1:
        raise InvalidQuantumNumbersError(f"j={j} must be a half-integer >= 1/2")
    if j.twice_value > 2 * n - 1:
        raise InvalidQuantumNumbersError(f"no level with j={j} exists for n={n} (j <= n - 1/2)")
    ls = [l for l in (int(j - HALF), int(j + HALF)) if l <= n - 1]
    for l in ls:
        QuantumNumbers(n, l, j, m, Z)
    return ls


def fine_structure_energy(n: int, j: HalfIntLike, Z: int = 1, alpha2: Optional[Real] = None) -> Real:
    """E_nj = -(Z^2/n^2)[1 + (Z^2 alpha^2/n)(1/(j+1/2) - 3/(4n))] in Ry."""
    j = HalfInt.of(j)
    if n < 1 or Z < 1:
        raise InvalidQuantumNumbersError(f"n={n} and Z={Z} must be positive")
    if j.is_integer or not 1 <= j.twice_value <= 2 * n - 1:
        raise InvalidQuantumNumbersError(f"j={j} must be a half-integer in [1/2, n-1/2={n}-1/2]")
    alpha2 = FINE_STRUCTURE_ALPHA2 if alpha2 is None else _exact(alpha2)
    bracket = 1 / (j.value + Fraction(1, 2)) - Fraction(3, 4 * n)
    return -Fraction(Z * Z, n * n) * (1 + alpha2 * Fraction(Z * Z, n) * bracket)


def linear_shift(
    n: int, j: HalfIntLike, m: HalfIntLike, strength: Real, Z: int = 1
) -> Tuple[EnergyShift, ...]:
    """Shifts of the (n, j, m) subspace under V = strength * z.

    Returns the pair (+|dE|, -|dE|) with
    dE = (strength/Z)(3n/4) m sqrt(n^2 - (j+1/2)^2) / (j(j+1)).
    A j = n-1/2 subspace has no partner to mix with and yields a single 0.
    """
    j, m = HalfInt.of(j), HalfInt.of(m)
    ls = _subspace_ls(n, j, m, Z)
    strength = _exact(strength)
    if len(ls) == 1:
        return (EnergyShift(0 * strength, None, ls[0]),)
    jp = j.value + Fraction(1, 2)
    root = _sqrt(n * n - jp * jp)
    magnitude = abs(strength * Fraction(3 * n, 4 * Z) * m.value / _j_factor(j) * root)
    return (EnergyShift(magnitude, PLUS, ls[0]), EnergyShift(-magnitude, MINUS, ls[1]))


def quadratic_shift(
    n: int, l: int, j: HalfIntLike, m: HalfIntLike, strength: Real, Z: int = 1
) -> EnergyShift:
    """strength * (n/2Z)^2 [5n^2 + 1 - 3l(l+1)] (1 - m^2/(j(j+1))), valid for l = 0 too."""
    qn = QuantumNumbers(n, l, j, m, Z)
    angular = 1 - qn.m.value**2 / _j_factor(qn.j)
    value = _exact(strength) * Fraction(n * n, 4 * Z * Z) * (5 * n * n + 1 - 3 * l * (l + 1)) * angular
    return EnergyShift(value, None, l)


def hermitian2x2_eigenvalues(h11: Real, h22: Real, h12_abs2: Real) -> Tuple[float, float]:
    """Eigenvalues (larger, smaller) of [[h11, h12], [h12*, h22]] given |h12|^2."""
    if h12_abs2 < 0:
        raise ValueError(f"|h12|^2={h12_abs2} must be non-negative")
    mean = 0.5 * (float(h11) + float(h22))
    root = math.hypot(0.5 * (float(h11) - float(h22)), math.sqrt(float(h12_abs2)))
    return mean + root, mean - root


def displaced_quadratic_shift(
    n: int, j: HalfIntLike, m: HalfIntLike, strength: Real, z0: Real, Z: int = 1
) -> Tuple[EnergyShift, ...]:
    """Shifts of the (n, j, m) subspace under V = strength * (z - z0)^2, descending.

    The "+" branch is always the larger value. Its dominant_l is the l it
    connects to as z0 -> 0: l = j - 1/2 for strength >= 0, l = j + 1/2 otherwise.
    For j = n - 1/2 the single value is strength*z0^2 plus the quadratic shift.
    """
    j, m = HalfInt.of(j), HalfInt.of(m)
    ls = _subspace_ls(n, j, m, Z)
    strength, z0 = _exact(strength), _exact(z0)
    if not (math.isfinite(float(strength)) and math.isfinite(float(z0))):
        raise InvalidPotentialError(f"strength={strength} and z0={z0} must be finite")
    offset = strength * z0 * z0
    if len(ls) == 1:
        diagonal = quadratic_shift(n, ls[0], j, m, strength, Z).value
        return (EnergyShift(offset + diagonal, None, ls[0]),)

    jj1, mv = _j_factor(j), m.value
    jp = j.value + Fraction(1, 2)
    scale = Fraction(n * n, 4 * Z * Z) * (1 - mv * mv / jj1)
    centre = 5 * n * n - 3 * jj1 + Fraction(1, 4)
    mixing = (2 * Z * z0 * mv / (jj1 - mv * mv)) ** 2 * (1 / (jp * jp) - Fraction(1, n * n))
    spread = 3 * jp * _sqrt(1 + mixing)
    lower_l = offset + strength * scale * (centre + spread)  # continues to l = j - 1/2
    upper_l = offset + strength * scale * (centre - spread)  # continues to l = j + 1/2
    if strength >= 0:
        return (EnergyShift(lower_l, PLUS, ls[0]), EnergyShift(upper_l, MINUS, ls[1]))
    return (EnergyShift(upper_l, PLUS, ls[1]), EnergyShift(lower_l, MINUS, ls[0]))


def vdw_shift(
    n: int,
    l: int,
    j: HalfIntLike,
    m: HalfIntLike,
    gamma: Real,
    beta: Optional[Real] = None,
    Z: int = 1,
    *,
    beta_squared: Optional[Real] = None,
) -> EnergyShift:
    """Shift under gamma (x^2 + y^2 + beta^2 z^2): gamma <r^2> plus the quadratic shift with strength gamma(beta^2 - 1).

    Pass either ``beta`` or ``beta_squared``.
    """
    if (beta is None) == (beta_squared is None):
        raise InvalidPotentialError("give exactly one of beta and beta_squared")
    b2 = _exact(beta) ** 2 if beta_squared is None else _exact(beta_squared)
    if b2 < 0:
        raise InvalidPotentialError(f"beta^2={b2} must be non-negative")
    gamma = _exact(gamma)
    anisotropic = quadratic_shift(n, l, j, m, gamma * (b2 - 1), Z).value
    return EnergyShift(gamma * r2_expectation(n, l, Z) + anisotropic, None, l)


def lennard_jones_shift(n: int, l: int, j: HalfIntLike, m: HalfIntLike, d: Real, Z: int = 1) -> EnergyShift:
    """-(1/2d)^3 (n^2/2)[5n^2 + 1 - 3l(l+1)][3 - m^2/(j(j+1))] Ry for a hydrogen atom at d a0 from a conducting wall."""
    if Z != 1:
        raise InvalidPotentialError(f"the wall shift is defined for hydrogen only, got Z={Z}")
    if not d > 0:
        raise InvalidPotentialError(f"wall distance d={d} must be positive")
    qn = QuantumNumbers(n, l, j, m, Z)
    d = _exact(d)
    radial = Fraction(n * n, 2) * (5 * n * n + 1 - 3 * l * (l + 1))
    angular = 3 - qn.m.value**2 / _j_factor(qn.j)
    return EnergyShift(-radial * angular / (2 * d) ** 3, None, l)


def _cos2_parts(l: int, j: HalfIntLike, m: HalfIntLike) -> Tuple[Fraction, Fraction]:
    # cos^2 = (2 sqrt(pi)/3) [(2/sqrt5) Y_2^0 + Y_0^0]
    spinor = coupled_state(QuantumNumbers(l + 1, l, j, m))
    y20_weight = ExactValue.from_sqrt(Fraction(16, 45), pi_power=1)
    y00_weight = ExactValue.from_sqrt(Fraction(4, 9), pi_power=1)
    y20, y00 = Fraction(0), Fraction(0)
    for component in spinor.components:
        if not component.coefficient:
            continue
        probability = component.coefficient.radicand
        ml = component.ml
        y20 += probability * (y20_weight * gaunt(l, ml, 2, 0, l, ml)).to_fraction()
        y00 += probability * (y00_weight * gaunt(l, ml, 0, 0, l, ml)).to_fraction()
    return y20, y00


def y20_contribution(l: int, j: HalfIntLike, m: HalfIntLike) -> Fraction:
    """Y_2^0 part of <l j m|cos^2(theta)|l j m>, exact."""
    return _cos2_parts(l, j, m)[0]


def y00_contribution(l: int, j: HalfIntLike, m: HalfIntLike) -> Fraction:
    """Y_0^0 part of <l j m|cos^2(theta)|l j m>; always 1/3."""
    return _cos2_parts(l, j, m)[1]


def cos2_angular_factor(l: int, j: HalfIntLike, m: HalfIntLike) -> Fraction:
    """<l j m|cos^2(theta)|l j m> from spinor coefficients and Gaunt integrals.

    Equals (1 - m^2/(j(j+1)))/2 for every valid (l, j, m).
    """
    y20, y00 = _cos2_parts(l, j, m)
    return y20 + y00


def closed_form_shifts(
    n: int, j: HalfIntLike, m: HalfIntLike, Z: int, potential: Optional[PotentialSpec]
) -> List[EnergyShift]:
    """First-order shifts of the (n, j, m) subspace, descending; ties keep ascending l."""
    j, m = HalfInt.of(j), HalfInt.of(m)
    ls = _subspace_ls(n, j, m, Z)
    if potential is None:
        return [EnergyShift(Fraction(0), None, l) for l in ls]
    if isinstance(potential, Linear):
        return list(linear_shift(n, j, m, potential.strength, Z))
    if isinstance(potential, DisplacedQuadratic):
        return list(displaced_quadratic_shift(n, j, m, potential.strength, potential.z0, Z))
    if isinstance(potential, Constant):
        shifts = [EnergyShift(_exact(potential.value), None, l) for l in ls]
    elif isinstance(potential, Quadratic):
        shifts = [quadratic_shift(n, l, j, m, potential.strength, Z) for l in ls]
    elif isinstance(potential, GeneralizedVdW):
        shifts = [
            vdw_shift(n, l, j, m, potential.gamma, Z=Z, beta_squared=potential.beta_squared) for l in ls
        ]
    elif isinstance(potential, LennardJones):
        shifts = [lennard_jones_shift(n, l, j, m, potential.d, Z) for l in ls]
    else:
        raise InvalidPotentialError(f"unsupported potential {potential!r}")
    return sorted(shifts, key=lambda s: -s.value)


def level_shifts(
    n: int, j: HalfIntLike, m: HalfIntLike, Z: int, potential: Optional[PotentialSpec]
) -> List[Tuple[int, EnergyShift]]:
    """Subspace shifts paired with the l each one carries, ordered by ascending l."""
    pairs = [(shift.dominant_l, shift) for shift in closed_form_shifts(n, j, m, Z, potential)]
    return sorted(pairs, key=lambda pair: pair[0])


@dataclass(frozen=True)
class RegimeReport:
    pressure: float  # Pa
    temperature: float  # K
    n: int
    density_ratio: float  # (P0/P)(T/T0)
    d_cubed_nm3: float  # nm^3
    d_nm: float  # nm
    d_a0: float  # a0
    wall_factor: float  # (a0/2d)^3
    wall_factor_threshold: float  # (a0/2d)^3 at normal conditions
    max_lennard_jones_shift: float  # Ry, largest |shift| over the level
    alpha2: float
    fine_structure_scale: float  # alpha^2/n^3, Ry
    lamb_shift_s: float  # Ry
    lamb_shift_other: float  # Ry
    hyperfine_scale: float  # alpha^2 m_e/m_p
    retardation_distance_m: float  # c tau
    atomic_hydrogen: bool
    fine_structure_dominates: bool
    hyperfine_negligible: bool
    retardation_negligible: bool

    @property
    def coupled_basis_applies(self) -> bool:
        return self.atomic_hydrogen and self.fine_structure_dominates and self.hyperfine_negligible

    def rows(self) -> List[Tuple[str, float, str]]:
        return [
            ("pressure", self.pressure, "Pa"),
            ("temperature", self.temperature, "K"),
            ("n", float(self.n), ""),
            ("(P0/P)(T/T0)", self.density_ratio, ""),
            ("d^3", self.d_cubed_nm3, "nm^3"),
            ("d", self.d_nm, "nm"),
            ("d", self.d_a0, "a0"),
            ("(a0/2d)^3", self.wall_factor, ""),
            ("(a0/2d)^3 at P0, T0", self.wall_factor_threshold, ""),
            ("max |dE_LJ|", self.max_lennard_jones_shift, "Ry"),
            ("alpha^2", self.alpha2, ""),
            ("alpha^2/n^3", self.fine_structure_scale, "Ry"),
            ("Lamb shift, l=0", self.lamb_shift_s, "Ry"),
            ("Lamb shift, l>0", self.lamb_shift_other, "Ry"),
            ("alpha^2 m_e/m_p", self.hyperfine_scale, ""),
            ("c tau", self.retardation_distance_m, "m"),
        ]

    def flags(self) -> List[Tuple[str, bool]]:
        return [
            ("atomic_hydrogen", self.atomic_hydrogen),
            ("fine_structure_dominates", self.fine_structure_dominates),
            ("hyperfine_negligible", self.hyperfine_negligible),
            ("retardation_negligible", self.retardation_negligible),
            ("coupled_basis_applies", self.coupled_basis_applies),
        ]


def _wall_factor(pressure: float, temperature: float) -> Tuple[float, float]:
    d_cubed = Boltzmann * temperature / pressure  # m^3
    d_a0 = d_cubed ** (1 / 3) / BOHR_RADIUS
    return d_cubed, (1 / (2 * d_a0)) ** 3


def regime_check(
    pressure: float = NORMAL_PRESSURE, temperature: float = NORMAL_TEMPERATURE, n: int = 1
) -> RegimeReport:
    """Scale comparison deciding whether the coupled-basis wall shift applies to a hydrogen gas.

    The gas spacing d follows the ideal-gas volume per atom, d^3 = kT/P.
    "Much less than" is read as a strict inequality.
    """
    if not (pressure > 0 and temperature > 0):
        raise RegimeError(f"pressure={pressure} Pa and temperature={temperature} K must be positive")
    if n < 1:
        raise InvalidQuantumNumbersError(f"n={n} must be positive")
    d_cubed, wall = _wall_factor(pressure, temperature)
    if not (0 < d_cubed < math.inf and math.isfinite(wall)):
        raise RegimeError(
            f"pressure={pressure} Pa and temperature={temperature} K give a spacing d^3={d_cubed} m^3 out of float range"
        )
    _, threshold = _wall_factor(NORMAL_PRESSURE, NORMAL_TEMPERATURE)
    d_m = d_cubed ** (1 / 3)
    d_a0 = d_m / BOHR_RADIUS
    try:
        max_shift = max(
            abs(float(lennard_jones_shift(qn.n, qn.l, qn.j, qn.m, d_a0).value)) for qn in level_states(n)
        )
    except InvalidPotentialError as error:
        raise RegimeError(f"pressure={pressure} Pa and temperature={temperature} K: {error}") from error
    density_ratio = (NORMAL_PRESSURE / pressure) * (temperature / NORMAL_TEMPERATURE)
    fine_scale = FINE_STRUCTURE_ALPHA2 / n**3
    hyperfine = FINE_STRUCTURE_ALPHA2 * m_e / m_p
    retardation = c * BOUND_STATE_LIFETIME
    logger.debug("regime at P=%g Pa, T=%g K: d=%g a0, (a0/2d)^3=%g", pressure, temperature, d_a0, wall)
    return RegimeReport(
        pressure=float(pressure),
        temperature=float(temperature),
        n=n,
        density_ratio=density_ratio,
        d_cubed_nm3=d_cubed / nano**3,
        d_nm=d_m / nano,
        d_a0=d_a0,
        wall_factor=wall,
        wall_factor_threshold=threshold,
        max_lennard_jones_shift=max_shift,
        alpha2=FINE_STRUCTURE_ALPHA2,
        fine_structure_scale=fine_scale,
        lamb_shift_s=LAMB_SHIFT_S_SCALE / n**3,
        lamb_shift_other=LAMB_SHIFT_OTHER_SCALE / n**3,
        hyperfine_scale=hyperfine,
        retardation_distance_m=retardation,
        atomic_hydrogen=density_ratio > 1,
        fine_structure_dominates=max_shift < fine_scale,
        hyperfine_negligible=hyperfine < wall,
        retardation_negligible=d_m < retardation,
    )
