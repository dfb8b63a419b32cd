"""Exact angular-momentum algebra.

Wigner 3j symbols and Gaunt coefficients are evaluated with arbitrary-precision
integers and returned as ``ExactValue`` (sign times the square root of a
rational, optionally times a power of pi under the root). Quantum numbers are
``HalfInt`` values stored as doubled integers, so no floating-point quantum
number ever enters the algebra.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, isqrt, pi, sqrt
from numbers import Rational
from typing import Iterator, Union

from .exceptions import InvalidQuantumNumbersError


@dataclass(frozen=True, order=True)
class HalfInt:
    twice_value: int  # 2j or 2m

    def __post_init__(self):
        if isinstance(self.twice_value, bool) or not isinstance(self.twice_value, int):
            raise TypeError(f"twice_value must be an int, got {self.twice_value!r}")

    @classmethod
    def of(cls, value: "HalfIntLike") -> "HalfInt":
        """Build from an int, a Fraction, a string such as ``"3/2"`` or another HalfInt."""
        if isinstance(value, HalfInt):
            return value
        if isinstance(value, bool):
            raise TypeError("booleans are not quantum numbers")
        if isinstance(value, int):
            return cls(2 * value)
        if isinstance(value, str):
            try:
                value = Fraction(value.strip())
            except ValueError as e:
                raise InvalidQuantumNumbersError(f"cannot parse {value!r} as a half-integer") from e
        if isinstance(value, Rational):
            twice = Fraction(value) * 2
            if twice.denominator != 1:
                raise InvalidQuantumNumbersError(f"{value} is not a multiple of 1/2")
            return cls(int(twice))
        raise TypeError(
            f"{value!r} ({type(value).__name__}) is not accepted as a quantum number; "
            "use int, Fraction or a string like '3/2'"
        )

    @property
    def value(self) -> Fraction:
        return Fraction(self.twice_value, 2)

    @property
    def is_integer(self) -> bool:
        return self.twice_value % 2 == 0

    def projections(self) -> Iterator["HalfInt"]:
        """Yield m = -j, -j+1, ..., +j."""
        if self.twice_value < 0:
            raise InvalidQuantumNumbersError(f"j={self} is negative")
        for twice_m in range(-self.twice_value, self.twice_value + 1, 2):
            yield HalfInt(twice_m)

    def __add__(self, other: "HalfIntLike") -> "HalfInt":
        return HalfInt(self.twice_value + HalfInt.of(other).twice_value)

    __radd__ = __add__

    def __sub__(self, other: "HalfIntLike") -> "HalfInt":
        return HalfInt(self.twice_value - HalfInt.of(other).twice_value)

    def __rsub__(self, other: "HalfIntLike") -> "HalfInt":
        return HalfInt(HalfInt.of(other).twice_value - self.twice_value)

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.twice_value)

    def __abs__(self) -> "HalfInt":
        return HalfInt(abs(self.twice_value))

    def __int__(self) -> int:
        if not self.is_integer:
            raise InvalidQuantumNumbersError(f"{self} is not an integer")
        return self.twice_value // 2

    def __float__(self) -> float:
        return self.twice_value / 2

    def __str__(self) -> str:
        if self.is_integer:
            return str(self.twice_value // 2)
        return f"{self.twice_value}/2"


HalfIntLike = Union[HalfInt, int, Fraction, str]

HALF = HalfInt(1)


def minus_one_power(exponent: HalfIntLike) -> int:
    """(-1)**exponent for an integer-valued exponent; half-integer exponents are rejected."""
    exponent = HalfInt.of(exponent)
    if not exponent.is_integer:
        raise InvalidQuantumNumbersError(f"(-1)^{exponent} is not real")
    return -1 if (exponent.twice_value // 2) % 2 else 1


def _is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


@dataclass(frozen=True)
class ExactValue:
    """sign * sqrt(radicand * pi**pi_power), with radicand a reduced rational."""

    sign: int  # -1, 0 or +1
    radicand: Fraction  # non-negative, lowest terms
    pi_power: int = 0  # power of pi carried under the root

    def __post_init__(self):
        radicand = Fraction(self.radicand)
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or +1, got {self.sign}")
        if radicand < 0:
            raise ValueError(f"radicand must be non-negative, got {radicand}")
        if (self.sign == 0) != (radicand == 0):
            raise ValueError("sign is zero exactly when the radicand is zero")
        object.__setattr__(self, "radicand", radicand)
        if radicand == 0:
            object.__setattr__(self, "pi_power", 0)

    @classmethod
    def zero(cls) -> "ExactValue":
        return cls(0, Fraction(0))

    @classmethod
    def one(cls) -> "ExactValue":
        return cls(1, Fraction(1))

    @classmethod
    def from_rational(cls, q: Union[int, Fraction]) -> "ExactValue":
        q = Fraction(q)
        return cls((q > 0) - (q < 0), q * q)

    @classmethod
    def from_sqrt(cls, q: Union[int, Fraction], pi_power: int = 0) -> "ExactValue":
        """The positive root sqrt(q * pi**pi_power)."""
        q = Fraction(q)
        if q < 0:
            raise ValueError(f"cannot take the square root of {q}")
        return cls(1 if q else 0, q, pi_power)

    @classmethod
    def from_signed_square(cls, s: Union[int, Fraction], pi_power: int = 0) -> "ExactValue":
        """Inverse of ``signed_square``: the value whose square is |s| with the sign of s."""
        s = Fraction(s)
        return cls((s > 0) - (s < 0), abs(s), pi_power)

    def signed_square(self) -> Fraction:
        """sign * radicand; the pi factor, if any, is left out."""
        return self.sign * self.radicand

    def is_rational(self) -> bool:
        return self.pi_power == 0 and _is_square(self.radicand.numerator) and _is_square(
            self.radicand.denominator
        )

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.sign * Fraction(isqrt(self.radicand.numerator), isqrt(self.radicand.denominator))

    def __mul__(self, other: Union["ExactValue", int, Fraction]) -> "ExactValue":
        if not isinstance(other, ExactValue):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = ExactValue.from_rational(other)
        sign = self.sign * other.sign
        if sign == 0:
            return ExactValue.zero()
        return ExactValue(sign, self.radicand * other.radicand, self.pi_power + other.pi_power)

    __rmul__ = __mul__

    def __truediv__(self, other: Union["ExactValue", int, Fraction]) -> "ExactValue":
        if not isinstance(other, ExactValue):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = ExactValue.from_rational(other)
        if other.sign == 0:
            raise ZeroDivisionError("division by an exact zero")
        if self.sign == 0:
            return ExactValue.zero()
        return ExactValue(
            self.sign * other.sign, self.radicand / other.radicand, self.pi_power - other.pi_power
        )

    def __neg__(self) -> "ExactValue":
        return ExactValue(-self.sign, self.radicand, self.pi_power)

    def __abs__(self) -> "ExactValue":
        return ExactValue(abs(self.sign), self.radicand, self.pi_power)

    def __bool__(self) -> bool:
        return self.sign != 0

    def __float__(self) -> float:
        if self.sign == 0:
            return 0.0
        return self.sign * sqrt(float(self.radicand) * pi**self.pi_power)

    def __str__(self) -> str:
        if self.sign == 0:
            return "0"
        prefix = "+" if self.sign > 0 else "-"
        if self.is_rational():
            return f"{prefix}{abs(self.to_fraction())}"
        num, den = self.radicand.numerator, self.radicand.denominator
        if self.pi_power > 0:
            num = f"{num}π" if self.pi_power == 1 else f"{num}π^{self.pi_power}"
        elif self.pi_power < 0:
            pi_part = "π" if self.pi_power == -1 else f"π^{-self.pi_power}"
            den = pi_part if den == 1 else f"{den}{pi_part}"
        if den == 1:
            return f"{prefix}√{num}"
        return f"{prefix}√({num}/{den})"


def _check_projection(j: HalfInt, m: HalfInt, label: str):
    if j.twice_value < 0:
        raise InvalidQuantumNumbersError(f"{label}: j={j} is negative")
    if abs(m.twice_value) > j.twice_value:
        raise InvalidQuantumNumbersError(f"{label}: |m|={abs(m)} exceeds j={j}")
    if (j.twice_value - m.twice_value) % 2:
        raise InvalidQuantumNumbersError(
            f"{label}: j={j} and m={m} mix integer and half-integer values"
        )


def triangle(j1: HalfIntLike, j2: HalfIntLike, j3: HalfIntLike) -> bool:
    """|j1 - j2| <= j3 <= j1 + j2 with an integer perimeter."""
    t1, t2, t3 = (HalfInt.of(j).twice_value for j in (j1, j2, j3))
    return abs(t1 - t2) <= t3 <= t1 + t2 and (t1 + t2 + t3) % 2 == 0


@lru_cache(maxsize=65536)
def _racah(t1: int, t2: int, t3: int, tm1: int, tm2: int, tm3: int) -> ExactValue:
    # doubled arguments; the caller guarantees m1+m2+m3 = 0 and the triangle
    a = (t1 + t2 - t3) // 2
    b = (t1 - t2 + t3) // 2
    c = (-t1 + t2 + t3) // 2
    perimeter = (t1 + t2 + t3) // 2
    delta = Fraction(factorial(a) * factorial(b) * factorial(c), factorial(perimeter + 1))
    projections = 1
    for t, tm in ((t1, tm1), (t2, tm2), (t3, tm3)):
        projections *= factorial((t + tm) // 2) * factorial((t - tm) // 2)

    shift1 = (t3 - t2 + tm1) // 2
    shift2 = (t3 - t1 - tm2) // 2
    upper1 = (t1 - tm1) // 2
    upper2 = (t2 + tm2) // 2
    k_min = max(0, -shift1, -shift2)
    k_max = min(a, upper1, upper2)
    total = Fraction(0)
    for k in range(k_min, k_max + 1):
        denominator = (
            factorial(k)
            * factorial(shift1 + k)
            * factorial(shift2 + k)
            * factorial(a - k)
            * factorial(upper1 - k)
            * factorial(upper2 - k)
        )
        total += Fraction(-1 if k % 2 else 1, denominator)

    phase = -1 if ((t1 - t2 - tm3) // 2) % 2 else 1
    return ExactValue.from_rational(phase * total) * ExactValue.from_sqrt(delta * projections)


def wigner3j(
    j1: HalfIntLike,
    j2: HalfIntLike,
    j3: HalfIntLike,
    m1: HalfIntLike,
    m2: HalfIntLike,
    m3: HalfIntLike,
) -> ExactValue:
    """Exact Wigner 3j symbol (j1 j2 j3; m1 m2 m3) from the Racah single sum.

    Raises:
        InvalidQuantumNumbersError: if some |m_i| > j_i or a pair (j_i, m_i)
            mixes integer and half-integer values.
    """
    j1, j2, j3, m1, m2, m3 = (HalfInt.of(x) for x in (j1, j2, j3, m1, m2, m3))
    for index, (j, m) in enumerate(((j1, m1), (j2, m2), (j3, m3)), start=1):
        _check_projection(j, m, f"column {index}")
    if m1.twice_value + m2.twice_value + m3.twice_value != 0:
        return ExactValue.zero()
    if not triangle(j1, j2, j3):
        return ExactValue.zero()
    return _racah(
        j1.twice_value, j2.twice_value, j3.twice_value,
        m1.twice_value, m2.twice_value, m3.twice_value,
    )


def tabulated_3j_l2l(l: int, m: HalfIntLike) -> ExactValue:
    """Closed form of (l 2 l; -m 0 m).

    (-1)^(l-m) * 2[3m^2 - l(l+1)] / sqrt((2l+3)(2l+2)(2l+1)(2l)(2l-1))
    """
    if l < 1:
        raise InvalidQuantumNumbersError(f"the tabulated (l 2 l) symbol needs l >= 1, got l={l}")
    m = HalfInt.of(m)
    if not m.is_integer:
        raise InvalidQuantumNumbersError(f"m={m} must be an integer for integer l={l}")
    m = int(m)
    if abs(m) > l:
        raise InvalidQuantumNumbersError(f"|m|={abs(m)} exceeds l={l}")
    denominator = (2 * l + 3) * (2 * l + 2) * (2 * l + 1) * (2 * l) * (2 * l - 1)
    phase = minus_one_power(l - m)
    return ExactValue.from_rational(phase * 2 * (3 * m * m - l * (l + 1))) * ExactValue.from_sqrt(
        Fraction(1, denominator)
    )


def gaunt(lp: int, mp: int, L: int, M: int, l: int, m: int) -> ExactValue:
    """Exact <Y_lp^mp | Y_L^M | Y_l^m> over the unit sphere (Condon-Shortley phases).

    The 1/sqrt(4 pi) factor stays under the root, so the result has pi_power -1
    unless it vanishes.
    """
    for label, (lv, mv) in (("l'", (lp, mp)), ("L", (L, M)), ("l", (l, m))):
        if lv < 0 or abs(mv) > lv:
            raise InvalidQuantumNumbersError(f"{label}: |m|={abs(mv)} exceeds l={lv}")
    if mp != M + m or (lp + L + l) % 2 or not triangle(lp, L, l):
        return ExactValue.zero()
    prefactor = ExactValue.from_sqrt(
        Fraction((2 * lp + 1) * (2 * L + 1) * (2 * l + 1), 4), pi_power=-1
    )
    return (
        minus_one_power(mp)
        * prefactor
        * wigner3j(lp, L, l, -mp, M, m)
        * wigner3j(lp, L, l, 0, 0, 0)
    )


def _phi1_j(j: HalfIntLike) -> HalfInt:
    j = HalfInt.of(j)
    if j.is_integer or j.twice_value < 3:
        raise InvalidQuantumNumbersError(f"j={j} must be a half-integer >= 3/2")
    return j


def phi1_reduced_3j_zero(j: HalfIntLike) -> ExactValue:
    """(j-1/2 2 j-1/2; 0 0 0) = (-1)^(j+1/2)/(2 sqrt 2) * sqrt((j+1/2)(j-1/2)/((j+1) j (j-1)))."""
    j = _phi1_j(j)
    jv = j.value
    radicand = Fraction(1, 8) * (jv + Fraction(1, 2)) * (jv - Fraction(1, 2)) / (
        (jv + 1) * jv * (jv - 1)
    )
    return minus_one_power(j + HALF) * ExactValue.from_sqrt(radicand)


def phi1_reduced_3j(j: HalfIntLike, m: HalfIntLike) -> ExactValue:
    """(j-1/2 2 j-1/2; -(m+1/2) 0 m+1/2) in closed form for j >= 3/2."""
    j = _phi1_j(j)
    m = HalfInt.of(m)
    _check_projection(j, m, "phi1")
    if abs((m + HALF).twice_value) > (j - HALF).twice_value:
        raise InvalidQuantumNumbersError(f"|m+1/2| exceeds l=j-1/2 for j={j}, m={m}")
    jv, mv = j.value, m.value
    half = Fraction(1, 2)
    numerator = 3 * (mv + half) ** 2 - (jv - half) * (jv + half)
    product = (jv + 1) * (jv + half) * jv * (jv - half) * (jv - 1)
    phase = minus_one_power(j - m - 1)
    return ExactValue.from_rational(phase * numerator) * ExactValue.from_sqrt(
        Fraction(1, 8) / product
    )


def clebsch_gordan(
    j1: HalfIntLike, m1: HalfIntLike, j2: HalfIntLike, m2: HalfIntLike, j: HalfIntLike, m: HalfIntLike
) -> ExactValue:
    """<j1 m1 j2 m2 | j m> = (-1)^(j1-j2+m) sqrt(2j+1) (j1 j2 j; m1 m2 -m)."""
    j, m = HalfInt.of(j), HalfInt.of(m)
    phase = minus_one_power(HalfInt.of(j1) - HalfInt.of(j2) + m)
    return phase * ExactValue.from_sqrt(j.twice_value + 1) * wigner3j(j1, j2, j, m1, m2, -m)



if __name__ == "__main__":
    checks = {
        "(0 0 0; 0 0 0)": (wigner3j(0, 0, 0, 0, 0, 0), ExactValue.one()),
        "(1 1 1; 1 0 0)": (wigner3j(1, 1, 1, 1, 0, 0), ExactValue.zero()),
        "(1 2 1; 0 0 0)": (wigner3j(1, 2, 1, 0, 0, 0), ExactValue.from_sqrt(Fraction(2, 15))),
        "gaunt(1,0,2,0,1,0)": (gaunt(1, 0, 2, 0, 1, 0), ExactValue.from_sqrt(Fraction(1, 5), -1)),
    }
    for label, (got, expected) in checks.items():
        assert got == expected, f"{label}: expected {expected}, got {got}"
        print(f"✅ {label} = {got}")
