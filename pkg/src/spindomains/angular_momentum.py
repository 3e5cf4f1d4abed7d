"""
Angular-momentum primitives for two coupled collective spins.

Half-integer quantum numbers are carried internally as doubled integers
(``2j``, ``2m``) so that equality and parity checks stay exact. Public
functions accept ordinary numbers (``1``, ``0.5``, ``Fraction(3, 2)``) and
convert them on entry.

Clebsch-Gordan coefficients follow the Condon-Shortley phase convention and
are evaluated from the closed Racah sum with log-factorial accumulation, so
that domains with several hundred spins do not overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Half = Union[int, float, Fraction]


class AngularMomentumError(ValueError):
    """Raised for quantum numbers that do not form a valid (j, m) pair."""


def twice(x: Half) -> int:
    """Return ``2 * x`` as an int, raising if ``x`` is not a half-integer."""
    if isinstance(x, float):
        d = 2 * x
        if not math.isfinite(d) or abs(d - round(d)) > 1e-9:
            raise AngularMomentumError(f"{x!r} is not a half-integer")
        return int(round(d))
    d = 2 * Fraction(x)
    if d.denominator != 1:
        raise AngularMomentumError(f"{x!r} is not a half-integer")
    return int(d)


@dataclass(frozen=True)
class SpinQuantum:
    """A (j, m) pair stored as doubled integers."""

    twice_j: int
    twice_m: int

    def __post_init__(self):
        _check_pair(self.twice_j, self.twice_m)

    @classmethod
    def of(cls, j: Half, m: Half) -> "SpinQuantum":
        return cls(twice(j), twice(m))

    @property
    def j(self) -> float:
        return self.twice_j / 2

    @property
    def m(self) -> float:
        return self.twice_m / 2


def _check_pair(tj: int, tm: int) -> None:
    if tj < 0:
        raise AngularMomentumError(f"negative total spin 2j={tj}")
    if (tj - tm) % 2:
        raise AngularMomentumError(f"parity mismatch between 2j={tj} and 2m={tm}")
    if abs(tm) > tj:
        raise AngularMomentumError(f"|m| > j for 2j={tj}, 2m={tm}")


def _lfact(n2: int) -> float:
    # log((n2/2)!) for an even doubled argument
    return math.lgamma(n2 // 2 + 1)


def clebsch_gordan_2(tj1: int, tj2: int, tm1: int, tm2: int, tj: int, tm: int) -> float:
    """Clebsch-Gordan coefficient with all arguments doubled.

    Returns ``<j1 m1; j2 m2 | j m>`` in the Condon-Shortley convention. Returns
    0 when the triangle rule or ``m = m1 + m2`` is violated; raises
    :class:`AngularMomentumError` when any (j, m) pair is malformed.
    """
    for a, b in ((tj1, tm1), (tj2, tm2), (tj, tm)):
        _check_pair(a, b)
    if tm != tm1 + tm2:
        return 0.0
    if tj < abs(tj1 - tj2) or tj > tj1 + tj2 or (tj1 + tj2 - tj) % 2:
        return 0.0

    log_pref = 0.5 * (
        math.log(tj + 1)
        + _lfact(tj + tj1 - tj2)
        + _lfact(tj - tj1 + tj2)
        + _lfact(tj1 + tj2 - tj)
        - _lfact(tj1 + tj2 + tj + 2)
        + _lfact(tj + tm)
        + _lfact(tj - tm)
        + _lfact(tj1 - tm1)
        + _lfact(tj1 + tm1)
        + _lfact(tj2 - tm2)
        + _lfact(tj2 + tm2)
    )

    # summation index k (undoubled) over the range where every factorial is >= 0
    k_min = max(0, (tj2 - tj - tm1) // 2, (tj1 - tj + tm2) // 2)
    k_max = min((tj1 + tj2 - tj) // 2, (tj1 - tm1) // 2, (tj2 + tm2) // 2)
    if k_min > k_max:
        return 0.0

    logs = []
    signs = []
    for k in range(k_min, k_max + 1):
        k2 = 2 * k
        denom = (
            _lfact(k2)
            + _lfact(tj1 + tj2 - tj - k2)
            + _lfact(tj1 - tm1 - k2)
            + _lfact(tj2 + tm2 - k2)
            + _lfact(tj - tj2 + tm1 + k2)
            + _lfact(tj - tj1 - tm2 + k2)
        )
        logs.append(log_pref - denom)
        signs.append(-1.0 if k % 2 else 1.0)

    top = max(logs)
    total = math.fsum(s * math.exp(lg - top) for s, lg in zip(signs, logs))
    return total * math.exp(top)


def clebsch_gordan(j1: Half, j2: Half, m1: Half, m2: Half, j: Half, m: Half) -> float:
    """Condon-Shortley Clebsch-Gordan coefficient ``<j1 m1; j2 m2 | j m>``.

    >>> round(clebsch_gordan(1, 0.5, 1, -0.5, 1.5, 0.5), 5)
    0.57735
    """
    return clebsch_gordan_2(twice(j1), twice(j2), twice(m1), twice(m2), twice(j), twice(m))


def ladder_element_2(tj: int, tm: int, direction: str) -> float:
    """Matrix element of J+ or J- on ``|j, m>`` with doubled arguments."""
    _check_pair(tj, tm)
    if direction == "raise":
        num = (tj - tm) * (tj + tm + 2)
    elif direction == "lower":
        num = (tj + tm) * (tj - tm + 2)
    else:
        raise ValueError(f"direction must be 'raise' or 'lower', got {direction!r}")
    # j(j+1) - m(m +/- 1) = (j -/+ m)(j +/- m + 1), here scaled by 4
    return math.sqrt(num) / 2


def ladder_element(j: Half, m: Half, direction: str) -> float:
    """``sqrt(j(j+1) - m(m +/- 1))``; zero at the ends of the ladder."""
    return ladder_element_2(twice(j), twice(m), direction)


@dataclass(frozen=True)
class DecompositionSpec:
    """Total-spin blocks of ``j_A (x) j_B`` for ``n_a >= n_b`` spin-1/2 particles.

    ``twice_j`` runs from ``n_a + n_b`` down to ``n_a - n_b`` in steps of 2.
    """

    n_a: int
    n_b: int
    twice_j: tuple

    @property
    def j_list(self) -> list[float]:
        return [tj / 2 for tj in self.twice_j]

    @property
    def block_dims(self) -> list[int]:
        return [tj + 1 for tj in self.twice_j]

    @property
    def dim(self) -> int:
        return sum(self.block_dims)


def decompose(n_a: int, n_b: int) -> DecompositionSpec:
    if int(n_a) != n_a or int(n_b) != n_b:
        raise AngularMomentumError("spin counts must be integers")
    if n_b < 1:
        raise AngularMomentumError(f"n_b must be >= 1, got {n_b}")
    if n_a < n_b:
        raise AngularMomentumError(f"need n_a >= n_b, got n_a={n_a}, n_b={n_b}")
    tjs = tuple(range(n_a + n_b, n_a - n_b - 1, -2))
    return DecompositionSpec(int(n_a), int(n_b), tjs)
