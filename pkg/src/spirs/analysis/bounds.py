"""Correction radii and failure-probability bounds, as exact rationals."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


class BoundError(ValueError):
    pass


class TOutOfRange(BoundError):
    pass


class LNotGreaterThanOne(BoundError):
    pass


@dataclass(frozen=True)
class BoundInputs:
    q: int
    L: int
    n: int
    k_max: int
    k_avg: Fraction
    t: int
    r_E: int = 0

    def __post_init__(self):
        if not 0 <= self.t <= self.n:
            raise TOutOfRange(f"t = {self.t} outside [0, {self.n}]")
        if not 0 <= self.r_E <= min(self.L, self.t):
            raise BoundError(f"rank {self.r_E} outside [0, min(L, t)]")


@dataclass(frozen=True)
class Bound:
    exact: Fraction
    exponent: int

    @property
    def value(self) -> float:
        return float(self.exact)

    @property
    def vacuous(self) -> bool:
        return self.exact >= 1

    def __str__(self):
        return f"{self.exact} (~{self.value:.4g}){' [vacuous]' if self.vacuous else ''}"


def bound_roth_vontobel(n: int, k_max: int, r_E: int) -> int:
    """Radius up to which every error of rank r_E satisfies the partial-inverse condition."""
    if r_E < 0:
        raise BoundError("rank must be nonnegative")
    return (n - k_max + r_E - 1) // 2


def _q_power_over(q: int, e: int) -> Fraction:
    return Fraction(q) ** e / (q - 1)


def bound_full_rank(q: int, L: int, t: int) -> Bound:
    """Upper bound on Pr(t uniform nonzero columns in F^L are dependent)."""
    if not 0 < t <= L:
        raise TOutOfRange(f"t = {t} outside (0, L = {L}]")
    e = t - L
    return Bound(_q_power_over(q, e), e)


def _exponent(L, n, k_avg, t) -> int:
    e = -L * (n - Fraction(k_avg)) + (L + 1) * t
    if e.denominator != 1:
        raise BoundError(f"k_avg = {k_avg} is not a multiple of 1/L")
    return int(e)


def bound_ssb(q: int, L: int, n: int, k_avg, t: int, k_max: int | None = None) -> Bound:
    """Upper bound on the probability that t uniform column errors violate
    the partial-inverse condition."""
    if L <= 1:
        raise LNotGreaterThanOne(f"bound needs L > 1, got {L}")
    top = n - (k_max if k_max is not None else math.ceil(Fraction(k_avg)))
    if not 0 < t <= top:
        raise TOutOfRange(f"t = {t} outside (0, {top}]")
    e = _exponent(L, n, k_avg, t)
    return Bound(_q_power_over(q, e), e)


def max_radius(n: int, L: int, k_max: int, k_avg) -> int:
    """Largest t for which the partial-inverse condition can hold at all."""
    return math.floor(min(Fraction(n - k_max), Fraction(L, L + 1) * (n - Fraction(k_avg))))
