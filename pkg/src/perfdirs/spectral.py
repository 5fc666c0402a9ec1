"""Exact Fourier analysis on F_p^2.

The character indexed by ``(a, b)`` sends ``(x, y)`` to ``zeta^(a x + b y)``
with ``zeta = exp(2 pi i / p)``. For rational ``w``, the coefficient at that
character is (up to a nonzero scalar) ``sum_j c_j zeta^(-j)`` where ``c_j``
is the mass of ``w`` on the residue class ``a x + b y = j``. Since the
minimal polynomial of ``zeta`` over Q is ``1 + t + ... + t^(p-1)``, that sum
vanishes exactly when all ``p`` class sums agree. Every zero-test below
reduces to this comparison of integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from .plane import Direction, enumerate_directions
from .weights import WeightFunction

Character = Tuple[int, int]

PRINCIPAL: Character = (0, 0)


def _class_sums_scaled(w: WeightFunction, chi: Character) -> list[int]:
    p = w.p
    a, b = chi[0] % p, chi[1] % p
    _, ints = w.integer_form
    acc = [0] * p
    for (x, y), v in ints.items():
        acc[(a * x + b * y) % p] += v
    return acc


def residue_class_sums(w: WeightFunction, chi: Character) -> list[Fraction]:
    L = w.integer_form[0]
    return [Fraction(c, L) for c in _class_sums_scaled(w, chi)]


def fourier_is_zero(w: WeightFunction, chi: Character) -> bool:
    if chi[0] % w.p == 0 and chi[1] % w.p == 0:
        return sum(w.integer_form[1].values()) == 0
    sums = _class_sums_scaled(w, chi)
    first = sums[0]
    return all(c == first for c in sums)


@dataclass(frozen=True)
class AnnihilatorSubgroup:
    direction: Direction
    characters: Tuple[Character, ...]

    def nonprincipal(self) -> Tuple[Character, ...]:
        return tuple(chi for chi in self.characters if chi != PRINCIPAL)


def annihilator(p: int, d: Direction) -> AnnihilatorSubgroup:
    """Characters trivial on the line through the origin in direction ``d``."""
    if d.slope is None:
        gen = (1, 0)
    else:
        gen = (d.slope % p, p - 1)
    chars = tuple(((t * gen[0]) % p, (t * gen[1]) % p) for t in range(p))
    return AnnihilatorSubgroup(d, chars)


@dataclass(frozen=True)
class SpectrumReport:
    p: int
    support_size: int
    principal_nonzero: bool
    by_direction: Tuple[Tuple[Direction, int], ...]

    def count(self, d: Direction) -> int:
        return dict(self.by_direction)[d]

    def to_dict(self) -> dict:
        return {
            "supportSize": self.support_size,
            "principalNonzero": self.principal_nonzero,
            "byDirection": [{"slope": str(d), "count": k} for d, k in self.by_direction],
        }


def fourier_support(w: WeightFunction) -> SpectrumReport:
    """Count the characters at which the Fourier transform of ``w`` is nonzero.

    Each nonprincipal character is evaluated individually and filed under the
    unique annihilator subgroup containing it.
    """
    p = w.p
    principal = not fourier_is_zero(w, PRINCIPAL)
    rows = []
    for d in enumerate_directions(p):
        count = sum(1 for chi in annihilator(p, d).nonprincipal() if not fourier_is_zero(w, chi))
        rows.append((d, count))
    size = sum(k for _, k in rows) + int(principal)
    return SpectrumReport(p, size, principal, tuple(rows))


def line_constant_directions(w: WeightFunction) -> list[Direction]:
    """Directions along whose every line ``w`` (extended by zero) is constant."""
    p = w.p
    out = []
    for d in enumerate_directions(p):
        count = [0] * p
        seen: list[Optional[Fraction]] = [None] * p
        ok = True
        for z, v in w.items():
            c = d.line_offset(z, p)
            count[c] += 1
            if seen[c] is None:
                seen[c] = v
            elif seen[c] != v:
                ok = False
                break
        if ok and all(k in (0, p) for k in count):
            out.append(d)
    return out


@dataclass(frozen=True)
class UncertaintyCheck:
    lhs: Fraction
    rhs: int
    holds: bool
    constant_direction: Optional[Direction]

    @property
    def satisfied(self) -> bool:
        """One of the two alternatives of the uncertainty dichotomy holds."""
        return self.holds or self.constant_direction is not None

    def to_dict(self) -> dict:
        return {
            "lhs": f"{self.lhs.numerator}/{self.lhs.denominator}",
            "rhs": self.rhs,
            "holds": self.holds,
            "constantDirection": None if self.constant_direction is None else str(self.constant_direction),
        }


def check_uncertainty(w: WeightFunction) -> UncertaintyCheck:
    """Evaluate |supp w|/2 + |supp w^|/(p-1) against p+1.

    The empty function is the zero function: its spectrum is empty and every
    direction is line-constant, so slope 0 is reported.
    """
    p = w.p
    spec = fourier_support(w)
    lhs = Fraction(len(w), 2) + Fraction(spec.support_size, p - 1)
    holds = lhs >= p + 1
    if not w:
        const: Optional[Direction] = Direction(0)
    else:
        dirs = line_constant_directions(w)
        const = dirs[0] if dirs else None
    return UncertaintyCheck(lhs, p + 1, holds, const)


@dataclass(frozen=True)
class SupportBoundCheck:
    lhs: int
    rhs: int
    holds: bool

    def to_dict(self) -> dict:
        return {"lhs": self.lhs, "rhs": self.rhs, "holds": self.holds}


def check_support_bound(w: WeightFunction, n_perfect: int) -> SupportBoundCheck:
    p = w.p
    if not 0 <= n_perfect <= p + 1:
        raise ValueError(f"perfect-direction count {n_perfect} outside [0, {p + 1}]")
    lhs = fourier_support(w).support_size
    rhs = (p - 1) * (p + 1 - n_perfect) + 1
    return SupportBoundCheck(lhs, rhs, lhs <= rhs)
