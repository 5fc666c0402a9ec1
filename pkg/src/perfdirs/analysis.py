"""Perfect and determined directions, and the checks built on them."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Tuple

from .errors import EmptySupportError, PerfDirsError
from .plane import Direction, Point, check_prime, direction_of_pair, enumerate_directions, is_collinear
from .spectral import annihilator, fourier_is_zero, line_constant_directions
from .weights import WeightFunction, fraction_str, pencil_sums, total_mass


@dataclass(frozen=True)
class DirectionInfo:
    line_sums: Tuple[Fraction, ...]
    perfect: bool
    determined: bool


@dataclass(frozen=True)
class DirectionReport:
    p: int
    per_direction: Tuple[Tuple[Direction, DirectionInfo], ...]
    share: Fraction

    @property
    def N(self) -> int:
        return sum(1 for _, info in self.per_direction if info.perfect)

    @property
    def D(self) -> int:
        return sum(1 for _, info in self.per_direction if info.determined)

    @property
    def perfect(self) -> frozenset:
        return frozenset(d for d, info in self.per_direction if info.perfect)

    @property
    def determined(self) -> frozenset:
        return frozenset(d for d, info in self.per_direction if info.determined)

    def __getitem__(self, d: Direction) -> DirectionInfo:
        return dict(self.per_direction)[d]

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "share": {"num": str(self.share.numerator), "den": str(self.share.denominator)},
            "N": self.N,
            "D": self.D,
            "directions": [
                {
                    "slope": str(d),
                    "perfect": info.perfect,
                    "determined": info.determined,
                    "lineSums": [fraction_str(s) for s in info.line_sums],
                }
                for d, info in self.per_direction
            ],
        }

    def csv_rows(self) -> list[list[str]]:
        rows = [["slope", "offset", "lineSum"]]
        for d, info in self.per_direction:
            for c, s in enumerate(info.line_sums):
                rows.append([str(d), str(c), fraction_str(s)])
        return rows


def _require_nonempty(w: WeightFunction) -> None:
    if not w:
        raise EmptySupportError("empty support")


def _pencil_occupancy(points: Iterable[Point], d: Direction, p: int) -> list[int]:
    count = [0] * p
    for z in points:
        count[d.line_offset(z, p)] += 1
    return count


def perfect_directions(w: WeightFunction) -> DirectionReport:
    _require_nonempty(w)
    p = w.p
    share = total_mass(w) / p
    rows = []
    for d in enumerate_directions(p):
        sums = tuple(pencil_sums(w, d))
        perfect = all(s == share for s in sums)
        determined = max(_pencil_occupancy(w.support, d, p)) >= 2
        rows.append((d, DirectionInfo(sums, perfect, determined)))
    return DirectionReport(p, tuple(rows), share)


def perfect_count(w: WeightFunction) -> int:
    """N alone, on the integer-scaled weights; no report is built."""
    _require_nonempty(w)
    p = w.p
    _, ints = w.integer_form
    total = sum(ints.values())
    n = 0
    for d in enumerate_directions(p):
        acc = [0] * p
        s = d.slope
        if s is None:
            for (x, _), v in ints.items():
                acc[x] += v
        else:
            for (x, y), v in ints.items():
                acc[(y - s * x) % p] += v
        if all(p * a == total for a in acc):
            n += 1
    return n


def perfect_directions_spectral(w: WeightFunction) -> frozenset:
    """Perfect directions found by zero-testing the Fourier transform."""
    _require_nonempty(w)
    p = w.p
    return frozenset(
        d
        for d in enumerate_directions(p)
        if all(fourier_is_zero(w, chi) for chi in annihilator(p, d).nonprincipal())
    )


def determined_directions(points: Iterable[Point], p: int) -> frozenset:
    check_prime(p)
    pts = sorted(set(points))
    return frozenset(direction_of_pair(a, b, p) for a, b in combinations(pts, 2))


@dataclass(frozen=True)
class TheoremVerdict:
    N: int
    bound: Fraction
    exempt: bool
    passed: bool

    def to_dict(self) -> dict:
        return {"N": self.N, "bound": fraction_str(self.bound), "exempt": self.exempt, "pass": self.passed}


def is_full_line(points, p: int) -> bool:
    pts = set(points)
    return len(pts) == p and is_collinear(list(pts), p)


def verify_main_theorem(w: WeightFunction) -> TheoremVerdict:
    """Check that w has at most |S|/2 perfect directions.

    The only exemption is a constant weight on an entire line.
    """
    _require_nonempty(w)
    n = perfect_count(w)
    bound = Fraction(len(w), 2)
    exempt = len(set(w.values())) == 1 and is_full_line(w.support, w.p)
    return TheoremVerdict(n, bound, exempt, n <= bound or exempt)


@dataclass(frozen=True)
class RedeiMegyesiCheck:
    D: int
    is_line: bool
    passed: bool

    def to_dict(self) -> dict:
        return {"D": self.D, "isLine": self.is_line, "pass": self.passed}


def redei_megyesi_check(points: Iterable[Point], p: int) -> RedeiMegyesiCheck:
    pts = set(points)
    check_prime(p)
    if len(pts) != p:
        raise PerfDirsError(f"set has {len(pts)} points, expected exactly p={p}")
    d = len(determined_directions(pts, p))
    line = d == 1
    return RedeiMegyesiCheck(d, line, line or 2 * d >= p + 3)


class Degeneracy(enum.Enum):
    ALL_PERFECT = "AllPerfect"
    EXACTLY_ONE_IMPERFECT = "ExactlyOneImperfect"
    GENERIC = "Generic"


@dataclass(frozen=True)
class Classification:
    kind: Degeneracy
    direction: Optional[Direction] = None

    def __str__(self) -> str:
        if self.direction is None:
            return self.kind.value
        return f"{self.kind.value}({self.direction})"


def is_constant(w: WeightFunction) -> bool:
    """Whether w, extended by zero, is constant on the whole plane."""
    return not w or (len(w) == w.p**2 and len(set(w.values())) == 1)


def classify_degenerate(w: WeightFunction) -> Classification:
    if is_constant(w):
        return Classification(Degeneracy.ALL_PERFECT)
    periodic = line_constant_directions(w)
    # a nonconstant w cannot be periodic along two independent subgroups
    if len(periodic) == 1:
        return Classification(Degeneracy.EXACTLY_ONE_IMPERFECT, periodic[0])
    return Classification(Degeneracy.GENERIC)
