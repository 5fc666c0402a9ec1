"""Extremal weight functions with known perfect-direction counts."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import ConstructionError
from .plane import Point, check_prime, direction_of_pair
from .weights import WeightFunction, weight_to_dict


@dataclass(frozen=True)
class RotationMatrix:
    """The rotation ((a, -b), (b, a)) over F_p."""

    p: int
    a: int
    b: int

    def __post_init__(self):
        if (self.a * self.a + self.b * self.b) % self.p != 1:
            raise ConstructionError(f"({self.a}, {self.b}) is not a rotation mod {self.p}")

    def __mul__(self, other: "RotationMatrix") -> "RotationMatrix":
        p = self.p
        a = (self.a * other.a - self.b * other.b) % p
        b = (self.a * other.b + self.b * other.a) % p
        return RotationMatrix(p, a, b)

    def __call__(self, z: Point) -> Point:
        x, y = z
        return ((self.a * x - self.b * y) % self.p, (self.b * x + self.a * y) % self.p)

    @property
    def is_identity(self) -> bool:
        return self.a == 1 and self.b == 0

    def order(self) -> int:
        k, g = 1, self
        while not g.is_identity:
            g = g * self
            k += 1
        return k


def legendre_minus_one(p: int) -> int:
    return 1 if p % 4 == 1 else -1


def so2_order(p: int) -> int:
    return p - legendre_minus_one(p)


def so2_group(p: int) -> list[RotationMatrix]:
    """All of SO(2, p), listed as successive powers of a generator.

    The generator is the first element of maximal order met in a
    lexicographic scan over ``(a, b)``.
    """
    check_prime(p)
    squares: dict[int, list[int]] = {}
    for t in range(p):
        squares.setdefault(t * t % p, []).append(t)
    elems = []
    for a in range(p):
        for b in squares.get((1 - a * a) % p, []):
            elems.append(RotationMatrix(p, a, b))
    elems.sort(key=lambda r: (r.a, r.b))
    # the group is cyclic, so an element of order |G| exists
    m = len(elems)
    gen = next(g for g in elems if g.order() == m)
    out = [RotationMatrix(p, 1, 0)]
    while len(out) < m:
        out.append(out[-1] * gen)
    return out


@dataclass(frozen=True)
class ConstructionResult:
    kind: str
    w: WeightFunction
    predicted_n: int
    predicted_d: Optional[int] = None
    notes: str = ""

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "weight": weight_to_dict(self.w),
            "predictedN": self.predicted_n,
            "predictedD": self.predicted_d,
            "notes": self.notes,
        }


def is_isotropic(z: Point, p: int) -> bool:
    """x^2 + y^2 = 0 with z nonzero; such points exist iff p = 1 mod 4."""
    return z != (0, 0) and (z[0] * z[0] + z[1] * z[1]) % p == 0


def so2_orbit_example(p: int, n: int, z: Point = (1, 0)) -> ConstructionResult:
    """Signed orbit of ``z`` under the rotation subgroup of order 2n.

    Points in the orbit of the index-2 subgroup get +1, the rest get -1, and
    the n mixed-sign pair directions are the perfect ones. An isotropic ``z``
    is the exception: every rotation scales it, the orbit lies on one line
    through the origin and exactly one direction is perfect.
    """
    check_prime(p)
    order = so2_order(p)
    if n < 1 or order % (2 * n):
        raise ConstructionError(f"2n = {2 * n} does not divide |SO(2,{p})| = {order}")
    z = (z[0] % p, z[1] % p)
    if z == (0, 0):
        raise ConstructionError("base point must be nonzero")
    group = so2_group(p)
    h = group[:: order // (2 * n)]
    h0 = group[:: order // n]
    plus = {g(z) for g in h0}
    entries = {}
    for g in h:
        x = g(z)
        entries[x] = 1 if x in plus else -1
    if len(entries) != 2 * n:
        raise AssertionError("rotation subgroup acted with a fixed point")
    w = WeightFunction(p, entries)
    notes = f"orbit of {z} under the rotation subgroup of order {2 * n}"
    if is_isotropic(z, p):
        return ConstructionResult("so2", w, 1, None, notes + "; z is isotropic, orbit is collinear")
    return ConstructionResult("so2", w, n, None, notes)


def power_graph_example(p: int) -> ConstructionResult:
    check_prime(p)
    e = (p + 1) // 2
    pts = [(t, pow(t, e, p)) for t in range(p)]
    w = WeightFunction.indicator(p, pts)
    return ConstructionResult(
        "power", w, (p - 1) // 2, (p + 3) // 2, f"indicator of the graph of t -> t^{e}"
    )


def two_lines_example(p: int, parallel: bool = False) -> ConstructionResult:
    check_prime(p)
    if parallel:
        entries = {(x, 0): 1 for x in range(p)}
        entries.update({(x, 1): -1 for x in range(p)})
        w = WeightFunction(p, entries)
        return ConstructionResult("twolines", w, p, None, "+1 on y=0, -1 on y=1")
    horiz = WeightFunction.indicator(p, [(x, 0) for x in range(p)])
    vert = WeightFunction.indicator(p, [(0, y) for y in range(p)])
    return ConstructionResult("twolines", horiz - vert, p - 1, None, "1 on y=0 minus 1 on x=0")


def small_support_example(p: int) -> ConstructionResult:
    check_prime(p)
    if p < 5:
        raise ConstructionError("the small-support example needs p >= 5")
    half = Fraction(1, 2)
    entries: dict[Point, Fraction] = {z: half for z in [(0, 0), (0, 1), (1, 0), (1, 1)]}
    entries.update({(x, x): Fraction(1) for x in range(2, p)})
    w = WeightFunction(p, entries)
    return ConstructionResult(
        "smallsupport", w, 2, None, "p+2 points with nonzero average and two perfect directions"
    )


def mixed_sign_directions(w: WeightFunction) -> frozenset:
    """Directions of pairs of support points carrying different weights."""
    items = w.sorted_items()
    return frozenset(
        direction_of_pair(z1, z2, w.p)
        for i, (z1, v1) in enumerate(items)
        for z2, v2 in items[i + 1 :]
        if v1 != v2
    )


def so2_admissible(p: int) -> list[int]:
    """Every n with 2n dividing the order of SO(2, p)."""
    order = so2_order(p)
    return [n for n in range(1, order // 2 + 1) if order % (2 * n) == 0]
