"""The affine plane F_p^2: points, directions, lines and affine maps.

Points are plain ``(x, y)`` tuples of residues. A direction is the pencil of
lines with a given slope; the vertical pencil has slope ``None`` (printed as
``inf``). Directions are always listed slopes ``0..p-1`` first, then ``inf``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence, Tuple

from .errors import DegeneratePairError, InvalidModulusError, SingularMapError

Point = Tuple[int, int]

#: Largest modulus accepted by the analysis operations.
MAX_PRIME = 10007


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def check_prime(p: int, limit: int = MAX_PRIME) -> int:
    """Return ``p`` if it is an odd prime in ``[3, limit]``, else raise."""
    if isinstance(p, bool) or not isinstance(p, int):
        raise InvalidModulusError(f"invalid modulus {p!r}: not an integer")
    if p == 2 or not is_prime(p):
        raise InvalidModulusError(f"invalid modulus {p}: must be an odd prime")
    if p > limit:
        raise InvalidModulusError(f"invalid modulus {p}: exceeds cap {limit}")
    return p


@dataclass(frozen=True, order=False)
class Direction:
    slope: Optional[int]

    @property
    def is_vertical(self) -> bool:
        return self.slope is None

    def sort_key(self) -> Tuple[int, int]:
        return (1, 0) if self.slope is None else (0, self.slope)

    def __lt__(self, other: "Direction") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        return "inf" if self.slope is None else str(self.slope)

    def line_offset(self, z: Point, p: int) -> int:
        """Offset of the line of this pencil passing through ``z``."""
        x, y = z
        if self.slope is None:
            return x % p
        return (y - self.slope * x) % p

    def subgroup(self, p: int) -> list[Point]:
        """The line through the origin in this direction, as a subgroup."""
        if self.slope is None:
            return [(0, t) for t in range(p)]
        return [(t, (t * self.slope) % p) for t in range(p)]

    @classmethod
    def parse(cls, text: str, p: int) -> "Direction":
        if text == "inf":
            return INFINITY
        s = int(text)
        if not 0 <= s < p:
            raise ValueError(f"slope {s} out of range for p={p}")
        return cls(s)


INFINITY = Direction(None)


@dataclass(frozen=True)
class Line:
    p: int
    direction: Direction
    offset: int

    def points(self) -> list[Point]:
        p, c = self.p, self.offset
        if self.direction.slope is None:
            return [(c, y) for y in range(p)]
        s = self.direction.slope
        return [(x, (s * x + c) % p) for x in range(p)]

    def __contains__(self, z: Point) -> bool:
        return self.direction.line_offset(z, self.p) == self.offset

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points())


def enumerate_directions(p: int) -> list[Direction]:
    check_prime(p)
    return [Direction(s) for s in range(p)] + [INFINITY]


def lines_in_direction(p: int, d: Direction) -> list[Line]:
    if d.slope is not None and not 0 <= d.slope < p:
        raise ValueError(f"slope {d.slope} out of range for p={p}")
    return [Line(p, d, c) for c in range(p)]


def all_points(p: int) -> Iterator[Point]:
    for x in range(p):
        for y in range(p):
            yield (x, y)


def direction_of_pair(z1: Point, z2: Point, p: int) -> Direction:
    dx = (z2[0] - z1[0]) % p
    dy = (z2[1] - z1[1]) % p
    if dx == 0 and dy == 0:
        raise DegeneratePairError(f"no direction through coincident points {z1}")
    if dx == 0:
        return INFINITY
    return Direction(dy * pow(dx, -1, p) % p)


def is_collinear(points: Sequence[Point], p: int) -> bool:
    """True if all points lie on one line (vacuously for fewer than 3)."""
    pts = list(dict.fromkeys((x % p, y % p) for x, y in points))
    if len(pts) < 3:
        return True
    d = direction_of_pair(pts[0], pts[1], p)
    c = d.line_offset(pts[0], p)
    return all(d.line_offset(z, p) == c for z in pts[2:])


@dataclass(frozen=True)
class AffineMap:
    """z -> M z + t over F_p, with ``matrix = ((a, b), (c, d))``."""

    p: int
    matrix: Tuple[Tuple[int, int], Tuple[int, int]]
    translation: Point = (0, 0)

    def __post_init__(self):
        p = self.p
        (a, b), (c, d) = self.matrix
        m = ((a % p, b % p), (c % p, d % p))
        object.__setattr__(self, "matrix", m)
        object.__setattr__(
            self, "translation", (self.translation[0] % p, self.translation[1] % p)
        )
        if self.det == 0:
            raise SingularMapError(f"matrix {m} is singular mod {p}")

    @property
    def det(self) -> int:
        (a, b), (c, d) = self.matrix
        return (a * d - b * c) % self.p

    def __call__(self, z: Point) -> Point:
        (a, b), (c, d) = self.matrix
        tx, ty = self.translation
        x, y = z
        return ((a * x + b * y + tx) % self.p, (c * x + d * y + ty) % self.p)

    def linear(self, v: Point) -> Point:
        (a, b), (c, d) = self.matrix
        x, y = v
        return ((a * x + b * y) % self.p, (c * x + d * y) % self.p)

    def compose(self, other: "AffineMap") -> "AffineMap":
        """self o other."""
        p = self.p
        (a, b), (c, d) = self.matrix
        (e, f), (g, h) = other.matrix
        m = ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))
        t = self(other.translation)
        return AffineMap(p, m, t)

    def inverse(self) -> "AffineMap":
        p = self.p
        (a, b), (c, d) = self.matrix
        inv = pow(self.det, -1, p)
        m = ((d * inv, -b * inv), (-c * inv, a * inv))
        lin = AffineMap(p, m)
        tx, ty = lin.linear(self.translation)
        return AffineMap(p, m, (-tx, -ty))

    def map_direction(self, d: Direction) -> Direction:
        v = (0, 1) if d.slope is None else (1, d.slope)
        return direction_of_pair((0, 0), self.linear(v), self.p)

    @classmethod
    def identity(cls, p: int) -> "AffineMap":
        return cls(p, ((1, 0), (0, 1)))

    @classmethod
    def translation_by(cls, p: int, t: Point) -> "AffineMap":
        return cls(p, ((1, 0), (0, 1)), t)


def iter_affine_group(p: int) -> Iterator[AffineMap]:
    """Every element of AGL(2, p); p^2 (p^2-1)(p^2-p) maps in total."""
    check_prime(p)
    for a in range(p):
        for b in range(p):
            for c in range(p):
                for d in range(p):
                    if (a * d - b * c) % p == 0:
                        continue
                    for tx in range(p):
                        for ty in range(p):
                            yield AffineMap(p, ((a, b), (c, d)), (tx, ty))
