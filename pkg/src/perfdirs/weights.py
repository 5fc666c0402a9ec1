"""Rational weight functions on F_p^2.

A ``WeightFunction`` is a sparse map from points to nonzero ``Fraction``
values; its key set is exactly the support. Nothing in here touches floats.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Tuple

from .errors import (
    CoordinateOutOfRangeError,
    MalformedInputError,
    ModulusMismatchError,
    RationalizationError,
    ZeroWeightError,
)
from .plane import AffineMap, Line, Point, check_prime


class WeightFunction:
    def __init__(self, p: int, entries: Mapping[Point, object] = (), *, drop_zeros=False):
        check_prime(p)
        self.p = p
        table: dict[Point, Fraction] = {}
        items = entries.items() if isinstance(entries, Mapping) else entries
        for (x, y), v in items:
            if not (0 <= x < p and 0 <= y < p):
                raise CoordinateOutOfRangeError(f"point ({x}, {y}) out of range for p={p}")
            v = Fraction(v)
            if v == 0:
                if drop_zeros:
                    continue
                raise ZeroWeightError(f"zero weight at ({x}, {y})")
            table[(x, y)] = v
        self._entries = table

    @classmethod
    def indicator(cls, p: int, points: Iterable[Point], value=1) -> "WeightFunction":
        return cls(p, {(x % p, y % p): value for x, y in points})

    @classmethod
    def from_function(cls, p: int, f) -> "WeightFunction":
        """Tabulate ``f(x, y)`` over the whole plane, dropping zeros."""
        return cls(
            p,
            [((x, y), f(x, y)) for x in range(p) for y in range(p)],
            drop_zeros=True,
        )

    @property
    def entries(self) -> Mapping[Point, Fraction]:
        return self._entries

    @property
    def support(self) -> frozenset:
        return frozenset(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __bool__(self) -> bool:
        return bool(self._entries)

    def __getitem__(self, z: Point) -> Fraction:
        return self._entries.get(z, Fraction(0))

    def items(self):
        return self._entries.items()

    def sorted_items(self) -> list[tuple[Point, Fraction]]:
        return sorted(self._entries.items())

    def values(self):
        return self._entries.values()

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightFunction):
            return NotImplemented
        return self.p == other.p and self._entries == other._entries

    def __hash__(self) -> int:
        return hash((self.p, frozenset(self._entries.items())))

    def __repr__(self) -> str:
        body = ", ".join(f"{z}: {v}" for z, v in self.sorted_items())
        return f"WeightFunction(p={self.p}, {{{body}}})"

    def scale(self, c) -> "WeightFunction":
        c = Fraction(c)
        return WeightFunction(self.p, {z: c * v for z, v in self.items()}, drop_zeros=True)

    def __add__(self, other: "WeightFunction") -> "WeightFunction":
        _same_modulus(self.p, other.p)
        out = dict(self._entries)
        for z, v in other.items():
            out[z] = out.get(z, 0) + v
        return WeightFunction(self.p, out, drop_zeros=True)

    def __sub__(self, other: "WeightFunction") -> "WeightFunction":
        return self + other.scale(-1)

    @cached_property
    def integer_form(self) -> Tuple[int, dict]:
        """``(L, {z: L*w(z)})`` with ``L`` the lcm of the denominators."""
        L = 1
        for v in self._entries.values():
            L = L * v.denominator // math.gcd(L, v.denominator)
        return L, {z: v.numerator * (L // v.denominator) for z, v in self._entries.items()}


def _same_modulus(p: int, q: int) -> None:
    if p != q:
        raise ModulusMismatchError(f"moduli differ: {p} vs {q}")


def total_mass(w: WeightFunction) -> Fraction:
    L, ints = w.integer_form
    return Fraction(sum(ints.values()), L)


def line_sum(w: WeightFunction, line: Line) -> Fraction:
    _same_modulus(w.p, line.p)
    return sum((w[z] for z in line.points()), Fraction(0))


def pencil_sums(w: WeightFunction, d) -> list[Fraction]:
    """Line sums for every line of direction ``d``, indexed by offset."""
    p = w.p
    L, ints = w.integer_form
    acc = [0] * p
    s = d.slope
    if s is None:
        for (x, _), v in ints.items():
            acc[x] += v
    else:
        for (x, y), v in ints.items():
            acc[(y - s * x) % p] += v
    return [Fraction(a, L) for a in acc]


def transform_weight(m: AffineMap, w: WeightFunction) -> WeightFunction:
    """Push ``w`` forward along ``m``: the result takes value w(z) at m(z)."""
    _same_modulus(m.p, w.p)
    return WeightFunction(w.p, {m(z): v for z, v in w.items()})


# --- real-valued input and rationalization -------------------------------


@dataclass(frozen=True)
class RealWeightInput:
    p: int
    entries: Mapping[Point, str]

    def __post_init__(self):
        check_prime(self.p)
        for (x, y), s in self.entries.items():
            if not (0 <= x < self.p and 0 <= y < self.p):
                raise CoordinateOutOfRangeError(f"point ({x}, {y}) out of range")
            if _parse_decimal(s) == 0:
                raise ZeroWeightError(f"zero weight at ({x}, {y})")

    def exact(self) -> dict[Point, Fraction]:
        return {z: _parse_decimal(s) for z, s in self.entries.items()}


def _parse_decimal(s: str) -> Fraction:
    try:
        d = Decimal(str(s).strip())
    except InvalidOperation:
        raise MalformedInputError(f"not a decimal literal: {s!r}") from None
    if not d.is_finite():
        raise MalformedInputError(f"not a finite decimal: {s!r}")
    return Fraction(d)


@dataclass(frozen=True)
class Rationalization:
    weight: WeightFunction
    q: int
    max_error: Fraction


def rationalize(real: RealWeightInput, max_q: int) -> Rationalization:
    """Find the least Q <= max_q approximating every entry to within 1/(2pQ).

    Each entry is rounded to the nearest multiple of 1/Q. A Q is accepted only
    if the support and the pattern of equal values both survive rounding.
    """
    if max_q < 1:
        raise ValueError("max_q must be at least 1")
    p = real.p
    exact = real.exact()
    points = sorted(exact)
    for q in range(1, max_q + 1):
        tol = Fraction(1, 2 * p * q)
        rounded = {}
        worst = Fraction(0)
        for z in points:
            v = exact[z]
            k = math.floor(v * q + Fraction(1, 2))
            err = abs(v - Fraction(k, q))
            if k == 0 or err >= tol:
                break
            rounded[z] = k
            worst = max(worst, err)
        else:
            if _same_pattern(exact, rounded):
                w = WeightFunction(p, {z: Fraction(k, q) for z, k in rounded.items()})
                return Rationalization(w, q, worst)
    raise RationalizationError(f"no admissible Q <= {max_q}; raise the cap")


def _same_pattern(a: Mapping, b: Mapping) -> bool:
    # w(x) = w(y) iff w_Q(x) = w_Q(y): the two partitions of the support agree
    pairs = {}
    for z in a:
        if pairs.setdefault(a[z], b[z]) != b[z]:
            return False
    return len(set(pairs.values())) == len(pairs)


# --- JSON -----------------------------------------------------------------


def _load(text) -> dict:
    if isinstance(text, (str, bytes)):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MalformedInputError(f"invalid JSON: {exc}") from None
    else:
        doc = text
    if not isinstance(doc, dict) or "p" not in doc or "entries" not in doc:
        raise MalformedInputError('expected an object with "p" and "entries"')
    if not isinstance(doc["entries"], list):
        raise MalformedInputError('"entries" must be a list')
    return doc


def _int_field(entry: dict, key: str) -> int:
    if key not in entry:
        raise MalformedInputError(f"entry {entry!r} lacks {key!r}")
    v = entry[key]
    if isinstance(v, bool):
        raise MalformedInputError(f"{key} must be an integer, got {v!r}")
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        try:
            return int(v.strip())
        except ValueError:
            pass
    raise MalformedInputError(f"{key} must be an integer, got {v!r}")


def _modulus(doc: dict) -> int:
    p = doc["p"]
    if isinstance(p, bool) or not isinstance(p, int):
        raise MalformedInputError(f"p must be an integer, got {p!r}")
    return check_prime(p)


def _point(entry: dict, p: int) -> Point:
    if not isinstance(entry, dict):
        raise MalformedInputError(f"entry must be an object, got {entry!r}")
    x, y = _int_field(entry, "x"), _int_field(entry, "y")
    if not (0 <= x < p and 0 <= y < p):
        raise CoordinateOutOfRangeError(f"point ({x}, {y}) out of range for p={p}")
    return (x, y)


def parse_weight(text) -> WeightFunction:
    """Parse the weight JSON document (a string or an already-decoded dict)."""
    doc = _load(text)
    p = _modulus(doc)
    entries: dict[Point, Fraction] = {}
    for entry in doc["entries"]:
        z = _point(entry, p)
        num, den = _int_field(entry, "num"), _int_field(entry, "den")
        if den == 0:
            raise MalformedInputError(f"zero denominator at {z}")
        if num == 0:
            raise ZeroWeightError(f"zero weight at {z}")
        if z in entries:
            raise MalformedInputError(f"duplicate entry for {z}")
        entries[z] = Fraction(num, den)
    return WeightFunction(p, entries)


def parse_real_weight(text) -> RealWeightInput:
    doc = _load(text)
    p = _modulus(doc)
    entries: dict[Point, str] = {}
    for entry in doc["entries"]:
        z = _point(entry, p)
        if "value" not in entry:
            raise MalformedInputError(f"entry for {z} lacks 'value'")
        if z in entries:
            raise MalformedInputError(f"duplicate entry for {z}")
        entries[z] = str(entry["value"])
    return RealWeightInput(p, entries)


def weight_to_dict(w: WeightFunction) -> dict:
    return {
        "p": w.p,
        "entries": [
            {"x": x, "y": y, "num": str(v.numerator), "den": str(v.denominator)}
            for (x, y), v in w.sorted_items()
        ],
    }


def dump_weight(w: WeightFunction) -> str:
    return json.dumps(weight_to_dict(w), sort_keys=False)


def fraction_str(v: Fraction) -> str:
    return f"{v.numerator}/{v.denominator}"


def parse_fraction(text) -> Fraction:
    if isinstance(text, bool):
        raise MalformedInputError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise MalformedInputError(f"not a rational: {text!r}") from None


def delta(p: int, z: Point = (0, 0), value=1) -> WeightFunction:
    return WeightFunction(p, {z: value})


def constant(p: int, value=1) -> WeightFunction:
    return WeightFunction(p, {(x, y): value for x in range(p) for y in range(p)})
