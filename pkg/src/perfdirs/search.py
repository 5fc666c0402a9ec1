"""Symmetry-reduced search for weight functions with many perfect directions.

Orbits are taken under the full affine group AGL(2, p). The canonical
representative of an orbit is its lexicographically least member, where a
weight function is compared as the list of ``(y, x, value)`` triples of its
support sorted row-major. That minimum always puts a support point at the
origin, a second one at ``(1, 0)`` and, if the support is not collinear, the
first point off that line at ``(0, 1)``; so it suffices to minimise over the
affine maps sending an ordered triple of support points to that frame. The
result is exact for every p, at a cost of O(|S|^3) per call in the worst case.
"""

from __future__ import annotations

import json
import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from pathlib import Path
from typing import Iterable, Optional, Tuple

from .analysis import TheoremVerdict, is_full_line, perfect_count, verify_main_theorem
from .errors import InfeasibleSpecError, MalformedInputError
from .plane import AffineMap, Point, all_points, check_prime
from .weights import (
    WeightFunction,
    fraction_str,
    parse_fraction,
    parse_weight,
    total_mass,
    weight_to_dict,
)

log = logging.getLogger(__name__)

CanonicalKey = Tuple[Tuple[int, int, Fraction], ...]

MAX_EXHAUSTIVE_P = 13
MAX_RANDOMIZED_P = 31
CONSTRAINTS = ("none", "nonzeroAverage", "nonnegativeValues")


# --- canonical forms ------------------------------------------------------


def _line_blocks(items, p: int):
    """For each ordered pair (s0, s1), the sorted images of the points on
    line s0 s1 once s0 goes to the origin and s1 to (1, 0)."""
    for s0, v0 in items:
        for s1, _ in items:
            if s1 == s0:
                continue
            ux, uy = (s1[0] - s0[0]) % p, (s1[1] - s0[1]) % p
            # t with z - s0 = t u, read off a nonzero coordinate of u
            inv = pow(ux if ux else uy, -1, p)
            block = []
            for (x, y), v in items:
                dx, dy = (x - s0[0]) % p, (y - s0[1]) % p
                if (ux * dy - uy * dx) % p == 0:
                    t = (dx if ux else dy) * inv % p
                    block.append((0, t, v))
            block.sort()
            yield s0, (ux, uy), tuple(block)


def _canonical(w: WeightFunction) -> Tuple[CanonicalKey, AffineMap]:
    p = w.p
    items = sorted(w.items())
    if not items:
        return (), AffineMap.identity(p)
    if len(items) == 1:
        (z, v), = items
        return ((0, 0, v),), AffineMap.translation_by(p, (-z[0], -z[1]))
    lowest = min(w.values())
    # Stage 1: the points landing on y = 0 form a prefix of the key; a
    # longer block wins over its own prefix, hence the sentinel.
    best_block = None
    frames = []
    for s0, u, block in _line_blocks(items, p):
        if w[s0] != lowest:
            continue
        bkey = block + ((p,),)
        if best_block is None or bkey < best_block:
            best_block, frames = bkey, [(s0, u)]
        elif bkey == best_block:
            frames.append((s0, u))
    # Stage 2: complete each surviving frame with a point off the line.
    best: Optional[CanonicalKey] = None
    best_map = None
    for s0, (ux, uy) in frames:
        off_line = [
            (z, v) for z, v in items if (ux * (z[1] - s0[1]) - uy * (z[0] - s0[0])) % p
        ]
        if off_line:
            first = min(v for _, v in off_line)
            thirds = [z for z, v in off_line if v == first]
        else:
            # collinear: any completion gives the same image
            thirds = [(s0[0], s0[1] + 1) if ux else (s0[0] + 1, s0[1])]
        for s2 in thirds:
            vx, vy = (s2[0] - s0[0]) % p, (s2[1] - s0[1]) % p
            inv = pow((ux * vy - vx * uy) % p, -1, p)
            a, b, c, d = vy * inv % p, -vx * inv % p, -uy * inv % p, ux * inv % p
            x0, y0 = s0
            key = tuple(
                sorted(
                    ((c * (x - x0) + d * (y - y0)) % p, (a * (x - x0) + b * (y - y0)) % p, v)
                    for (x, y), v in items
                )
            )
            if best is None or key < best:
                best, best_map = key, (s0, a, b, c, d)
    s0, a, b, c, d = best_map
    lin = AffineMap(p, ((a, b), (c, d)))
    tx, ty = lin.linear(s0)
    return best, AffineMap(p, ((a, b), (c, d)), (-tx, -ty))


def canonical_key(w: WeightFunction) -> CanonicalKey:
    return _canonical(w)[0]


def key_to_weight(p: int, key: CanonicalKey) -> WeightFunction:
    return WeightFunction(p, {(x, y): v for y, x, v in key})


def affine_canonical(w: WeightFunction) -> WeightFunction:
    """Least member of the AGL(2, p)-orbit of ``w``; idempotent."""
    return key_to_weight(w.p, canonical_key(w))


def canonicalizing_map(w: WeightFunction) -> AffineMap:
    """An affine map carrying ``w`` onto its canonical form."""
    return _canonical(w)[1]


class _Budget:
    def __init__(self, limit: Optional[int]):
        self.limit = limit
        self.used = 0

    def spend(self, n: int = 1) -> bool:
        if self.limit is not None and self.used + n > self.limit:
            return False
        self.used += n
        return True


def canonical_supports(
    p: int, max_size: int, budget: Optional[_Budget] = None
) -> Tuple[dict, bool]:
    """Orbit representatives of k-point sets for k = 1..max_size.

    Built by augmentation: every (k+1)-set contains a k-set, so adding one
    point to each k-representative in every possible way and canonicalizing
    reaches every orbit. Returns ``(reps_by_size, complete)``.
    """
    budget = budget or _Budget(None)
    reps: dict[int, list[Tuple[Point, ...]]] = {1: [((0, 0),)]} if max_size >= 1 else {}
    plane = list(all_points(p))
    for k in range(1, max_size):
        found = set()
        for rep in reps[k]:
            have = set(rep)
            for z in plane:
                if z in have:
                    continue
                if not budget.spend():
                    return reps, False
                w = WeightFunction.indicator(p, rep + (z,))
                found.add(tuple(sorted((x, y) for y, x, _ in canonical_key(w))))
        reps[k + 1] = sorted(found, key=lambda pts: sorted((y, x) for x, y in pts))
    return reps, True


# --- search spec and results ---------------------------------------------


@dataclass(frozen=True)
class SearchSpec:
    p: int
    support_sizes: Tuple[int, ...]
    value_set: Tuple[Fraction, ...]
    constraint: str = "none"
    max_nodes: int = 1_000_000
    mode: str = "exhaustive"
    seed: int = 0
    exclude_exempt: bool = False
    witness_cap: int = 16

    def __post_init__(self):
        object.__setattr__(self, "support_sizes", tuple(sorted(set(self.support_sizes))))
        object.__setattr__(
            self, "value_set", tuple(sorted(set(Fraction(v) for v in self.value_set)))
        )

    def validate(self) -> None:
        check_prime(self.p)
        if self.mode not in ("exhaustive", "randomized"):
            raise InfeasibleSpecError(f"unknown mode {self.mode!r}")
        cap = MAX_EXHAUSTIVE_P if self.mode == "exhaustive" else MAX_RANDOMIZED_P
        if self.p > cap:
            raise InfeasibleSpecError(f"{self.mode} search needs p <= {cap}, got {self.p}")
        if not self.support_sizes:
            raise InfeasibleSpecError("no support sizes given")
        if self.support_sizes[0] < 1 or self.support_sizes[-1] > self.p**2:
            raise InfeasibleSpecError(f"support sizes must lie in [1, {self.p ** 2}]")
        if not self.value_set:
            raise InfeasibleSpecError("empty value set")
        if 0 in self.value_set:
            raise InfeasibleSpecError("value set must exclude 0")
        if self.constraint not in CONSTRAINTS:
            raise InfeasibleSpecError(f"unknown constraint {self.constraint!r}")
        if self.max_nodes < 1 or self.witness_cap < 1:
            raise InfeasibleSpecError("budget and witness cap must be positive")
        if not 0 <= self.seed < 2**64:
            raise InfeasibleSpecError("seed must be an unsigned 64-bit integer")

    @classmethod
    def from_dict(cls, doc: dict) -> "SearchSpec":
        if not isinstance(doc, dict):
            raise MalformedInputError("search spec must be a JSON object")
        try:
            sizes = doc["supportSizes"]
            if isinstance(sizes, dict):
                sizes = range(int(sizes["min"]), int(sizes["max"]) + 1)
            budget = doc.get("budget", {})
            return cls(
                p=doc["p"],
                support_sizes=tuple(int(k) for k in sizes),
                value_set=tuple(parse_fraction(v) for v in doc["valueSet"]),
                constraint=doc.get("constraint", "none"),
                max_nodes=int(budget.get("maxNodes", 1_000_000)),
                mode=doc.get("mode", "exhaustive"),
                seed=int(doc.get("seed", 0)),
                exclude_exempt=bool(doc.get("excludeExempt", False)),
                witness_cap=int(doc.get("witnessCap", 16)),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInputError(f"bad search spec: {exc}") from None

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "supportSizes": list(self.support_sizes),
            "valueSet": [fraction_str(v) for v in self.value_set],
            "constraint": self.constraint,
            "budget": {"maxNodes": self.max_nodes},
            "mode": self.mode,
            "seed": self.seed,
            "excludeExempt": self.exclude_exempt,
            "witnessCap": self.witness_cap,
        }


@dataclass
class RangeResult:
    range_id: str
    best_n: Optional[int] = None
    keys: set = field(default_factory=set)
    nodes: int = 0

    def offer(self, n: int, w: WeightFunction) -> None:
        if self.best_n is None or n > self.best_n:
            self.best_n = n
            self.keys = {canonical_key(w)}
        elif n == self.best_n:
            self.keys.add(canonical_key(w))

    def to_dict(self, p: int) -> dict:
        return {
            "bestN": self.best_n,
            "nodes": self.nodes,
            "witnesses": [weight_to_dict(key_to_weight(p, k)) for k in sorted(self.keys)],
        }

    @classmethod
    def from_dict(cls, range_id: str, doc: dict) -> "RangeResult":
        keys = {canonical_key(parse_weight(d)) for d in doc["witnesses"]}
        return cls(range_id, doc["bestN"], keys, int(doc["nodes"]))


@dataclass(frozen=True)
class SearchResult:
    p: int
    best_n: Optional[int]
    witnesses: Tuple[WeightFunction, ...]
    witness_count: int
    nodes_explored: int
    exhaustive: bool

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "bestN": self.best_n,
            "exhaustive": self.exhaustive,
            "nodesExplored": self.nodes_explored,
            "witnessCount": self.witness_count,
            "witnesses": [weight_to_dict(w) for w in self.witnesses],
            "note": "maximum over the given value set only; weights outside it are not covered",
        }


def merge_results(parts: Iterable[RangeResult]) -> Tuple[Optional[int], set, int]:
    best, keys, nodes = None, set(), 0
    for part in parts:
        nodes += part.nodes
        if part.best_n is None:
            continue
        if best is None or part.best_n > best:
            best, keys = part.best_n, set(part.keys)
        elif part.best_n == best:
            keys |= part.keys
    return best, keys, nodes


def admissible(w: WeightFunction, spec: SearchSpec) -> bool:
    if spec.constraint == "nonzeroAverage" and total_mass(w) == 0:
        return False
    if spec.constraint == "nonnegativeValues" and any(v < 0 for v in w.values()):
        return False
    if spec.exclude_exempt and len(set(w.values())) == 1 and is_full_line(w.support, w.p):
        return False
    return True


def evaluate_support(
    spec: SearchSpec, range_id: str, points: Tuple[Point, ...]
) -> RangeResult:
    """Try every value assignment on one support representative."""
    out = RangeResult(range_id)
    for values in product(spec.value_set, repeat=len(points)):
        out.nodes += 1
        w = WeightFunction(spec.p, dict(zip(points, values)))
        if admissible(w, spec):
            out.offer(perfect_count(w), w)
    return out


RANDOM_CHUNK = 1000


def evaluate_random_chunk(spec: SearchSpec, index: int, count: int) -> RangeResult:
    rng = random.Random(f"{spec.seed}:{index}")
    plane = list(all_points(spec.p))
    out = RangeResult(f"r:{index}")
    for _ in range(count):
        out.nodes += 1
        k = rng.choice(spec.support_sizes)
        pts = rng.sample(plane, k)
        w = WeightFunction(spec.p, {z: rng.choice(spec.value_set) for z in pts})
        if admissible(w, spec):
            out.offer(perfect_count(w), w)
    return out


def _run_task(task):
    kind, spec, range_id, arg = task
    if kind == "support":
        return evaluate_support(spec, range_id, arg)
    return evaluate_random_chunk(spec, int(range_id[2:]), arg)


class Checkpoint:
    """Completed range ids in ``path`` (a JSON list); their partial results
    live next to it in ``<path>.results.json``."""

    def __init__(self, path, p: int):
        self.path = Path(path)
        self.results_path = self.path.with_name(self.path.name + ".results.json")
        self.p = p
        self.done: dict[str, RangeResult] = {}
        if self.path.exists():
            ids = json.loads(self.path.read_text())
            if not isinstance(ids, list):
                raise MalformedInputError("checkpoint must be a JSON list of range ids")
            stored = {}
            if self.results_path.exists():
                stored = json.loads(self.results_path.read_text())
            # an id without stored results is re-run
            for rid in ids:
                if rid in stored:
                    self.done[rid] = RangeResult.from_dict(rid, stored[rid])

    def record(self, part: RangeResult) -> None:
        self.done[part.range_id] = part
        ids = sorted(self.done)
        self.results_path.write_text(
            json.dumps({rid: self.done[rid].to_dict(self.p) for rid in ids}, sort_keys=True)
        )
        self.path.write_text(json.dumps(ids))


def run_search(
    spec: SearchSpec, parallel: int = 1, resume: Optional[str] = None
) -> SearchResult:
    spec.validate()
    tasks = []
    complete = True
    budget = _Budget(spec.max_nodes)
    if spec.mode == "exhaustive":
        reps, complete = canonical_supports(spec.p, spec.support_sizes[-1], budget)
        generation_nodes = budget.used
        k_values = len(spec.value_set)
        for k in spec.support_sizes:
            for i, pts in enumerate(reps.get(k, [])):
                if not budget.spend(k_values**k):
                    complete = False
                    break
                tasks.append(("support", spec, f"{k}:{i}", pts))
            if not complete:
                break
            if k not in reps:
                complete = False
    else:
        complete = False
        generation_nodes = 0
        remaining, index = spec.max_nodes, 0
        while remaining > 0:
            n = min(RANDOM_CHUNK, remaining)
            tasks.append(("random", spec, f"r:{index}", n))
            remaining -= n
            index += 1

    checkpoint = Checkpoint(resume, spec.p) if resume else None
    pending = [t for t in tasks if not checkpoint or t[2] not in checkpoint.done]
    parts: dict[str, RangeResult] = dict(checkpoint.done) if checkpoint else {}
    log.info("search: %d ranges, %d pending", len(tasks), len(pending))

    def collect(results):
        for part in results:
            parts[part.range_id] = part
            if checkpoint:
                checkpoint.record(part)

    if parallel > 1 and len(pending) > 1:
        with ProcessPoolExecutor(max_workers=parallel) as pool:
            collect(pool.map(_run_task, pending, chunksize=max(1, len(pending) // (4 * parallel))))
    else:
        collect(map(_run_task, pending))

    ordered = [parts[t[2]] for t in tasks]
    best, keys, nodes = merge_results(ordered)
    shown = tuple(key_to_weight(spec.p, k) for k in sorted(keys)[: spec.witness_cap])
    return SearchResult(
        spec.p, best, shown, len(keys), nodes + generation_nodes, complete
    )


# --- exhaustive and randomized theorem sweeps ------------------------------


@dataclass(frozen=True)
class TheoremSweep:
    checked: int
    violations: Tuple[WeightFunction, ...]
    complete: bool

    def to_dict(self) -> dict:
        return {
            "checked": self.checked,
            "violations": [weight_to_dict(w) for w in self.violations],
            "complete": self.complete,
        }


def canonical_weights(
    p: int, max_support: int, value_set: Iterable, budget: Optional[_Budget] = None
) -> Tuple[list[WeightFunction], bool]:
    """One representative per affine orbit of weights with values in value_set."""
    budget = budget or _Budget(None)
    values = sorted(set(Fraction(v) for v in value_set))
    reps, complete = canonical_supports(p, max_support, budget)
    out = []
    for k in sorted(reps):
        seen = set()
        for pts in reps[k]:
            for assignment in product(values, repeat=k):
                if not budget.spend():
                    return out, False
                key = canonical_key(WeightFunction(p, dict(zip(pts, assignment))))
                if key not in seen:
                    seen.add(key)
                    out.append(key_to_weight(p, key))
    return out, complete and max(reps, default=0) == max_support


def verify_theorem_exhaustive(
    p: int, max_support: int, value_set: Iterable, max_nodes: Optional[int] = None
) -> TheoremSweep:
    check_prime(p)
    if p > MAX_EXHAUSTIVE_P:
        raise InfeasibleSpecError(f"exhaustive sweep needs p <= {MAX_EXHAUSTIVE_P}")
    if not 1 <= max_support <= p * p:
        raise InfeasibleSpecError(f"max_support must lie in [1, {p * p}]")
    values = list(value_set)
    if not values or any(Fraction(v) == 0 for v in values):
        raise InfeasibleSpecError("value set must be nonempty and exclude 0")
    weights, complete = canonical_weights(p, max_support, values, _Budget(max_nodes))
    bad = tuple(w for w in weights if not verify_main_theorem(w).passed)
    return TheoremSweep(len(weights), bad, complete)


def random_weight(
    rng: random.Random, p: int, max_support: int, max_abs: int = 5, max_den: int = 4
) -> WeightFunction:
    k = rng.randint(1, max_support)
    pts = rng.sample(list(all_points(p)), k)
    entries = {}
    for z in pts:
        num = rng.choice([i for i in range(-max_abs, max_abs + 1) if i])
        entries[z] = Fraction(num, rng.randint(1, max_den))
    return WeightFunction(p, entries)


def verify_theorem_random(
    p: int, samples: int, max_support: int, seed: int = 0
) -> TheoremSweep:
    """Theorem check on random rational weights with support at most max_support."""
    check_prime(p)
    rng = random.Random(seed)
    bad = []
    for _ in range(samples):
        w = random_weight(rng, p, max_support)
        verdict: TheoremVerdict = verify_main_theorem(w)
        if not verdict.passed:
            bad.append(w)
    return TheoremSweep(samples, tuple(bad), True)
