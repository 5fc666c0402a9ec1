"""Acceptance criteria 1 to 10.

Each test carries a ``criterion`` marker; conftest prints one PASS/FAIL line
per criterion at the end of the run. Runtime limits are asserted inside the
tests so a slow pass still fails.
"""

import itertools
import random
import time
from fractions import Fraction
from math import comb

import pytest

from corpus import random_integer_weight, random_weight_any, subgroup_indicator
from perfdirs.analysis import (
    Degeneracy,
    classify_degenerate,
    determined_directions,
    perfect_count,
    perfect_directions,
    perfect_directions_spectral,
    redei_megyesi_check,
)
from perfdirs.constructions import (
    is_isotropic,
    mixed_sign_directions,
    power_graph_example,
    small_support_example,
    so2_admissible,
    so2_orbit_example,
    two_lines_example,
)
from perfdirs.plane import AffineMap, all_points, enumerate_directions, is_prime
from perfdirs.search import verify_theorem_exhaustive, verify_theorem_random
from perfdirs.spectral import check_support_bound, check_uncertainty, fourier_support
from perfdirs.weights import WeightFunction, total_mass, transform_weight


class Timer:
    def __init__(self, limit):
        self.limit = limit

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert self.elapsed < self.limit, f"took {self.elapsed:.1f}s, limit {self.limit}s"


@pytest.fixture(scope="module")
def integer_corpus():
    rng = random.Random(7)
    return {p: [random_integer_weight(rng, p) for _ in range(10_000)] for p in (3, 5, 7, 11)}


@pytest.mark.criterion(1, "power graph: D = (p+3)/2 and N = (p-1)/2 for p in {5,7,11,13}")
def test_power_graph_counts():
    with Timer(1):
        for p in (5, 7, 11, 13):
            w = power_graph_example(p).w
            assert w.support == {(t, pow(t, (p + 1) // 2, p)) for t in range(p)}
            rep = perfect_directions(w)
            assert rep.D == (p + 3) // 2
            assert rep.N == (p - 1) // 2


@pytest.mark.criterion(2, "rotation orbits: N = n, all mixed-sign, every p <= 100 and admissible n")
def test_rotation_orbits():
    rng = random.Random(2)
    cases = 0
    with Timer(30):
        for p in (q for q in range(3, 101) if is_prime(q)):
            base_points = [
                z for z in all_points(p) if z != (0, 0) and not is_isotropic(z, p)
            ]
            for n in so2_admissible(p):
                assert (p - (1 if p % 4 == 1 else -1)) % (2 * n) == 0
                for z in rng.sample(base_points, 3):
                    w = so2_orbit_example(p, n, z).w
                    rep = perfect_directions(w)
                    assert rep.N == n
                    assert rep.perfect <= mixed_sign_directions(w)
                    cases += 1
    assert cases > 300


@pytest.mark.criterion(3, "two lines: N = p-1 (crossing) and N = p (parallel) for p in {3,5,7,11}")
def test_two_lines():
    with Timer(1):
        for p in (3, 5, 7, 11):
            w = two_lines_example(p).w
            assert len(w) == 2 * (p - 1) and perfect_directions(w).N == p - 1
            w = two_lines_example(p, parallel=True).w
            assert len(w) == 2 * p and perfect_directions(w).N == p


@pytest.mark.criterion(4, "|S| = p+2, nonzero mass, N = 2 for p in {5,7,11}")
def test_small_support():
    with Timer(1):
        for p in (5, 7, 11):
            w = small_support_example(p).w
            assert len(w) == p + 2
            assert total_mass(w) != 0
            assert perfect_directions(w).N == 2


def theorem_holds(w):
    values = set(w.values())
    if len(w) == w.p and len(values) == 1 and len(determined_directions(w.support, w.p)) == 1:
        return True
    return perfect_count(w) <= Fraction(len(w), 2)


@pytest.mark.criterion(5, "N <= |S|/2: exhaustive at p = 3 and p = 5, plus 1e5 random at p = 5")
def test_theorem_sweeps():
    with Timer(300):
        s3 = verify_theorem_exhaustive(3, 9, [-1, 1])
        assert s3.complete and s3.violations == ()
        s5 = verify_theorem_exhaustive(5, 6, [1])
        assert s5.complete and s5.violations == ()
        rnd = verify_theorem_random(5, 100_000, 12, seed=5)
        assert rnd.checked == 100_000 and rnd.violations == ()
        # no orbit reduction: every function F_3^2 -> {-1, 0, 1}
        pts = list(all_points(3))
        for vals in itertools.product((-1, 0, 1), repeat=9):
            w = WeightFunction(3, dict(zip(pts, vals)), drop_zeros=True)
            if w:
                assert theorem_holds(w)


@pytest.mark.criterion(6, "p = 5: all 53130 five-point sets are lines or determine >= 4 directions")
def test_redei_megyesi_p5():
    p = 5
    with Timer(30):
        attained = 0
        count = 0
        for pts in itertools.combinations(list(all_points(p)), p):
            count += 1
            r = redei_megyesi_check(pts, p)
            slopes = {((b[1] - a[1]) * pow(b[0] - a[0], -1, p)) % p if b[0] != a[0] else None
                      for a, b in itertools.combinations(pts, 2)}
            assert r.D == len(slopes)
            assert r.is_line == (len(slopes) == 1)
            assert r.passed and (r.is_line or r.D >= (p + 3) // 2)
            if not r.is_line and r.D == (p + 3) // 2:
                attained += 1
        assert count == comb(25, 5) == 53130
        assert attained > 0


@pytest.mark.criterion(7, "uncertainty dichotomy on 1e4 random integer w per p in {3,5,7,11}")
def test_uncertainty_suite(integer_corpus):
    with Timer(120):
        for p, ws in integer_corpus.items():
            for w in ws:
                r = check_uncertainty(w)
                assert r.satisfied
                if r.lhs < p + 1:
                    d = r.constant_direction
                    assert d is not None
                    # w must take a single value on every line of d
                    by_line = {}
                    for z in all_points(p):
                        by_line.setdefault(d.line_offset(z, p), set()).add(w[z])
                    assert all(len(v) == 1 for v in by_line.values())


@pytest.mark.criterion(8, "Fourier support bound on the same corpus, equality for subgroup lines")
def test_support_bound_suite(integer_corpus):
    with Timer(120):
        for p, ws in integer_corpus.items():
            for w in ws:
                n = perfect_directions(w).N
                r = check_support_bound(w, n)
                assert r.holds
                assert r.lhs == fourier_support(w).support_size
                assert r.rhs == (p - 1) * (p + 1 - n) + 1
            for d in enumerate_directions(p):
                w = subgroup_indicator(p, d)
                r = check_support_bound(w, perfect_directions(w).N)
                assert r.lhs == r.rhs == p


def random_map(rng, p):
    while True:
        a, b, c, d = (rng.randrange(p) for _ in range(4))
        if (a * d - b * c) % p:
            return AffineMap(p, ((a, b), (c, d)), (rng.randrange(p), rng.randrange(p)))


@pytest.mark.criterion(9, "line-sum and Fourier methods agree; (N, D) affine and scalar invariant")
def test_oracle_equivalence():
    rng = random.Random(9)
    with Timer(300):
        for p in (3, 5, 7):
            for _ in range(10_000):
                w = random_weight_any(rng, p)
                assert perfect_directions(w).perfect == perfect_directions_spectral(w)
        for _ in range(1000):
            p = rng.choice((3, 5, 7, 11))
            w = random_weight_any(rng, p)
            m = random_map(rng, p)
            c = Fraction(rng.choice([-3, -2, -1, 1, 2, 5]), rng.randint(1, 4))
            before = perfect_directions(w)
            after = perfect_directions(transform_weight(m, w).scale(c))
            assert (before.N, before.D) == (after.N, after.D)
            assert after.perfect == {m.map_direction(d) for d in before.perfect}


def pencil_periodic_directions(w):
    p = w.p
    out = []
    for d in enumerate_directions(p):
        by_line = {}
        for z in all_points(p):
            by_line.setdefault(d.line_offset(z, p), set()).add(w[z])
        if all(len(v) == 1 for v in by_line.values()):
            out.append(d)
    return out


@pytest.mark.criterion(10, "degenerate classification over every nonzero F_3^2 -> {-1,0,1}")
def test_degenerate_classification():
    p = 3
    pts = list(all_points(p))
    seen = {kind: 0 for kind in Degeneracy}
    with Timer(60):
        for vals in itertools.product((-1, 0, 1), repeat=9):
            if not any(vals):
                continue
            w = WeightFunction(p, dict(zip(pts, vals)), drop_zeros=True)
            c = classify_degenerate(w)
            n = perfect_directions(w).N
            constant = len(set(vals)) == 1
            periodic = pencil_periodic_directions(w)
            seen[c.kind] += 1
            if constant:
                assert c.kind is Degeneracy.ALL_PERFECT and n == p + 1
            elif periodic:
                assert len(periodic) == 1
                assert c.kind is Degeneracy.EXACTLY_ONE_IMPERFECT and n == p
                assert c.direction == periodic[0]
            else:
                assert c.kind is Degeneracy.GENERIC and n < p
    assert seen[Degeneracy.ALL_PERFECT] == 2
    assert seen[Degeneracy.EXACTLY_ONE_IMPERFECT] == 4 * (3**3 - 3)
