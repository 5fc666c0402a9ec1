import pytest

from perfdirs.analysis import determined_directions, perfect_directions, verify_main_theorem
from perfdirs.constructions import (
    RotationMatrix,
    is_isotropic,
    legendre_minus_one,
    mixed_sign_directions,
    power_graph_example,
    small_support_example,
    so2_admissible,
    so2_group,
    so2_order,
    so2_orbit_example,
    two_lines_example,
)
from perfdirs.errors import ConstructionError
from perfdirs.plane import Direction, INFINITY, is_collinear, is_prime
from perfdirs.weights import total_mass

ODD_PRIMES_200 = [p for p in range(3, 200) if is_prime(p)]


def test_so2_p5_elements():
    # every (a, b) with a^2 + b^2 = 1 mod 5, by enumeration
    expected = {(a, b) for a in range(5) for b in range(5) if (a * a + b * b) % 5 == 1}
    assert expected == {(1, 0), (0, 1), (4, 0), (0, 4)}
    assert {(r.a, r.b) for r in so2_group(5)} == expected


@pytest.mark.parametrize("p, order", [(3, 4), (5, 4), (7, 8)])
def test_so2_orders(p, order):
    assert len(so2_group(p)) == order == so2_order(p)


@pytest.mark.parametrize("p", ODD_PRIMES_200)
def test_so2_group_structure(p):
    group = so2_group(p)
    brute = {(a, b) for a in range(p) for b in range(p) if (a * a + b * b) % p == 1}
    assert {(r.a, r.b) for r in group} == brute
    assert len(group) == p - legendre_minus_one(p)
    assert len(set(group)) == len(group)
    elems = set(group)
    gen = group[1]
    for g in group:
        assert g * gen in elems
    assert group[0].is_identity and (group[-1] * gen).is_identity


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_rotations_act_freely(p):
    nonzero = [(x, y) for x in range(p) for y in range(p) if (x, y) != (0, 0)]
    for g in so2_group(p)[1:]:
        assert all(g(z) != z for z in nonzero)


def test_rotation_validation():
    with pytest.raises(ConstructionError):
        RotationMatrix(5, 1, 1)


def test_so2_example_p5():
    r = so2_orbit_example(5, 2, (1, 0))
    assert r.w.entries == {(1, 0): 1, (4, 0): 1, (0, 1): -1, (0, 4): -1}
    assert r.predicted_n == 2
    assert perfect_directions(r.w).perfect == {Direction(1), Direction(4)}


def test_so2_example_p7():
    r = so2_orbit_example(7, 4, (1, 0))
    assert len(r.w) == 8 and r.predicted_n == 4
    assert perfect_directions(r.w).N == 4


def test_so2_example_errors():
    with pytest.raises(ConstructionError):
        so2_orbit_example(5, 3)
    with pytest.raises(ConstructionError):
        so2_orbit_example(5, 2, (0, 0))


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_so2_perfect_equals_mixed_sign(p):
    for n in so2_admissible(p):
        for z in [(1, 0), (1, 1), (2, 5 % p), (3, 1)]:
            if is_isotropic(z, p):
                continue
            r = so2_orbit_example(p, n, z)
            assert len(r.w) == 2 * n
            assert sum(1 for v in r.w.values() if v == 1) == n
            mixed = mixed_sign_directions(r.w)
            assert len(mixed) == n
            assert perfect_directions(r.w).perfect == mixed


@pytest.mark.parametrize("p", [5, 13, 17, 29])
def test_so2_isotropic_base_point(p):
    z = next((x, y) for x in range(1, p) for y in range(p) if (x * x + y * y) % p == 0)
    for n in so2_admissible(p):
        r = so2_orbit_example(p, n, z)
        assert len(r.w) == 2 * n
        assert is_collinear(list(r.w.support), p)
        assert r.predicted_n == 1 == perfect_directions(r.w).N
        assert verify_main_theorem(r.w).passed


def test_no_isotropic_points_for_p_3_mod_4():
    for p in (3, 7, 11, 19):
        assert not any(is_isotropic((x, y), p) for x in range(p) for y in range(p))


def test_power_graph_p5():
    r = power_graph_example(5)
    assert r.w.support == {(t, pow(t, 3, 5)) for t in range(5)}
    assert r.w.support == {(0, 0), (1, 1), (2, 3), (3, 2), (4, 4)}
    rep = perfect_directions(r.w)
    assert (r.predicted_d, r.predicted_n) == (4, 2) == (rep.D, rep.N)


def test_power_graph_p11():
    r = power_graph_example(11)
    rep = perfect_directions(r.w)
    assert (r.predicted_d, r.predicted_n) == (7, 5) == (rep.D, rep.N)
    assert len(determined_directions(r.w.support, 11)) == 7


def test_two_lines():
    r = two_lines_example(3)
    assert r.w.support == {(1, 0), (2, 0), (0, 1), (0, 2)}
    assert r.predicted_n == 2 == perfect_directions(r.w).N
    r = two_lines_example(5, parallel=True)
    assert len(r.w) == 10 and r.predicted_n == 5 == perfect_directions(r.w).N


def test_small_support():
    r = small_support_example(5)
    assert len(r.w) == 7 and total_mass(r.w) == 5
    rep = perfect_directions(r.w)
    assert rep.N == 2 and rep.perfect == {Direction(0), INFINITY}
    r = small_support_example(7)
    assert len(r.w) == 9 and perfect_directions(r.w).N == 2
    with pytest.raises(ConstructionError):
        small_support_example(3)


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_constructions_pass_theorem(p):
    results = [power_graph_example(p), two_lines_example(p), two_lines_example(p, True)]
    if p >= 5:
        results.append(small_support_example(p))
    results += [so2_orbit_example(p, n) for n in so2_admissible(p)]
    for r in results:
        rep = perfect_directions(r.w)
        assert verify_main_theorem(r.w).passed
        assert rep.N == r.predicted_n
        if r.predicted_d is not None:
            assert rep.D == r.predicted_d
