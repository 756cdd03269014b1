from fractions import Fraction
from itertools import product

import pytest

from dualcox import exact
from dualcox.rootsys import (RootSystemError, build_dihedral, build_root_system,
                             cartan_like_matrix, closure_from_simple, reflect)

BUILT = [("A", 1), ("A", 2), ("A", 3), ("A", 4), ("A", 8), ("B", 2), ("B", 3), ("B", 4),
         ("D", 4), ("D", 5), ("D", 8), ("E", 6), ("E", 7), ("E", 8), ("F", 4), ("H", 3), ("H", 4)]

# |Phi| from the closure oracle (frozen)
ROOT_COUNTS = {("A", 1): 2, ("A", 2): 6, ("A", 3): 12, ("A", 4): 20, ("A", 8): 72, ("B", 2): 8,
               ("B", 3): 18, ("B", 4): 32, ("D", 4): 24, ("D", 5): 40, ("D", 8): 112,
               ("E", 6): 72, ("E", 7): 126, ("E", 8): 240, ("F", 4): 48, ("H", 3): 30, ("H", 4): 120}


def _reflect_vec(a, v):
    c = exact._simplify(2 * exact.dot(v, a) / Fraction(1) / exact.dot(a, a)) if not isinstance(
        exact.dot(a, a), exact.Golden) else 2 * exact.dot(v, a) * exact.dot(a, a).inverse()
    return tuple(exact._simplify(x - c * y) for x, y in zip(v, a))


@pytest.mark.parametrize("t,n", BUILT)
def test_root_count_matches_closure_oracle(t, n):
    rs = build_root_system(t, n)
    oracle = closure_from_simple(rs.simple_roots(), _reflect_vec)
    assert len(oracle) == rs.n_roots == ROOT_COUNTS[(t, n)]
    assert set(oracle) == set(rs.roots)


@pytest.mark.parametrize("t,n", BUILT)
def test_reflections_are_involutive_root_permutations(t, n):
    rs = build_root_system(t, n)
    for a in range(rs.n_positive):
        p = rs.reflection_permutation(a)
        assert sorted(p) == list(range(rs.n_roots))
        assert all(p[p[i]] == i for i in range(rs.n_roots))
        assert p[a] == rs.negation_map[a]


@pytest.mark.parametrize("t,n", BUILT)
def test_crystallographic_flag(t, n):
    rs = build_root_system(t, n)
    integral = all(exact.is_integer(2 * exact.dot(b, a) * _inv(exact.dot(a, a)))
                   for a, b in product(rs.roots, repeat=2))
    assert rs.is_crystallographic == integral


def _inv(x):
    return x.inverse() if isinstance(x, exact.Golden) else Fraction(1) / x


@pytest.mark.parametrize("t,n", [("A", 3), ("E", 6), ("H", 3)])
def test_build_is_deterministic(t, n):
    assert build_root_system(t, n).roots == build_root_system(t, n).roots


@pytest.mark.parametrize("t,n", BUILT)
def test_simple_roots_first_and_coefficients_signed(t, n):
    rs = build_root_system(t, n)
    assert list(rs.simple_root_ids) == list(range(n))
    for i, c in enumerate(rs.coefficients):
        signs = {exact.sign(x) for x in c} - {0}
        assert signs == ({1} if i < rs.n_positive else {-1})


def test_reflect_examples_a2():
    rs = build_root_system("A", 2)
    a1, a2 = rs.simple_roots()
    assert reflect(rs, 0, a1) == tuple(-x for x in a1)
    assert reflect(rs, 0, (1, 1, 1)) == (1, 1, 1)
    assert reflect(rs, 0, a2) == tuple(x + y for x, y in zip(a1, a2))


def test_reflect_dimension_mismatch():
    rs = build_root_system("A", 2)
    with pytest.raises(RootSystemError):
        reflect(rs, 0, (1, 0))


@pytest.mark.parametrize("t,n,det", [("A", 2, 3), ("D", 4, 4), ("E", 6, 3), ("E", 7, 2), ("E", 8, 1)])
def test_cartan_determinants(t, n, det):
    c = cartan_like_matrix(build_root_system(t, n))
    assert exact.det(c) == det


def test_cartan_a2():
    assert cartan_like_matrix(build_root_system("A", 2)) == [[2, -1], [-1, 2]]


@pytest.mark.parametrize("t,n", [("A", 0), ("B", 1), ("D", 3), ("E", 5), ("E", 9), ("F", 3),
                                 ("H", 2), ("H", 5), ("X", 2), ("I2", 5)])
def test_invalid_types_rejected(t, n):
    with pytest.raises(RootSystemError):
        build_root_system(t, n)


@pytest.mark.parametrize("m", [3, 4, 5, 8])
def test_dihedral_counts(m):
    d = build_dihedral(m)
    assert len(d.elements()) == 2 * m
    assert len(d.reflections()) == m


def test_dihedral_half_turn_is_not_reflection():
    d = build_dihedral(4)
    rot = ("rot", 2)
    assert d.is_involution(rot)
    assert rot not in d.reflections()


def test_dihedral_rejects_small_m():
    with pytest.raises(RootSystemError):
        build_dihedral(2)


def test_root_json_format():
    data = build_root_system("H", 3).to_json()
    assert set(data) == {"type", "rank", "ambient_dim", "roots", "simple"}
    scalars = [x for r in data["roots"] for x in r]
    assert any(isinstance(x, dict) and set(x) == {"a", "b"} for x in scalars)
    assert build_root_system("D", 4).to_json()["simple"] == [0, 1, 2, 3]
