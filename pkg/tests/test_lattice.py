import random

import pytest
from hypothesis import given, strategies as st

from dualcox import classify as cl
from dualcox import exact
from dualcox.group import coxeter_group
from dualcox.hurwitz import iter_reduced_factorizations
from dualcox.lattice import (INFINITE, LatticeError, connection_index, connection_index_via_gram_snf,
                             generates_full_lattice, hermite_basis, in_lattice, invariant_factors,
                             kluitmann_invariant_check, lattice_index, roots_of_lattice,
                             smith_normal_form, subsystem_closure, sublattice_index_from_connection)
from dualcox.verify import d4_example_element

matrices = st.integers(1, 4).flatmap(lambda m: st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=m, max_size=m)))


@given(matrices)
def test_smith_form_is_unimodular_diagonalization(a):
    d, u, v = smith_normal_form(a)
    assert exact.matmul(exact.matmul(u, a), v) == d
    assert abs(exact.det(u)) == 1 and abs(exact.det(v)) == 1
    diag = [d[i][i] for i in range(min(len(d), len(d[0])))]
    assert all(d[i][j] == 0 for i in range(len(d)) for j in range(len(d[0])) if i != j)
    nz = [x for x in diag if x]
    assert all(x > 0 for x in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert diag[:len(nz)] == nz


def test_smith_examples():
    assert invariant_factors([[1, 1], [1, -1]]) == [1, 2]
    assert invariant_factors([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]


@given(matrices)
def test_hermite_basis_spans_same_lattice(rows):
    basis = hermite_basis(rows)
    assert all(in_lattice(basis, r) for r in rows)
    assert len(basis) == exact.rank(rows) if any(any(r) for r in rows) else basis == []


def _ids(group, vectors):
    return [group.system.index_of(v) for v in vectors]


def test_subsystem_closure_examples():
    a2 = coxeter_group("A", 2)
    assert len(subsystem_closure(a2, [0, 1])) == 6
    b2 = coxeter_group("B", 2)
    e1, e2 = _ids(b2, [(1, 0), (0, 1)])
    sub = subsystem_closure(b2, [e1, e2])
    assert sub.roots == frozenset(_ids(b2, [(1, 0), (0, 1), (-1, 0), (0, -1)]))
    assert len(subsystem_closure(coxeter_group("E", 6), [7])) == 2


def test_lattice_index_examples():
    b2 = coxeter_group("B", 2)
    sub = _ids(b2, [(1, -1), (1, 1)])
    sup = _ids(b2, [(1, 0), (0, 1)])
    assert lattice_index(b2, sub, sup) == 2
    assert lattice_index(b2, sup, sup) == 1
    assert lattice_index(b2, sup[:1], sup) == INFINITE
    with pytest.raises(LatticeError):
        lattice_index(b2, sup, sub)


def test_connection_index_table():
    for n in range(1, 9):
        g = coxeter_group("A", n)
        assert connection_index(g, g.simple) == n + 1
    for n in range(4, 9):
        g = coxeter_group("D", n)
        assert connection_index(g, g.simple) == 4
    for n, i in ((6, 3), (7, 2), (8, 1)):
        g = coxeter_group("E", n)
        assert connection_index(g, g.simple) == i == connection_index_via_gram_snf(g, g.simple)


def test_d4_example_factorizations_have_index_4():
    g = coxeter_group("D", 4)
    w, word, _ = d4_example_element(g)
    assert generates_full_lattice(g, word)
    for tup in iter_reduced_factorizations(w):
        assert connection_index(g, tup) == 4


def test_generates_full_lattice_examples():
    g = coxeter_group("D", 4)
    assert generates_full_lattice(g, g.simple)
    assert not generates_full_lattice(g, g.simple[:3])
    with pytest.raises(LatticeError):
        generates_full_lattice(coxeter_group("B", 2), [0, 1])


def test_roots_of_lattice_whole_and_single():
    g = coxeter_group("D", 5)
    assert roots_of_lattice(g, range(g.n_roots)).roots == frozenset(range(g.n_roots))
    assert roots_of_lattice(g, [3]).roots == frozenset({3, 3 + g.n_reflections})


def _random_subsets(group, count, seed):
    rng = random.Random(seed)
    for _ in range(count):
        yield rng.sample(range(group.n_reflections), rng.randint(1, group.rank + 1))


@pytest.mark.parametrize("t,n", [("A", 4), ("D", 4), ("D", 5)])
def test_lattice_meets_roots_in_subsystem(t, n):
    g = coxeter_group(t, n)
    for ids in _random_subsets(g, 80, n):
        sub = subsystem_closure(g, ids)
        assert roots_of_lattice(g, sorted(sub.roots)).roots == sub.roots


@pytest.mark.parametrize("t,n", [("A", 4), ("D", 4), ("D", 5), ("E", 6)])
def test_index_squared_times_host_index(t, n):
    g = coxeter_group(t, n)
    host = connection_index(g, g.simple)
    seen = 0
    for ids in _random_subsets(g, 150, 2 * n):
        sub = subsystem_closure(g, ids)
        if sub.rank != n:
            continue
        idx = lattice_index(g, sorted(sub.roots), range(g.n_roots))
        i_sub = connection_index(g, sorted(sub.roots))
        assert idx * idx * host == i_sub
        assert sublattice_index_from_connection(i_sub, host) == idx
        seen += 1
    assert seen > 10


@pytest.mark.parametrize("t,n", [("A", 4), ("D", 4), ("B", 3), ("F", 4)])
def test_closure_matches_generated_subgroup(t, n):
    g = coxeter_group(t, n)
    for ids in _random_subsets(g, 40, 3):
        closure = subsystem_closure(g, ids)
        again = subsystem_closure(g, sorted(r % g.n_reflections for r in closure.roots))
        assert again == closure
        sub = cl.reflection_subgroup(g, ids)
        assert sub.closure == closure


def test_kluitmann_examples():
    g = coxeter_group("A", 3)
    assert kluitmann_invariant_check(g.identity())
    assert all(kluitmann_invariant_check(w) for w in g.elements())
