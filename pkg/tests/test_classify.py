import random
from collections import deque
from itertools import permutations, product
from math import gcd

import pytest

from dualcox import classify as cl
from dualcox.group import (SignedPermutation, absolute_leq, coxeter_group, element_from_word,
                           from_signed_permutation, reflection_length, to_signed_permutation)
from dualcox.verify import d4_example_element


def signed(g, *images):
    return from_signed_permutation(g, SignedPermutation(images))


def test_parabolic_closure_examples():
    g = coxeter_group("B", 4)
    assert cl.parabolic_closure(g.identity()).roots == frozenset()
    t = g.reflection(5)
    assert cl.parabolic_closure(t).roots == frozenset({5, 5 + g.n_reflections})
    assert len(cl.parabolic_closure(signed(g, -1, -2, -3, -4))) == g.n_roots


@pytest.mark.parametrize("t,n", [("A", 3), ("B", 3)])
def test_parabolic_closure_idempotent_and_monotone(t, n):
    g = coxeter_group(t, n)
    els = g.elements()
    closures = {w.perm: cl.parabolic_closure(w).roots for w in els}
    for w in els:
        c = closures[w.perm]
        assert g.roots_in_span(c) == c
        assert cl.is_parabolic_subgroup(cl.reflection_subgroup(g, [r % g.n_reflections for r in c]))
    for u in els:
        for v in els:
            if absolute_leq(u, v):
                assert closures[u.perm] <= closures[v.perm]


def test_is_parabolic_subgroup_examples():
    g = coxeter_group("E", 6)
    for m in range(1, 7):
        assert cl.is_parabolic_subgroup(cl.reflection_subgroup(g, g.simple[:m]))
    b4 = coxeter_group("B", 4)
    long_roots = [b4.system.index_of(v) for v in
                  [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]]
    assert not cl.is_parabolic_subgroup(cl.reflection_subgroup(b4, long_roots))
    d4 = coxeter_group("D", 4)
    _, _, (s0, s1, s2, s3) = d4_example_element(d4)
    assert cl.is_parabolic_subgroup(cl.reflection_subgroup(d4, [s0, s1, s3]))


def test_quasi_coxeter_examples():
    d4 = coxeter_group("D", 4)
    w, _, _ = d4_example_element(d4)
    assert cl.is_quasi_coxeter(w)
    assert cl.is_quasi_coxeter(w, fast=True)
    assert not cl.is_coxeter_element(w)
    assert cl.is_coxeter_element(element_from_word(d4, d4.simple))
    b4 = coxeter_group("B", 4)
    minus_one = signed(b4, -1, -2, -3, -4)
    assert not cl.is_quasi_coxeter(minus_one)
    assert not cl.is_parabolic_quasi_coxeter(minus_one)
    for t, n in (("A", 4), ("B", 3), ("F", 4), ("H", 3)):
        g = coxeter_group(t, n)
        assert cl.is_quasi_coxeter(element_from_word(g, g.simple))


def test_every_element_of_type_a_is_pqc():
    g = coxeter_group("A", 4)
    assert all(cl.is_parabolic_quasi_coxeter(w) for w in g.elements())


@pytest.mark.parametrize("t,n", [("A", 3), ("D", 4), ("D", 5)])
def test_fast_paths_agree_on_simply_laced(t, n):
    g = coxeter_group(t, n)
    for w in g.elements():
        assert cl.is_quasi_coxeter(w, fast=True) == cl.is_quasi_coxeter(w)
        assert cl.is_parabolic_quasi_coxeter(w, fast=True) == cl.is_parabolic_quasi_coxeter(w)


@pytest.mark.parametrize("t,n", [("A", 3), ("B", 3), ("D", 4), ("F", 4), ("H", 3)])
def test_first_factorization_decides_quasi_coxeter(t, n):
    g = coxeter_group(t, n)
    for w in g.elements():
        first, any_ = cl.quasi_coxeter_paths(w)
        assert first == any_


def test_all_factorizations_generate_examples():
    b3 = coxeter_group("B", 3)
    assert cl.all_factorizations_generate(element_from_word(b3, b3.simple))[0]
    w, _, _ = d4_example_element()
    assert cl.all_factorizations_generate(w)[0]
    a3 = coxeter_group("A", 3)
    for w in a3.elements():
        if cl.is_quasi_coxeter(w):
            assert cl.all_factorizations_generate(w)[0]


@pytest.mark.parametrize("t,n,count", [("A", 2, 3), ("B", 2, 5), ("D", 4, 13), ("F", 4, 25),
                                       ("A", 4, 7), ("I2", 5, 4)])
def test_conjugacy_class_counts(t, n, count):
    classes = cl.conjugacy_classes(coxeter_group(t, n))
    assert len(classes) == count
    assert sum(len(c) for c in classes) == coxeter_group(t, n).order


@pytest.mark.parametrize("t,n", [("D", 4), ("B", 3)])
def test_pqc_iff_below_quasi_coxeter(t, n):
    g = coxeter_group(t, n)
    qc = [w for w in g.elements() if cl.is_quasi_coxeter(w)]
    for w in g.elements():
        below = any(absolute_leq(w, v) for v in qc)
        assert cl.is_parabolic_quasi_coxeter(w) == below


def test_pqc_iff_below_quasi_coxeter_f4_sampled():
    g = coxeter_group("F", 4)
    qc = [w for w in g.elements() if cl.is_quasi_coxeter(w)]
    rng = random.Random(2)
    for w in rng.sample(g.elements(), 150):
        below = any(absolute_leq(w, v) for v in qc)
        assert cl.is_parabolic_quasi_coxeter(w) == below


def _is_2n_cycle(sp):
    n = sp.n
    x, steps = 1, 0
    while True:
        x = sp(x) if x > 0 else -sp(-x)
        steps += 1
        if x == 1:
            return steps == 2 * n


@pytest.mark.parametrize("n", [2, 3, 4])
def test_type_b_pqc_are_prefixes_of_2n_cycles(n):
    g = coxeter_group("B", n)
    cycles = [w for w in g.elements() if _is_2n_cycle(to_signed_permutation(w))]
    assert cycles
    for w in g.elements():
        prefix = any(absolute_leq(w, c) for c in cycles)
        assert cl.is_parabolic_quasi_coxeter(w) == prefix


@pytest.mark.parametrize("m", range(3, 11))
def test_dihedral_quasi_coxeter_elements(m):
    # r_i r_j is a rotation through 2(i-j) steps; it is quasi-Coxeter iff the pair generates
    g = coxeter_group("I2", m)
    gens = {}
    for i, j in permutations(range(m), 2):
        w = element_from_word(g, (i, j))
        gens[w] = gens.get(w, False) or gcd(i - j, m) == 1
    for w in g.elements():
        qc = cl.is_quasi_coxeter(w)
        assert qc == cl.is_coxeter_element(w)
        assert qc == gens.get(w, False)
        assert cl.is_parabolic_quasi_coxeter(w) == (reflection_length(w) < 2 or qc)


def test_h_coxeter_test_not_implemented():
    g = coxeter_group("H", 3)
    with pytest.raises(NotImplementedError):
        cl.is_coxeter_element(element_from_word(g, g.simple))


def _closure(gens, n):
    start = SignedPermutation(tuple(range(1, n + 1)))
    seen = {start.images}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = s * x
            if y.images not in seen:
                seen.add(y.images)
                queue.append(y)
    return seen


@pytest.mark.parametrize("n", [4, 5])
def test_dn_stabilizer_is_standard_parabolic(n):
    gens = cl.dn_simple_reflections(n)
    everything = [SignedPermutation(tuple(s * p for s, p in zip(signs, perm)))
                  for perm in permutations(range(1, n + 1))
                  for signs in product((1, -1), repeat=n) if signs.count(-1) % 2 == 0]
    assert len(_closure(gens, n)) == len(everything)
    for i in range(n):
        a = cl.dn_stabilized_set(n, i)
        stab = {x.images for x in everything if frozenset(x(v) for v in a) == a}
        assert stab == _closure([s for k, s in enumerate(gens) if k != i], n)


def test_dn_intersections():
    four = cl.dn_maximal_parabolic_intersections(4)
    assert not four.all_nontrivial
    assert {"I_removed": 2, "J_removed": 2, "A_I": [3, 4], "wA_J": [2, 4], "w_word": ["s2"]} \
        in four.witnesses
    assert not cl.dn_maximal_parabolic_intersections(5).all_nontrivial
    assert cl.dn_maximal_parabolic_intersections(6).all_nontrivial


def test_d4_witness_is_trivial_intersection():
    # <s0, s1, s3> and its s2-conjugate share no reflection
    g = coxeter_group("D", 4)
    _, _, (s0, s1, s2, s3) = d4_example_element(g)
    p = cl.reflection_subgroup(g, [s0, s1, s3]).closure.roots
    q = cl.reflection_subgroup(g, [g.conj[s2][s] for s in (s0, s1, s3)]).closure.roots
    assert not p & q


def test_classification_record_json():
    g = coxeter_group("B", 4)
    rec = cl.classify(signed(g, -1, -2, -3, -4)).to_json()
    assert rec["reflection_length"] == 4
    assert rec["transitive"] is False
    assert rec["outside_factorization"] is not None
    assert rec["group"] == {"type": "B", "rank": 4, "order": 384}
