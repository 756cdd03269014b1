"""Quasi-Coxeter and parabolic quasi-Coxeter elements, parabolic subgroups.

Reflection subgroups are compared through their root subsystems: two
subgroups are equal exactly when the closures of their root sets agree,
so no element enumeration is needed.
"""
from collections import deque
from dataclasses import dataclass, field

from . import exact
from .group import (ENUMERATION_BOUND, GroupError, SignedPermutation, compose_perms,
                    from_signed_permutation)
from .hurwitz import first_reduced_factorization, is_hurwitz_transitive, iter_reduced_factorizations
from .lattice import RootSubsystem, generates_full_lattice, subsystem_closure


@dataclass(frozen=True)
class ReflectionSubgroup:
    group: object = field(compare=False, repr=False)
    generators: frozenset = frozenset()       # reflection ids
    closure: RootSubsystem = None

    @property
    def rank(self):
        return self.closure.rank


def reflection_subgroup(group, reflection_ids):
    ids = frozenset(int(t) for t in reflection_ids)
    return ReflectionSubgroup(group, ids, subsystem_closure(group, ids))


def parabolic_closure(w):
    """Root subsystem of the parabolic closure: the roots lying in Mov(w)."""
    group = w.group
    roots = group.moved_roots(w.perm)
    return RootSubsystem(roots, group.length(w.perm))


def is_parabolic_subgroup(sub):
    """True iff the subgroup's root subsystem is cut out by a subspace: Phi' = Phi ∩ span(Phi')."""
    roots = sub.closure.roots
    return roots == sub.group.roots_in_span(roots)


class _SubgroupCache:
    """Memoizes closures and parabolicity by the set of generating reflections."""

    def __init__(self, group):
        self.group = group
        self.closures = {}
        self.parabolic = {}

    def closure(self, ids):
        key = frozenset(ids)
        hit = self.closures.get(key)
        if hit is None:
            hit = subsystem_closure(self.group, key)
            self.closures[key] = hit
        return hit

    def generates(self, ids):
        return len(self.closure(ids).roots) == self.group.n_roots

    def is_parabolic(self, ids):
        key = frozenset(ids)
        hit = self.parabolic.get(key)
        if hit is None:
            roots = self.closure(key).roots
            hit = roots == self.group.roots_in_span(roots)
            self.parabolic[key] = hit
        return hit


def _cache(group):
    c = group.__dict__.get("_subgroup_cache")
    if c is None:
        c = _SubgroupCache(group)
        group.__dict__["_subgroup_cache"] = c
    return c


def generates_group(group, reflection_ids):
    return _cache(group).generates(reflection_ids)


def quasi_coxeter_paths(w):
    """Both routes of the quasi-Coxeter test.

    Returns ``(first, any_)``: whether the first reduced factorization
    generates W, and whether some reduced factorization does.  When every
    factorization generates W or none does, the two agree.
    """
    group = w.group
    if group.length(w.perm) < group.rank:
        return False, False
    cache = _cache(group)
    first = cache.generates(first_reduced_factorization(w).reflections)
    if first:
        return True, True
    for tup in iter_reduced_factorizations(w):
        if cache.generates(tup):
            return False, True
    return False, False


def is_quasi_coxeter(w, fast=False):
    group = w.group
    if group.length(w.perm) < group.rank:
        return False
    if fast and not group.is_dihedral and group.system.is_simply_laced:
        return generates_full_lattice(group, first_reduced_factorization(w).reflections)
    return quasi_coxeter_paths(w)[1]


def is_parabolic_quasi_coxeter(w, fast=False):
    """Some reduced factorization generates a parabolic subgroup.

    With ``fast`` on a simply laced host only the first factorization is
    inspected.
    """
    group = w.group
    cache = _cache(group)
    if fast and not group.is_dihedral and group.system.is_simply_laced:
        return cache.is_parabolic(first_reduced_factorization(w).reflections)
    for tup in iter_reduced_factorizations(w):
        if cache.is_parabolic(tup):
            return True
    return False


def all_factorizations_generate(w):
    """Every reduced factorization generates W. Returns (ok, first failing tuple)."""
    cache = _cache(w.group)
    for tup in iter_reduced_factorizations(w):
        if not cache.generates(tup):
            return False, tup
    return True, None


def all_factorizations_generate_closure(w):
    """Every reduced factorization generates the parabolic closure of w."""
    cache = _cache(w.group)
    target = w.group.moved_roots(w.perm)
    for tup in iter_reduced_factorizations(w):
        if cache.closure(tup).roots != target:
            return False, tup
    return True, None


def corank1_prefix_parabolic_check(w):
    """For a quasi-Coxeter element: every (n-1)-prefix of every reduced factorization is parabolic."""
    ok, _ = corank1_prefix_witness(w)
    return ok


def corank1_prefix_witness(w):
    group = w.group
    cache = _cache(group)
    n = group.rank
    for tup in iter_reduced_factorizations(w):
        if not cache.is_parabolic(tup[:n - 1]):
            return False, tup
    return True, None


def has_complement_to_group(group, reflection_ids):
    """Some reflection t with <W', t> = W."""
    cache = _cache(group)
    base = list(reflection_ids)
    return any(cache.generates(base + [t]) for t in range(group.n_reflections))


# -- Coxeter elements ----------------------------------------------------

def _signable_obtuse(group, root_ids):
    """Signs e_i with e_i e_j (b_i|b_j) <= 0 for all i != j exist."""
    roots = [group.system.roots[r] for r in root_ids]
    k = len(roots)
    signs = [0] * k
    for start in range(k):
        if signs[start]:
            continue
        signs[start] = 1
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for j in range(k):
                if j == i:
                    continue
                ip = exact.sign(exact.dot(roots[i], roots[j]))
                if not ip:
                    continue
                want = -ip * signs[i]
                if signs[j] == 0:
                    signs[j] = want
                    queue.append(j)
                elif signs[j] != want:
                    return False
    return True


def is_coxeter_element(w):
    """Product of a simple system taken from T.

    Decided for Weyl groups (a generating reduced factorization whose roots
    can be signed pairwise obtuse) and for dihedral groups, where any two
    reflections that generate the group form a simple system.
    """
    group = w.group
    if group.length(w.perm) < group.rank:
        return False
    if group.is_dihedral:
        return quasi_coxeter_paths(w)[1]
    if not group.system.is_crystallographic:
        raise NotImplementedError("Coxeter-element test implemented for Weyl and dihedral groups")
    cache = _cache(group)
    for tup in iter_reduced_factorizations(w):
        if cache.generates(tup) and _signable_obtuse(group, tup):
            return True
    return False


# -- conjugacy classes ---------------------------------------------------

def conjugacy_classes(group, bound=ENUMERATION_BOUND):
    """Partition of the group into conjugacy classes, each in enumeration order."""
    if group.order > bound:
        raise GroupError(f"{group.name} has order {group.order}, above the enumeration bound {bound}")
    cached = group.__dict__.get("_classes")
    if cached is not None:
        return cached
    elems = [e.perm for e in group.elements(bound)]
    gens = [group.reflection_perms[s] for s in group.simple]
    seen = set()
    classes = []
    for p in elems:
        if p in seen:
            continue
        cls = [p]
        seen.add(p)
        queue = deque([p])
        while queue:
            q = queue.popleft()
            for g in gens:
                r = compose_perms(compose_perms(g, q), g)
                if r not in seen:
                    seen.add(r)
                    cls.append(r)
                    queue.append(r)
        classes.append([group.element(x) for x in cls])
    group.__dict__["_classes"] = classes
    return classes


def conjugacy_class_representatives(group, bound=ENUMERATION_BOUND):
    return [cls[0] for cls in conjugacy_classes(group, bound)]


# -- classification record -----------------------------------------------

@dataclass
class ClassificationRecord:
    element: object
    reflection_length: int
    is_quasi_coxeter: bool
    is_parabolic_quasi_coxeter: bool
    parabolic_closure: RootSubsystem
    transitive: object
    witness: object
    red_count: int
    orbit_size: int

    def to_json(self):
        w = self.element
        wit = self.witness
        if hasattr(wit, "reflections"):
            wit = list(wit.reflections)
        elif wit is not None and hasattr(wit, "members"):
            wit = None
        return {
            "group": w.group.descriptor(),
            "element": w.simple_images(),
            "reflection_length": self.reflection_length,
            "is_quasi_coxeter": self.is_quasi_coxeter,
            "is_parabolic_quasi_coxeter": self.is_parabolic_quasi_coxeter,
            "parabolic_closure": sorted(r for r in self.parabolic_closure.roots if r < w.group.n_reflections),
            "transitive": self.transitive,
            "red_count": self.red_count,
            "orbit_size": self.orbit_size,
            "outside_factorization": wit,
        }


def classify(w, cap=None):
    tr = is_hurwitz_transitive(w, cap)
    return ClassificationRecord(
        element=w,
        reflection_length=w.group.length(w.perm),
        is_quasi_coxeter=is_quasi_coxeter(w),
        is_parabolic_quasi_coxeter=is_parabolic_quasi_coxeter(w),
        parabolic_closure=parabolic_closure(w),
        transitive=tr.transitive,
        witness=tr.witness,
        red_count=tr.red_count,
        orbit_size=tr.orbit_size,
    )


# -- maximal parabolic subgroups of D_n (signed permutation model) ------

def dn_simple_reflections(n):
    """s_0 = (1,-2)(-1,2) and s_i = (i,i+1)(-i,-(i+1)) for i in 1..n-1."""
    gens = [SignedPermutation.from_cycles(n, [(1, -2), (-1, 2)])]
    for i in range(1, n):
        gens.append(SignedPermutation.from_cycles(n, [(i, i + 1), (-i, -(i + 1))]))
    return gens


def dn_stabilized_set(n, i):
    """A_I for I = S minus s_i, so that W_I = stab(A_I)."""
    if i == 1:
        return frozenset([-1] + list(range(2, n + 1)))
    return frozenset(range(i + 1, n + 1))


def dn_reflections(n):
    """(i,j)(-i,-j) for 1 <= i < |j| <= n, as signed permutations."""
    out = []
    for i in range(1, n + 1):
        for a in range(i + 1, n + 1):
            for j in (a, -a):
                out.append(SignedPermutation.from_cycles(n, [(i, j), (-i, -j)]))
    return out


def _apply_set(sp, a):
    return frozenset(sp(x) for x in a)


@dataclass
class IntersectionReport:
    n: int
    pairs_checked: int
    all_nontrivial: bool
    witnesses: list

    def to_json(self):
        return {"n": self.n, "pairs_checked": self.pairs_checked,
                "all_nontrivial": self.all_nontrivial, "witnesses": self.witnesses}


def dn_maximal_parabolic_intersections(n, max_witnesses=None):
    """Check whether every two maximal parabolic subgroups of D_n intersect nontrivially.

    Maximal parabolics are stab(w(A_J)).  Two of them meet nontrivially iff
    some reflection (k,l)(-k,-l) stabilizes both sets, since an
    intersection of parabolic subgroups is parabolic and hence generated by
    its reflections.
    """
    if n < 4:
        raise ValueError("type D_n needs n >= 4")
    gens = dn_simple_reflections(n)
    refl = dn_reflections(n)
    stab_cache = {}

    def stabilizing(a):
        hit = stab_cache.get(a)
        if hit is None:
            hit = frozenset(k for k, r in enumerate(refl) if _apply_set(r, a) == a)
            stab_cache[a] = hit
        return hit

    orbits = {}
    for j in range(n):
        start = dn_stabilized_set(n, j)
        words = {start: ()}
        queue = deque([start])
        while queue:
            a = queue.popleft()
            for g_idx, g in enumerate(gens):
                b = _apply_set(g, a)
                if b not in words:
                    words[b] = (g_idx,) + words[a]
                    queue.append(b)
        orbits[j] = words

    witnesses = []
    checked = 0
    for i in range(n):
        a_i = dn_stabilized_set(n, i)
        st_a = stabilizing(a_i)
        for j in range(n):
            for b, word in orbits[j].items():
                checked += 1
                if not (st_a & stabilizing(b)):
                    if max_witnesses is None or len(witnesses) < max_witnesses:
                        witnesses.append({
                            "I_removed": i, "J_removed": j,
                            "A_I": sorted(a_i), "wA_J": sorted(b),
                            "w_word": [f"s{g}" for g in word],
                        })
    return IntersectionReport(n, checked, not witnesses, witnesses)


def dn_group_element(group, sp):
    """Element of the D_n root-system group for a signed permutation."""
    return from_signed_permutation(group, sp)
