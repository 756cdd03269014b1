"""Hurwitz action of the braid group on reflection factorizations."""
import os
from collections import deque
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from .group import GroupElement, GroupError, compose_perms, element_from_word

DEFAULT_CAP = 10_000_000


def default_cap():
    env = os.environ.get("HURWITZ_CAP")
    return int(env) if env else DEFAULT_CAP


@dataclass(frozen=True)
class Factorization:
    """An ordered tuple of reflection ids together with its product."""
    reflections: tuple
    product: GroupElement = field(compare=False)

    def __len__(self):
        return len(self.reflections)

    def __iter__(self):
        return iter(self.reflections)

    @classmethod
    def of(cls, group, reflections):
        reflections = tuple(int(t) for t in reflections)
        return cls(reflections, element_from_word(group, reflections))

    def is_reduced(self):
        return len(self.reflections) == self.product.group.length(self.product.perm)


@dataclass
class HurwitzOrbit:
    seed: Factorization
    members: set
    exhausted: bool
    cap: int

    def __len__(self):
        return len(self.members)

    def __contains__(self, f):
        key = f.reflections if isinstance(f, Factorization) else tuple(f)
        return key in self.members

    def sorted_members(self):
        return sorted(self.members)


def _forward(conj, tup, i):
    a, b = tup[i], tup[i + 1]
    return tup[:i] + (conj[a][b], a) + tup[i + 2:]


def _backward(conj, tup, i):
    a, b = tup[i], tup[i + 1]
    return tup[:i] + (b, conj[b][a]) + tup[i + 2:]


def braid_move(f, i, direction="forward"):
    """Apply sigma_i (``direction="forward"``) or its inverse; ``i`` is 1-based."""
    n = len(f.reflections)
    if not 1 <= i <= n - 1:
        raise ValueError(f"braid position {i} outside 1..{n - 1}")
    conj = f.product.group.conj
    if direction in ("forward", "+", 1):
        tup = _forward(conj, f.reflections, i - 1)
    elif direction in ("inverse", "-", -1):
        tup = _backward(conj, f.reflections, i - 1)
    else:
        raise ValueError(f"unknown direction {direction!r}")
    return Factorization(tup, f.product)


def _below(group, perm):
    """Pairs (t, t*w) for reflections t with l(t w) = l(w) - 1, cached on the group."""
    cache = group.__dict__.setdefault("_below_cache", {})
    hit = cache.get(perm)
    if hit is not None:
        return hit
    ell = group.length(perm)
    out = []
    if ell:
        for t, rp in enumerate(group.reflection_perms):
            q = compose_perms(rp, perm)
            if group.length(q) == ell - 1:
                out.append((t, q))
    out = tuple(out)
    cache[perm] = out
    return out


def iter_reduced_factorizations(w):
    """Lazily yield the tuples of Red_T(w), depth-first."""
    group = w.group

    def rec(perm):
        below = _below(group, perm)
        if not below:
            yield ()
            return
        for t, q in below:
            for rest in rec(q):
                yield (t,) + rest

    return rec(w.perm)


def reduced_factorizations(w):
    """The set Red_T(w) of reduced reflection factorizations of ``w``."""
    group = w.group
    memo = {}

    def rec(perm):
        hit = memo.get(perm)
        if hit is not None:
            return hit
        below = _below(group, perm)
        if not below:
            out = [()]
        else:
            out = [(t,) + rest for t, q in below for rest in rec(q)]
        memo[perm] = out
        return out

    return {Factorization(tup, w) for tup in rec(w.perm)}


def count_reduced_factorizations(w):
    """|Red_T(w)| by dynamic programming over the absolute-order interval below ``w``."""
    group = w.group
    cache = group.__dict__.setdefault("_count_cache", {})

    def rec(perm):
        hit = cache.get(perm)
        if hit is not None:
            return hit
        below = _below(group, perm)
        val = 1 if not below else sum(rec(q) for _, q in below)
        cache[perm] = val
        return val

    return rec(w.perm)


def first_reduced_factorization(w):
    return Factorization(next(iter_reduced_factorizations(w)), w)


def hurwitz_orbit(f, cap=None, verify_products=False):
    """Breadth-first closure of ``f`` under all sigma_i and sigma_i^-1."""
    if cap is None:
        cap = default_cap()
    if not f.is_reduced():
        raise ValueError("seed factorization is not reduced")
    group = f.product.group
    conj = group.conj
    seed = f.reflections
    members = {seed}
    queue = deque([seed])
    n = len(seed)
    exhausted = True
    while queue:
        tup = queue.popleft()
        for i in range(n - 1):
            for nxt in (_forward(conj, tup, i), _backward(conj, tup, i)):
                if nxt not in members:
                    if len(members) >= cap:
                        exhausted = False
                        break
                    if verify_products:
                        assert element_from_word(group, nxt) == f.product
                    members.add(nxt)
                    queue.append(nxt)
            if not exhausted:
                break
        if not exhausted:
            break
    return HurwitzOrbit(seed=f, members=members, exhausted=exhausted, cap=cap)


class Transitivity(NamedTuple):
    transitive: Optional[bool]     # None when the orbit cap was hit
    witness: object                # the orbit, or a factorization outside it
    orbit_size: int
    red_count: int


def is_hurwitz_transitive(w, cap=None):
    """Decide whether the Hurwitz action on Red_T(w) is transitive.

    Runs the orbit of one reduced factorization and compares its size
    with |Red_T(w)|.  On failure the witness is a factorization outside
    the orbit; on success it is the orbit itself.
    """
    red_count = count_reduced_factorizations(w)
    seed = first_reduced_factorization(w)
    orbit = hurwitz_orbit(seed, cap)
    if not orbit.exhausted:
        return Transitivity(None, orbit, len(orbit), red_count)
    if len(orbit) == red_count:
        return Transitivity(True, orbit, len(orbit), red_count)
    for tup in iter_reduced_factorizations(w):
        if tup not in orbit.members:
            return Transitivity(False, Factorization(tup, w), len(orbit), red_count)
    raise AssertionError("orbit smaller than Red_T(w) but no outside factorization found")


@dataclass
class Coverage:
    covered: frozenset
    complete: bool          # every reflection of the group occurred last
    exhausted: bool         # the whole orbit was explored
    visited: int

    @property
    def indeterminate(self):
        return not self.complete and not self.exhausted


def last_slot_coverage(f, cap=None, early_exit=True):
    """Reflections occurring in the last position across the Hurwitz orbit of ``f``.

    sigma_i moves t_i one step right unchanged, so sigma_{n-1}...sigma_i
    carries any entry to the last slot: the last-slot set of the orbit is
    the set of entries at any position.  Every position of each visited
    member is therefore recorded.  The walk is depth-first, which reaches
    new reflections much sooner than breadth-first order on E-type orbits.
    """
    if cap is None:
        cap = default_cap()
    group = f.product.group
    if not f.is_reduced():
        raise ValueError("seed factorization is not reduced")
    if len(f) != group.rank:
        raise ValueError("last-slot coverage needs a factorization of full length")
    conj = group.conj
    total = group.n_reflections
    seed = f.reflections
    members = {seed}
    covered = set(seed)
    stack = [seed]
    n = len(seed)
    exhausted = True
    while stack:
        if early_exit and len(covered) == total:
            exhausted = False
            break
        tup = stack.pop()
        for i in range(n - 1):
            for nxt in (_forward(conj, tup, i), _backward(conj, tup, i)):
                if nxt not in members:
                    if len(members) >= cap:
                        exhausted = False
                        break
                    members.add(nxt)
                    covered.update(nxt)
                    stack.append(nxt)
            if not exhausted:
                break
        if not exhausted:
            break
    return Coverage(frozenset(covered), len(covered) == total, exhausted, len(members))


def conjugate_factorization(f, g):
    """Componentwise conjugation by ``g``: t -> g t g^-1."""
    group = f.product.group
    if g.group is not group:
        raise GroupError("conjugating element from another group")
    npos = group.n_reflections
    tup = tuple(g.perm[t] % npos for t in f.reflections)
    from .group import conjugate
    return Factorization(tup, conjugate(f.product, g))
