"""Root lattices: Smith normal form, sublattice indices, connection indices.

Lattice computations use simple-root coefficient coordinates, in which the
root lattice of a crystallographic system is exactly Z^n.  The bilinear
form is the Gram matrix of the simple roots rescaled so that
(alpha|alpha) = 2 on simply laced systems.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import isqrt

from . import exact
from .hurwitz import iter_reduced_factorizations

INFINITE = float("inf")


class LatticeError(ValueError):
    pass


# -- integer matrices ----------------------------------------------------

def smith_normal_form(a):
    """Smith normal form of an integer matrix.

    Returns ``(D, U, V)`` with ``U * A * V == D``, U and V unimodular and
    the nonzero diagonal entries of D positive with d_1 | d_2 | ...
    """
    m = len(a)
    n = len(a[0]) if m else 0
    d = [list(map(int, row)) for row in a]
    u = exact.identity(m)
    v = exact.identity(n)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):       # row_dst += k * row_src
        d[dst] = [x + k * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, k):       # col_dst += k * col_src
        for row in d:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    t = 0
    while t < min(m, n):
        # pivot on the entry of least absolute value in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if d[i][j] and (best is None or abs(d[i][j]) < abs(d[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            done = True
            for i in range(t + 1, m):
                if d[i][t]:
                    add_row(t, i, -(d[i][t] // d[t][t]))
                    if d[i][t]:
                        done = False
            for j in range(t + 1, n):
                if d[t][j]:
                    add_col(t, j, -(d[t][j] // d[t][t]))
                    if d[t][j]:
                        done = False
            if done:
                # divisibility: fold any block entry not divisible by the pivot into row t
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if d[i][j] % d[t][t]), None)
                if bad is None:
                    break
                add_row(bad[0], t, 1)
                continue
            # a remainder survived: move the smallest entry of row/column t to the pivot
            cand = [(abs(d[i][t]), i, t) for i in range(t, m) if d[i][t]]
            cand += [(abs(d[t][j]), t, j) for j in range(t, n) if d[t][j]]
            _, i, j = min(cand)
            swap_rows(t, i)
            swap_cols(t, j)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return d, u, v


def invariant_factors(a):
    d, _, _ = smith_normal_form(a)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0)) if d[i][i]]


def hermite_basis(vectors):
    """Integer row echelon basis of the Z-span of ``vectors``."""
    rows = [list(map(int, v)) for v in vectors if any(v)]
    if not rows:
        return []
    ncols = len(rows[0])
    basis = []
    col = 0
    while rows and col < ncols:
        nz = [r for r in rows if r[col]]
        zero = [r for r in rows if not r[col]]
        if not nz:
            col += 1
            continue
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            p = nz[0]
            nxt = [p]
            for r in nz[1:]:
                q = r[col] // p[col]
                r = [x - q * y for x, y in zip(r, p)]
                if r[col]:
                    nxt.append(r)
                elif any(r):
                    zero.append(r)
            nz = nxt
        p = nz[0]
        if p[col] < 0:
            p = [-x for x in p]
        basis.append(p)
        rows = zero
        col += 1
    return basis


def in_lattice(basis, v):
    """Membership of an integer vector in the Z-span of an echelon basis."""
    v = list(v)
    for row in basis:
        pc = next(i for i, x in enumerate(row) if x)
        if v[pc] % row[pc]:
            return False
        q = v[pc] // row[pc]
        if q:
            v = [x - q * y for x, y in zip(v, row)]
    return not any(v)


# -- host data -----------------------------------------------------------

def _root_system(group):
    """The root system of a group; a bare root system is accepted as well."""
    if getattr(group, "is_dihedral", False):
        raise LatticeError("lattice computations need a root system with coordinates")
    return getattr(group, "system", group)


def _require_crystallographic(group):
    rs = _root_system(group)
    if not rs.is_crystallographic:
        raise LatticeError(f"{rs.name} is not crystallographic")
    return rs


def _require_simply_laced(group):
    rs = _root_system(group)
    if not rs.is_simply_laced:
        raise LatticeError(
            f"{rs.name} is not simply laced; lattice and generation criteria differ there")
    return rs


def normalized_gram(group):
    """Gram matrix of the simple roots with (alpha|alpha) = 2 for the common length.

    E and F types are stored with coordinates doubled, so the raw Gram
    matrix is divided by the square of the scale here.
    """
    rs = _root_system(group)
    sq = min(rs.squared_lengths[i] for i in rs.simple_root_ids)
    simple = rs.simple_roots()
    return [[exact._simplify(Fraction(2 * exact.dot(a, b)) / sq) for b in simple] for a in simple]


def _coeff(group, root_id):
    return _root_system(group).coefficients[root_id]


def _form(gram, u, v):
    return exact._simplify(sum(u[i] * gram[i][j] * v[j]
                               for i in range(len(u)) if u[i]
                               for j in range(len(v)) if v[j]))


# -- root subsystems -----------------------------------------------------

@dataclass(frozen=True)
class RootSubsystem:
    roots: frozenset          # root ids, closed under negation and mutual reflection
    rank: int

    def positive(self, n_positive):
        return frozenset(r for r in self.roots if r < n_positive)

    def __len__(self):
        return len(self.roots)


def subsystem_closure(group, root_ids):
    """Smallest root subsystem containing the given roots: their orbit under the reflections they generate."""
    npos = group.n_reflections
    gens = sorted({r % npos for r in root_ids})
    seen = set()
    for r in gens:
        seen.add(r)
        seen.add(r + npos)
    frontier = list(seen)
    perms = [group.reflection_perms[g] for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for p in perms:
                y = p[x]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    roots = frozenset(seen)
    return RootSubsystem(roots, group.span_rank(roots) if roots else 0)


# -- lattice operations --------------------------------------------------

def lattice_index(group, sub, sup):
    """Index |L(sup) : L(sub)| of root lattices, or ``INFINITE`` if the ranks differ."""
    _require_crystallographic(group)
    sub_vecs = [_coeff(group, r) for r in sub]
    sup_basis = hermite_basis([_coeff(group, r) for r in sup])
    k = len(sup_basis)
    inside = exact.span_test(sup_basis, group.rank) if sup_basis else (lambda v: not any(v))
    for v in sub_vecs:
        if not inside(v):
            raise LatticeError("sub is not contained in the rational span of sup")
        if not in_lattice(sup_basis, v):
            raise LatticeError("L(sub) is not a sublattice of L(sup)")
    if not sup_basis:
        return 1
    pivots = [next(i for i, x in enumerate(row) if x) for row in sup_basis]
    square = [[row[c] for c in pivots] for row in sup_basis]
    inv = exact.inverse(square)
    coords = []
    for v in sub_vecs:
        x = [exact._simplify(sum(v[pivots[j]] * inv[j][i] for j in range(k))) for i in range(k)]
        coords.append(x)
    if exact.rank(coords) < k:
        return INFINITE
    return reduce(lambda a, b: a * b, invariant_factors(coords), 1)


def connection_index(group, root_ids):
    """i(R): determinant of the Gram matrix of a Z-basis of L(R)."""
    _require_simply_laced(group)
    basis = hermite_basis([_coeff(group, r) for r in root_ids])
    if not basis:
        return 1
    gram = normalized_gram(group)
    g = [[_form(gram, u, v) for v in basis] for u in basis]
    return abs(exact.det(g))


def connection_index_via_gram_snf(group, root_ids):
    """Same value, read off the Smith form of the Gram matrix of R itself."""
    _require_simply_laced(group)
    gram = normalized_gram(group)
    vecs = [_coeff(group, r) for r in root_ids]
    g = [[_form(gram, u, v) for v in vecs] for u in vecs]
    return reduce(lambda a, b: a * b, invariant_factors(g), 1)


def roots_of_lattice(group, root_ids):
    """All roots of the host lying in L(R)."""
    _require_simply_laced(group)
    basis = hermite_basis([_coeff(group, r) for r in root_ids])
    roots = frozenset(i for i, c in enumerate(group.system.coefficients) if in_lattice(basis, c))
    return RootSubsystem(roots, group.span_rank(roots) if roots else 0)


def generates_full_lattice(group, root_ids):
    """True iff L(R) = L(Phi)."""
    _require_simply_laced(group)
    basis = hermite_basis([_coeff(group, r) for r in root_ids])
    if len(basis) != group.rank:
        return False
    prod = 1
    for row in basis:
        prod *= next(x for x in row if x)
    return abs(prod) == 1


def kluitmann_values(w):
    """Set of connection indices i(R) over the root sets R of Red_T(w)."""
    group = w.group
    _require_simply_laced(group)
    cache = {}
    values = set()
    for tup in iter_reduced_factorizations(w):
        key = frozenset(tup)
        if key not in cache:
            cache[key] = connection_index(group, tup)
        values.add(cache[key])
    return values


def kluitmann_invariant_check(w):
    """True iff the connection index is the same for every member of Red_T(w)."""
    return len(kluitmann_values(w)) <= 1


def sublattice_index_from_connection(i_sub, i_sup):
    """sqrt(i(sub)/i(sup)) when it is an integer, else None."""
    if i_sub % i_sup:
        return None
    q = i_sub // i_sup
    r = isqrt(q)
    return r if r * r == q else None
