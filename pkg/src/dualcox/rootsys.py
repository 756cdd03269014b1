"""Finite root systems with exact coordinates.

Coordinates follow the Bourbaki tables.  F4 and the E series are scaled by
2 so every coordinate is an integer; H3 and H4 live in Z[phi]^d (also
scaled by 2).  Dihedral groups I2(m) get a coordinate-free model, see
:class:`DihedralModel`.

Roots are indexed so that ids ``0 .. N-1`` are the positive roots and
``i + N`` is the negative of root ``i``.  Positive roots are sorted by
height, ties broken by the simple-root coefficient vector in decreasing
lexicographic order; this puts the simple roots at ids ``0 .. rank-1``.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product

from . import exact
from .exact import Golden, PHI

VALID_TYPES = ("A", "B", "D", "E", "F", "H", "I2")


class RootSystemError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class RootSystem:
    type_label: str
    rank: int
    ambient_dim: int
    roots: tuple                 # tuple of coordinate tuples
    simple_root_ids: tuple
    negation_map: tuple
    squared_lengths: tuple
    coefficients: tuple          # simple-root coefficient vector of each root
    is_crystallographic: bool
    is_simply_laced: bool
    _index: dict = field(repr=False, default_factory=dict)
    _reflection_perms: list = field(repr=False, default_factory=list)

    @property
    def name(self):
        return f"{self.type_label}{self.rank}"

    @property
    def n_roots(self):
        return len(self.roots)

    @property
    def n_positive(self):
        return len(self.roots) // 2

    def index_of(self, vector):
        """Root id of a coordinate vector, or None if it is not a root."""
        return self._index.get(tuple(exact._simplify(x) for x in vector))

    def positive_id(self, root_id):
        """Id of the positive root among ``{root, -root}``."""
        return root_id if root_id < self.n_positive else root_id - self.n_positive

    def simple_roots(self):
        return [self.roots[i] for i in self.simple_root_ids]

    def reflection_permutation(self, alpha_id):
        """The permutation of root ids induced by ``s_alpha``."""
        if not self._reflection_perms:
            perms = [_reflection_perm(self, a) for a in range(self.n_positive)]
            self._reflection_perms.extend(perms)
        return self._reflection_perms[self.positive_id(alpha_id)]

    def to_json(self):
        return {
            "type": self.type_label,
            "rank": self.rank,
            "ambient_dim": self.ambient_dim,
            "roots": [[exact.scalar_to_json(x) for x in r] for r in self.roots],
            "simple": list(self.simple_root_ids),
        }


def reflect(rs, alpha_id, v):
    """Image of ``v`` under the reflection in the hyperplane orthogonal to root ``alpha_id``."""
    if len(v) != rs.ambient_dim:
        raise RootSystemError(
            f"vector has dimension {len(v)}, root system {rs.name} lives in dimension {rs.ambient_dim}")
    alpha = rs.roots[alpha_id]
    c = 2 * exact.to_field(exact.dot(v, alpha)) / rs.squared_lengths[alpha_id]
    return tuple(exact._simplify(x - c * a) for x, a in zip(v, alpha))


def _reflection_perm(rs, alpha_id):
    out = []
    for v in rs.roots:
        j = rs.index_of(reflect(rs, alpha_id, v))
        if j is None:
            raise RootSystemError(f"{rs.name}: root set is not closed under reflection {alpha_id}")
        out.append(j)
    return tuple(out)


def cartan_like_matrix(rs):
    """Matrix ``M[i][j] = <alpha_j, alpha_i> = 2 (alpha_j|alpha_i)/(alpha_i|alpha_i)`` on the simple roots.

    Integral for crystallographic systems; for H3/H4 the entries lie in Z[phi].
    For simply laced systems this is also the Gram matrix in the
    (alpha|alpha) = 2 normalization.
    """
    simple = rs.simple_root_ids
    m = []
    for i in simple:
        row = []
        for j in simple:
            val = 2 * exact.to_field(exact.dot(rs.roots[j], rs.roots[i])) / rs.squared_lengths[i]
            row.append(exact._simplify(val))
        m.append(row)
    return m


# -- coordinates ---------------------------------------------------------

def _unit(n, i, scale=1):
    v = [0] * n
    v[i] = scale
    return v


def _type_a(n):
    d = n + 1
    roots = []
    for i, j in permutations(range(d), 2):
        v = [0] * d
        v[i], v[j] = 1, -1
        roots.append(v)
    simple = []
    for i in range(n):
        v = [0] * d
        v[i], v[i + 1] = 1, -1
        simple.append(v)
    return d, roots, simple


def _pm_pairs(n, scale=1):
    roots = []
    for i, j in combinations(range(n), 2):
        for si, sj in product((1, -1), repeat=2):
            v = [0] * n
            v[i], v[j] = si * scale, sj * scale
            roots.append(v)
    return roots


def _type_b(n):
    roots = _pm_pairs(n) + [_unit(n, i, s) for i in range(n) for s in (1, -1)]
    simple = []
    for i in range(n - 1):
        v = [0] * n
        v[i], v[i + 1] = 1, -1
        simple.append(v)
    simple.append(_unit(n, n - 1))
    return n, roots, simple


def _type_d(n):
    roots = _pm_pairs(n)
    simple = []
    for i in range(n - 1):
        v = [0] * n
        v[i], v[i + 1] = 1, -1
        simple.append(v)
    v = [0] * n
    v[n - 2], v[n - 1] = 1, 1
    simple.append(v)
    return n, roots, simple


def _type_e(n):
    roots = _pm_pairs(8, 2)
    for signs in product((1, -1), repeat=8):
        if signs.count(-1) % 2 == 0:
            roots.append(list(signs))
    simple = [[1, -1, -1, -1, -1, -1, -1, 1], [2, 2, 0, 0, 0, 0, 0, 0]]
    for i in range(6):
        v = [0] * 8
        v[i + 1], v[i] = 2, -2
        simple.append(v)
    constraints = []
    if n <= 7:
        constraints.append([0, 0, 0, 0, 0, 0, 1, 1])
    if n == 6:
        constraints.append([0, 0, 0, 0, 0, 1, -1, 0])
    roots = [r for r in roots if all(exact.dot(r, c) == 0 for c in constraints)]
    return 8, roots, simple[:n]


def _type_f4():
    roots = _pm_pairs(4, 2) + [_unit(4, i, s) for i in range(4) for s in (2, -2)]
    roots += [list(s) for s in product((1, -1), repeat=4)]
    simple = [[0, 2, -2, 0], [0, 0, 2, -2], [0, 0, 0, 2], [1, -1, -1, -1]]
    return 4, roots, simple


def _signed(vec):
    """All sign changes of the nonzero entries of ``vec``."""
    nz = [i for i, x in enumerate(vec) if x]
    for signs in product((1, -1), repeat=len(nz)):
        v = list(vec)
        for i, s in zip(nz, signs):
            v[i] = s * v[i]
        yield v


def _even_perms(n):
    for p in permutations(range(n)):
        inv = sum(1 for i, j in combinations(range(n), 2) if p[i] > p[j])
        if inv % 2 == 0:
            yield p


def _type_h(n):
    phi, one, zero = PHI, Golden(1), Golden(0)
    phi2 = phi * phi
    roots = []
    if n == 3:
        base = [(zero, zero, 2 * phi), (one, phi, phi2)]
        for b in base:
            for k in range(3):
                cyc = b[k:] + b[:k]
                roots.extend(_signed(cyc))
    else:
        for i in range(4):
            roots.extend(_signed([Golden(2) if j == i else zero for j in range(4)]))
        roots.extend(_signed([one] * 4))
        base = (phi, one, phi - 1, zero)
        for p in _even_perms(4):
            roots.extend(_signed([base[p[k]] for k in range(4)]))
    uniq = {tuple(r) for r in roots}
    return n, [list(r) for r in uniq], None


def _coxeter_label(u, v):
    """Order m of s_u s_v from the angle between two roots (finite types only)."""
    uv = exact.to_field(exact.dot(u, v))
    c2 = uv * uv / (exact.to_field(exact.dot(u, u)) * exact.dot(v, v))
    if c2 == 0:
        return 2
    if c2 == Fraction(1, 4):
        return 3
    if c2 == Fraction(1, 2):
        return 4
    if c2 == Fraction(3, 4):
        return 6
    if c2 == PHI * PHI / 4:
        return 5
    return None


def _simple_from_positive(positive, all_roots):
    """Positive roots whose reflection sends no other positive root to a negative one."""
    pos_set = {tuple(p) for p in positive}
    simple = []
    for a in positive:
        aa = exact.dot(a, a)
        ok = True
        for b in positive:
            if b is a:
                continue
            c = 2 * exact.to_field(exact.dot(b, a)) / aa
            img = tuple(exact._simplify(x - c * y) for x, y in zip(b, a))
            if img not in pos_set:
                ok = False
                break
        if ok:
            simple.append(a)
    # order along the Coxeter diagram path, starting at the end of the 5-bond
    n = len(simple)
    labels = {(i, j): _coxeter_label(simple[i], simple[j])
              for i in range(n) for j in range(n) if i != j}

    def neighbours(i):
        return [k for k in range(n) if k != i and labels[(i, k)] != 2]

    start = next(i for i in range(n)
                 if len(neighbours(i)) == 1 and labels[(i, neighbours(i)[0])] == 5)
    order = [start]
    while len(order) < n:
        order.append(next(k for k in neighbours(order[-1]) if k not in order))
    return [simple[i] for i in order]


def _functional_positive(roots):
    """Pick a generic linear functional and return the roots it makes positive."""
    d = len(roots[0])
    for base in (7, 11, 13, 101):
        f = [Fraction(1, base ** k) for k in range(d)]
        vals = [exact.dot(r, f) for r in roots]
        if all(exact.sign(v) != 0 for v in vals):
            return [r for r, v in zip(roots, vals) if exact.sign(v) > 0]
    raise RootSystemError("no generic functional found")


_VALID_RANKS = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "D": lambda n: n >= 4,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "H": lambda n: n in (3, 4),
}


def build_root_system(type_label, rank):
    """Build the root system of finite type ``type_label`` and rank ``rank``."""
    type_label = str(type_label).upper()
    if type_label == "I2":
        raise RootSystemError("dihedral type I2(m) is modelled by build_dihedral(m)")
    if type_label not in _VALID_RANKS:
        raise RootSystemError(f"unknown type {type_label!r}; expected one of {VALID_TYPES}")
    if not isinstance(rank, int) or not _VALID_RANKS[type_label](rank):
        raise RootSystemError(f"{type_label}{rank} is not a finite irreducible type")

    if type_label == "A":
        d, roots, simple = _type_a(rank)
    elif type_label == "B":
        d, roots, simple = _type_b(rank)
    elif type_label == "D":
        d, roots, simple = _type_d(rank)
    elif type_label == "E":
        d, roots, simple = _type_e(rank)
    elif type_label == "F":
        d, roots, simple = _type_f4()
    else:
        rank_h, roots, _ = _type_h(rank)
        d = rank_h
        positive = _functional_positive(roots)
        simple = _simple_from_positive(positive, roots)
    return _assemble(type_label, rank, d, roots, simple,
                     crystallographic=type_label != "H",
                     simply_laced=type_label in ("A", "D", "E"))


def _assemble(type_label, rank, d, roots, simple, crystallographic, simply_laced):
    gram = [[exact.dot(a, b) for b in simple] for a in simple]
    gram_inv = exact.inverse(gram)

    def coeffs(v):
        bt = [exact.dot(a, v) for a in simple]
        c = [exact.dot(row, bt) for row in gram_inv]
        return tuple(exact._simplify(x) for x in c)

    roots = [tuple(exact._simplify(x) for x in r) for r in roots]
    data = []
    for r in roots:
        c = coeffs(r)
        signs = {exact.sign(x) for x in c} - {0}
        if len(signs) != 1:
            raise RootSystemError(f"root {r} is neither positive nor negative")
        if signs == {1}:
            data.append((r, c))
    if 2 * len(data) != len(roots):
        raise RootSystemError("root set is not symmetric under negation")

    def key(item):
        c = item[1]
        height = sum(c[1:], c[0])
        return (height, tuple(-x for x in c))

    data.sort(key=key)
    pos_roots = [r for r, _ in data]
    pos_coeffs = [c for _, c in data]
    all_roots = pos_roots + [tuple(exact._simplify(-x) for x in r) for r in pos_roots]
    all_coeffs = pos_coeffs + [tuple(exact._simplify(-x) for x in c) for c in pos_coeffs]
    n_pos = len(pos_roots)
    index = {r: i for i, r in enumerate(all_roots)}
    simple_ids = tuple(index[tuple(exact._simplify(x) for x in s)] for s in simple)
    if simple_ids != tuple(range(rank)):
        raise RootSystemError(f"simple roots did not sort first: {simple_ids}")
    negation = tuple((i + n_pos) % (2 * n_pos) for i in range(2 * n_pos))
    sq = tuple(exact._simplify(exact.dot(r, r)) for r in all_roots)
    return RootSystem(
        type_label=type_label, rank=rank, ambient_dim=d, roots=tuple(all_roots),
        simple_root_ids=simple_ids, negation_map=negation, squared_lengths=sq,
        coefficients=tuple(all_coeffs), is_crystallographic=crystallographic,
        is_simply_laced=simply_laced, _index=index)


# -- dihedral groups -----------------------------------------------------

class DihedralModel:
    """The dihedral group I2(m) of order 2m without coordinates.

    Elements are pairs ``(kind, index)`` with kind ``"rot"`` or ``"ref"`` and
    index taken mod m.  ``("ref", i)`` is the reflection in the line at angle
    i*pi/m and ``("rot", k)`` the rotation by 2*k*pi/m, so that

        ref_i * ref_j = rot_{i-j},  rot_k * ref_i = ref_{i+k},  ref_i * rot_k = ref_{i-k}.

    The 2m roots are the unit vectors at angles pi/2 + k*pi/m; root ``k``
    (0 <= k < m) is the root of ``ref_k`` and root ``k + m`` its negative.
    """

    type_label = "I2"

    def __init__(self, m):
        if not isinstance(m, int) or m < 3:
            raise RootSystemError(f"I2(m) requires an integer m >= 3, got {m!r}")
        self.m = m
        self.rank = 2
        self.simple_root_ids = (0, m - 1)
        self.negation_map = tuple((i + m) % (2 * m) for i in range(2 * m))
        self.is_crystallographic = m in (3, 4, 6)
        self.is_simply_laced = m == 3
        self._perms = {}

    @property
    def name(self):
        return f"I2({self.m})"

    @property
    def n_roots(self):
        return 2 * self.m

    @property
    def n_positive(self):
        return self.m

    def positive_id(self, root_id):
        return root_id % self.m

    def elements(self):
        return [("rot", k) for k in range(self.m)] + [("ref", i) for i in range(self.m)]

    def reflections(self):
        return [("ref", i) for i in range(self.m)]

    def identity(self):
        return ("rot", 0)

    def multiply(self, x, y):
        (kx, ix), (ky, iy) = x, y
        m = self.m
        if kx == "rot" and ky == "rot":
            return ("rot", (ix + iy) % m)
        if kx == "rot":
            return ("ref", (iy + ix) % m)
        if ky == "rot":
            return ("ref", (ix - iy) % m)
        return ("rot", (ix - iy) % m)

    def inverse(self, x):
        kind, i = x
        return x if kind == "ref" else ("rot", (-i) % self.m)

    def order_of(self, x):
        kind, i = x
        if kind == "ref":
            return 2
        n, y = 1, x
        while y != ("rot", 0):
            y = self.multiply(y, x)
            n += 1
        return n

    def is_involution(self, x):
        return x != self.identity() and self.multiply(x, x) == self.identity()

    def root_permutation(self, x):
        """Action of ``x`` on root ids 0 .. 2m-1."""
        if x not in self._perms:
            kind, i = x
            m2 = 2 * self.m
            if kind == "rot":
                perm = tuple((k + 2 * i) % m2 for k in range(m2))
            else:
                perm = tuple((2 * i - k - self.m) % m2 for k in range(m2))
            self._perms[x] = perm
        return self._perms[x]

    def reflection_permutation(self, alpha_id):
        return self.root_permutation(("ref", self.positive_id(alpha_id)))

    def element_of_permutation(self, perm):
        m2 = 2 * self.m
        k = perm[0]
        if k % 2 == 0 and perm == tuple((j + k) % m2 for j in range(m2)):
            return ("rot", k // 2)
        for i in range(self.m):
            if perm == self.root_permutation(("ref", i)):
                return ("ref", i)
        raise ValueError("not an element of the dihedral model")

    def to_json(self):
        return {"type": "I2", "rank": 2, "m": self.m, "simple": list(self.simple_root_ids)}


def build_dihedral(m):
    return DihedralModel(m)


def closure_from_simple(simple, reflect_fn):
    """Orbit of the simple roots under the reflections they generate.

    Used as an independent oracle for root counts.
    """
    seen = {tuple(s) for s in simple}
    seen |= {tuple(exact._simplify(-x) for x in s) for s in simple}
    frontier = list(seen)
    while frontier:
        nxt = []
        for v in frontier:
            for s in simple:
                w = reflect_fn(s, v)
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return seen
