"""Group elements as permutations of root ids.

A :class:`CoxeterGroup` wraps a root system (or the dihedral model) and
stores every element as the tuple of images of all root ids.  Products,
inverses and equality are then plain tuple operations; the linear map is
only recovered on demand (:func:`matrix_of`).

Reflections are identified with positive root ids ``0 .. N-1``.
"""
from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from . import exact
from .rootsys import DihedralModel, build_dihedral, build_root_system

ENUMERATION_BOUND = 100_000

_ORDERS = {
    "A": lambda n: _factorial(n + 1),
    "B": lambda n: 2 ** n * _factorial(n),
    "D": lambda n: 2 ** (n - 1) * _factorial(n),
    "E": lambda n: {6: 51840, 7: 2903040, 8: 696729600}[n],
    "F": lambda n: 1152,
    "H": lambda n: {3: 120, 4: 14400}[n],
    "I2": lambda m: 2 * m,
}


def _factorial(n):
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


class GroupError(ValueError):
    pass


def compose_perms(a, b):
    """Permutation of ``a * b``: first apply b, then a."""
    return tuple(a[i] for i in b)


def invert_perm(a):
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


class CoxeterGroup:
    """Finite reflection group acting on the root ids of its root system."""

    def __init__(self, system):
        self.system = system
        self.is_dihedral = isinstance(system, DihedralModel)
        self.type_label = system.type_label
        self.rank = system.rank
        self.param = system.m if self.is_dihedral else system.rank
        self.n_roots = system.n_roots
        self.n_reflections = system.n_positive
        self.identity_perm = tuple(range(self.n_roots))
        self.reflection_perms = [system.reflection_permutation(a) for a in range(self.n_reflections)]
        self.simple = tuple(system.simple_root_ids)
        self._reflection_of = {p: i for i, p in enumerate(self.reflection_perms)}
        npos = self.n_reflections
        # conj[a][b] = reflection id of s_a s_b s_a, i.e. of the root s_a(alpha_b)
        self.conj = [[self.reflection_perms[a][b] % npos if self.reflection_perms[a][b] < npos
                      else self.reflection_perms[a][b] - npos for b in range(npos)]
                     for a in range(npos)]
        self._length_cache = {}
        self._elements = None
        if not self.is_dihedral:
            self.coefficients = system.coefficients

    # -- naming ---------------------------------------------------------

    @property
    def name(self):
        return self.system.name

    @property
    def order(self):
        return _ORDERS[self.type_label](self.param)

    def descriptor(self):
        return {"type": self.type_label, "rank": self.param, "order": self.order}

    # -- elements -------------------------------------------------------

    def element(self, perm):
        return GroupElement(tuple(perm), self)

    def identity(self):
        return GroupElement(self.identity_perm, self)

    def reflection(self, t):
        if not 0 <= t < self.n_reflections:
            raise GroupError(f"{self.name} has reflections 0..{self.n_reflections - 1}, got {t}")
        return GroupElement(self.reflection_perms[t], self)

    def reflections(self):
        return [self.reflection(t) for t in range(self.n_reflections)]

    def simple_reflections(self):
        return [self.reflection(s) for s in self.simple]

    def reflection_id(self, w):
        """Reflection id of ``w`` or None if ``w`` is not a reflection."""
        return self._reflection_of.get(_perm(w))

    def elements(self, bound=ENUMERATION_BOUND):
        """All group elements, in breadth-first order from the identity by simple reflections."""
        if self._elements is None:
            if self.order > bound:
                raise GroupError(f"{self.name} has order {self.order} > enumeration bound {bound}")
            gens = [self.reflection_perms[s] for s in self.simple]
            seen = {self.identity_perm}
            order = [self.identity_perm]
            queue = deque(order)
            while queue:
                p = queue.popleft()
                for g in gens:
                    q = compose_perms(p, g)
                    if q not in seen:
                        seen.add(q)
                        order.append(q)
                        queue.append(q)
            self._elements = order
        return [GroupElement(p, self) for p in self._elements]

    def from_simple_images(self, images):
        """Element determined by the root ids of the images of the simple roots."""
        images = [int(i) for i in images]
        if len(images) != self.rank:
            raise GroupError(f"expected {self.rank} simple-root images, got {len(images)}")
        if self.is_dihedral:
            for p in self._dihedral_perms():
                if all(p[s] == img for s, img in zip(self.simple, images)):
                    return GroupElement(p, self)
            raise GroupError("images do not define a group element")
        rs = self.system
        cols = [rs.coefficients[i] for i in images]
        perm = []
        for c in rs.coefficients:
            v = [0] * self.rank
            for k, ck in enumerate(c):
                if ck:
                    v = [x + ck * y for x, y in zip(v, cols[k])]
            coords = _coeffs_to_root(rs, v)
            if coords is None:
                raise GroupError("images do not define a group element")
            perm.append(coords)
        if sorted(perm) != list(range(self.n_roots)):
            raise GroupError("images do not define a group element")
        return GroupElement(tuple(perm), self)

    def _dihedral_perms(self):
        return [self.system.root_permutation(x) for x in self.system.elements()]

    # -- length and linear data ------------------------------------------

    def length(self, perm):
        """Reflection length of the element with permutation ``perm``."""
        cached = self._length_cache.get(perm)
        if cached is not None:
            return cached
        if self.is_dihedral:
            if perm == self.identity_perm:
                val = 0
            elif perm in self._reflection_of:
                val = 1
            else:
                val = 2
        else:
            val = exact.rank(self.moved_rows(perm))
        self._length_cache[perm] = val
        return val

    def moved_rows(self, perm):
        """Vectors w(alpha_i) - alpha_i in simple-root coordinates; they span Mov(w)."""
        coeffs = self.coefficients
        rows = []
        for i, s in enumerate(self.simple):
            img = coeffs[perm[s]]
            rows.append([x - int(i == j) for j, x in enumerate(img)])
        return rows

    def span_rank(self, root_ids):
        """Dimension of the span of a set of roots."""
        root_ids = list(root_ids)
        if self.is_dihedral:
            pos = {r % self.n_reflections for r in root_ids}
            return min(len(pos), 2)
        return exact.rank([self.coefficients[r] for r in root_ids])

    def roots_in_span(self, root_ids):
        """All root ids lying in the linear span of ``root_ids``."""
        root_ids = list(root_ids)
        if self.is_dihedral:
            pos = {r % self.n_reflections for r in root_ids}
            if not pos:
                return frozenset()
            if len(pos) == 1:
                p = pos.pop()
                return frozenset({p, p + self.n_reflections})
            return frozenset(range(self.n_roots))
        if not root_ids:
            return frozenset()
        inside = exact.span_test([self.coefficients[r] for r in root_ids], self.rank)
        return frozenset(i for i, c in enumerate(self.coefficients) if inside(c))

    def moved_roots(self, perm):
        """Root ids lying in Mov(w)."""
        if self.is_dihedral:
            ell = self.length(perm)
            if ell == 0:
                return frozenset()
            if ell == 1:
                t = self._reflection_of[perm]
                return frozenset({t, t + self.n_reflections})
            return frozenset(range(self.n_roots))
        rows = [r for r in self.moved_rows(perm) if any(r)]
        if not rows:
            return frozenset()
        inside = exact.span_test(rows, self.rank)
        return frozenset(i for i, c in enumerate(self.coefficients) if inside(c))

    def __repr__(self):
        return f"CoxeterGroup({self.name})"


@dataclass(frozen=True, eq=False)
class GroupElement:
    perm: tuple
    group: CoxeterGroup

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self.group is other.group and self.perm == other.perm

    def __hash__(self):
        return hash(self.perm)

    def __mul__(self, other):
        return compose(self, other)

    def __invert__(self):
        return inverse(self)

    def simple_images(self):
        return [self.perm[s] for s in self.group.simple]

    def key(self):
        """Serialization: images of the simple roots."""
        return ",".join(str(i) for i in self.simple_images())

    def is_identity(self):
        return self.perm == self.group.identity_perm

    def __repr__(self):
        return f"<{self.group.name} element [{self.key()}]>"


def _perm(w):
    return w.perm if isinstance(w, GroupElement) else tuple(w)


def _coeffs_to_root(rs, v):
    key = tuple(exact._simplify(x) for x in v)
    if not hasattr(rs, "_coeff_index"):
        object.__setattr__(rs, "_coeff_index", {c: i for i, c in enumerate(rs.coefficients)})
    return rs._coeff_index.get(key)


@lru_cache(maxsize=None)
def coxeter_group(type_label, rank):
    """Cached group of the given type; ``rank`` is m for type I2."""
    type_label = str(type_label).upper()
    if type_label == "I2":
        return CoxeterGroup(build_dihedral(rank))
    return CoxeterGroup(build_root_system(type_label, rank))


def _same_group(a, b):
    if a.group is not b.group:
        raise GroupError(f"elements belong to different groups ({a.group.name}, {b.group.name})")


def element_from_word(group, word):
    """Product ``t_1 t_2 ... t_k`` of reflection ids."""
    p = group.identity_perm
    for t in word:
        p = compose_perms(p, group.reflection(t).perm)
    return GroupElement(p, group)


def compose(a, b):
    _same_group(a, b)
    return GroupElement(compose_perms(a.perm, b.perm), a.group)


def inverse(a):
    return GroupElement(invert_perm(a.perm), a.group)


def conjugate(a, b):
    """``b a b^-1``."""
    _same_group(a, b)
    return compose(compose(b, a), inverse(b))


def element_order(w):
    g = w.group
    p, n = w.perm, 1
    while p != g.identity_perm:
        p = compose_perms(p, w.perm)
        n += 1
    return n


def coefficient_matrix(w):
    """Matrix of ``w`` in the basis of simple roots (column i = w(alpha_i))."""
    g = w.group
    if g.is_dihedral:
        raise GroupError("the dihedral model carries no coordinates")
    cols = [g.coefficients[w.perm[s]] for s in g.simple]
    return [list(row) for row in zip(*cols)]


def matrix_of(w):
    """Matrix of ``w`` in ambient coordinates.

    Agrees with the permutation on all roots and is the identity on the
    orthogonal complement of the root span (relevant for A_n, E6, E7).
    """
    g = w.group
    if g.is_dihedral:
        raise GroupError("the dihedral model carries no coordinates")
    rs = g.system
    b = exact.transpose([rs.roots[s] for s in g.simple])            # d x n
    bt = exact.transpose(b)
    c = coefficient_matrix(w)
    gram_inv = exact.inverse(exact.matmul(bt, b))
    pinv = exact.matmul(gram_inv, bt)                               # n x d
    proj = exact.matmul(b, pinv)
    d = rs.ambient_dim
    m = exact.matmul(exact.matmul(b, c), pinv)
    out = [[m[i][j] + int(i == j) - proj[i][j] for j in range(d)] for i in range(d)]
    return exact.simplify_matrix(out)


def determinant(w):
    g = w.group
    if g.is_dihedral:
        return -1 if g.length(w.perm) == 1 else 1
    return exact.det(coefficient_matrix(w))


def moved_space_dim(w):
    return w.group.length(w.perm)


def fixed_space_dim(w):
    return w.group.rank - moved_space_dim(w)


def reflection_length(w):
    """Reflection length, computed as the dimension of the moved space."""
    return w.group.length(w.perm)


def absolute_leq(u, v):
    _same_group(u, v)
    g = u.group
    return g.length(u.perm) + g.length(compose_perms(invert_perm(u.perm), v.perm)) == g.length(v.perm)


# -- signed permutations (types B and D) -------------------------------

@dataclass(frozen=True)
class SignedPermutation:
    """Bijection of {-n..-1, 1..n} with w(-i) = -w(i), stored as images of 1..n."""
    images: tuple

    def __post_init__(self):
        n = len(self.images)
        if sorted(abs(i) for i in self.images) != list(range(1, n + 1)):
            raise GroupError(f"not a signed permutation: {self.images}")

    @property
    def n(self):
        return len(self.images)

    def __call__(self, i):
        return self.images[i - 1] if i > 0 else -self.images[-i - 1]

    def __mul__(self, other):
        return SignedPermutation(tuple(self(other(i)) for i in range(1, self.n + 1)))

    def negative_count(self):
        return sum(1 for i in self.images if i < 0)

    def one_line(self):
        return ",".join(str(i) for i in self.images)

    @classmethod
    def parse(cls, text):
        return cls(tuple(int(x) for x in text.replace(" ", "").split(",") if x))

    @classmethod
    def from_cycles(cls, n, cycles):
        """Build from disjoint cycles written on [-n, n], e.g. [(1, -1), (2, 3), (-2, -3)]."""
        img = {i: i for i in range(-n, n + 1) if i}
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a] = b
        return cls(tuple(img[i] for i in range(1, n + 1)))


def _check_bd(g):
    if g.is_dihedral or g.type_label not in ("B", "D"):
        raise GroupError(f"signed permutations model types B and D only, not {g.name}")


def to_signed_permutation(w):
    g = w.group
    _check_bd(g)
    m = matrix_of(w)
    n = g.rank
    images = []
    for i in range(n):
        col = [m[r][i] for r in range(n)]
        j = next(r for r in range(n) if col[r])
        images.append((j + 1) * col[j])
    return SignedPermutation(tuple(images))


def from_signed_permutation(group, sp):
    _check_bd(group)
    if sp.n != group.rank:
        raise GroupError(f"signed permutation on {sp.n} letters for rank {group.rank}")
    if group.type_label == "D" and sp.negative_count() % 2:
        raise GroupError("an odd number of sign changes is not in type D")
    rs = group.system
    perm = []
    for r in rs.roots:
        img = [0] * group.rank
        for i, x in enumerate(r):
            if x:
                j = sp(i + 1)
                img[abs(j) - 1] = x if j > 0 else -x
        idx = rs.index_of(img)
        if idx is None:
            raise GroupError("signed permutation does not preserve the root system")
        perm.append(idx)
    return GroupElement(tuple(perm), group)
