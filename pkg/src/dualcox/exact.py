"""Exact scalars and small dense linear algebra.

Scalars are Python ints, :class:`fractions.Fraction`, or :class:`Golden`
(elements a + b*phi of Q(sqrt 5)).  All routines below work over any of
these; nothing in here ever touches floating point.
"""
from fractions import Fraction
from numbers import Rational


class Golden:
    """An element ``a + b*phi`` of the golden-ratio field, phi = (1 + sqrt 5)/2.

    ``phi`` satisfies ``phi**2 = phi + 1``.  Instances are immutable and
    hashable; a Golden with ``b == 0`` compares and hashes equal to the
    rational ``a``.
    """

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))

    def __setattr__(self, name, value):
        raise AttributeError("Golden is immutable")

    @staticmethod
    def _coerce(x):
        if isinstance(x, Golden):
            return x
        if isinstance(x, (int, Rational)):
            return Golden(x, 0)
        return NotImplemented

    def __add__(self, other):
        o = Golden._coerce(other)
        if o is NotImplemented:
            return o
        return Golden(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return Golden(-self.a, -self.b)

    def __sub__(self, other):
        o = Golden._coerce(other)
        if o is NotImplemented:
            return o
        return Golden(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = Golden._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = Golden._coerce(other)
        if o is NotImplemented:
            return o
        # (a + b phi)(c + d phi) = ac + bd + (ad + bc + bd) phi
        bd = self.b * o.b
        return Golden(self.a * o.a + bd, self.a * o.b + self.b * o.a + bd)

    __rmul__ = __mul__

    def conjugate(self):
        """Galois conjugate: phi -> 1 - phi."""
        return Golden(self.a + self.b, -self.b)

    def norm(self):
        """Field norm to Q, a**2 + a*b - b**2."""
        return self.a * self.a + self.a * self.b - self.b * self.b

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("Golden division by zero")
        c = self.conjugate()
        return Golden(c.a / n, c.b / n)

    def __truediv__(self, other):
        o = Golden._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = Golden._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def sign(self):
        """Exact sign of the real number a + b*phi.

        Writes the value as x + y*sqrt(5) with x = a + b/2, y = b/2 and
        compares x**2 against 5*y**2 when the two parts disagree in sign.
        """
        x = self.a + self.b / 2
        y = self.b / 2
        if x >= 0 and y >= 0:
            return 0 if (x == 0 and y == 0) else 1
        if x <= 0 and y <= 0:
            return -1
        lhs, rhs = x * x, 5 * y * y
        if x > 0:
            return 1 if lhs > rhs else -1
        return 1 if rhs > lhs else -1

    def _cmp(self, other):
        o = Golden._coerce(other)
        if o is NotImplemented:
            return o
        return (self - o).sign()

    def __lt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c >= 0

    def __eq__(self, other):
        o = Golden._coerce(other)
        if o is NotImplemented:
            return False
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def is_rational(self):
        return self.b == 0

    def is_integral(self):
        """True iff the element lies in Z[phi]."""
        return self.a.denominator == 1 and self.b.denominator == 1

    def __repr__(self):
        return f"Golden({self.a}, {self.b})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        return f"{self.a}+{self.b}*phi"


PHI = Golden(0, 1)


def sign(x):
    if isinstance(x, Golden):
        return x.sign()
    return (x > 0) - (x < 0)


def is_integer(x):
    if isinstance(x, Golden):
        return x.b == 0 and x.a.denominator == 1
    if isinstance(x, Fraction):
        return x.denominator == 1
    return isinstance(x, int)


def to_field(x):
    """Lift an int to Fraction so that division stays exact."""
    if isinstance(x, int):
        return Fraction(x)
    return x


def scalar_to_json(x):
    """'p/q' for rationals, {'a': 'p/q', 'b': 'p/q'} for golden elements."""
    if isinstance(x, Golden):
        if x.b == 0:
            return str(x.a)
        return {"a": str(x.a), "b": str(x.b)}
    return str(Fraction(x))


def scalar_from_json(obj):
    if isinstance(obj, dict):
        return Golden(Fraction(obj["a"]), Fraction(obj["b"]))
    return Fraction(obj)


def dot(u, v):
    s = 0
    for a, b in zip(u, v):
        if a and b:
            s = s + a * b
    return s


def rank(rows):
    """Rank of a matrix given as a list of rows.

    Fraction-free elimination: stays inside Z (or Z[phi]) for integral
    input, which is the common case for root coordinates.
    """
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        for i in range(r + 1, len(m)):
            q = m[i][c]
            if q:
                row_i, row_r = m[i], m[r]
                m[i] = [p * row_i[k] - q * row_r[k] for k in range(ncols)]
        r += 1
        if r == len(m):
            break
    return r


def rref(rows):
    """Reduced row echelon form. Returns (rows, pivot_columns)."""
    m = [[to_field(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def nullspace(rows, ncols=None):
    """Basis of {x : A x = 0} for A given by rows."""
    if ncols is None:
        ncols = len(rows[0])
    red, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def span_test(rows, ncols):
    """Return a predicate deciding membership in the row space of ``rows``.

    The row space is the annihilator of the null space, so membership is a
    handful of dot products once the null space is known.
    """
    ker = nullspace(rows, ncols) if rows else [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]

    def contains(v):
        return all(not dot(k, v) for k in ker)

    return contains


def det(matrix):
    """Determinant by Gaussian elimination with exact division."""
    m = [[to_field(x) for x in r] for r in matrix]
    n = len(m)
    d = 1
    for c in range(n):
        piv = None
        for i in range(c, n):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            d = -d
        p = m[c][c]
        d = d * p
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] / p
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return _simplify(d)


def solve(matrix, rhs):
    """Solve A x = b for square invertible A."""
    n = len(matrix)
    aug = [list(matrix[i]) + [rhs[i]] for i in range(n)]
    red, pivots = rref(aug)
    if len(pivots) != n or pivots[-1] == n:
        raise ValueError("singular or inconsistent system")
    return [red[i][n] for i in range(n)]


def inverse(matrix):
    n = len(matrix)
    aug = [list(matrix[i]) + [int(i == j) for j in range(n)] for i in range(n)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) != n:
        raise ValueError("matrix is singular")
    return [row[n:] for row in red]


def matmul(a, b):
    bt = list(zip(*b))
    return [[dot(row, col) for col in bt] for row in a]


def transpose(a):
    return [list(r) for r in zip(*a)]


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _simplify(x):
    """Collapse Fractions with denominator 1 and rational Goldens to int."""
    if isinstance(x, Golden) and x.b == 0:
        x = x.a
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


def simplify_matrix(a):
    return [[_simplify(x) for x in row] for row in a]
