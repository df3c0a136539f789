"""Exact linear algebra over the rationals.

Matrices are lists of rows of ``Fraction``.  Ranks use fraction-free
(Bareiss) elimination on an integer rescaling of the input; echelon bases
and null spaces use Gauss-Jordan over ``Fraction``.
"""

from fractions import Fraction
from math import lcm

from .errors import InclusionError


def as_fraction_rows(rows):
    return [[Fraction(x) for x in row] for row in rows]


def zeros(m, n):
    return [[Fraction(0)] * n for _ in range(m)]


def identity(n):
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = Fraction(1)
    return out


def transpose(rows, ncols=None):
    if not rows:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*rows)]


def matmul(a, b):
    if not a:
        return []
    bt = transpose(b, len(b[0]) if b else 0)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def matvec(a, v):
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, c):
    return [[c * x for x in row] for row in a]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def is_zero_matrix(a):
    return all(x == 0 for row in a for x in row)


def rank(rows):
    """Rank by Bareiss fraction-free elimination."""
    rows = [list(r) for r in rows if any(x != 0 for x in r)]
    if not rows:
        return 0
    m = []
    for r in rows:
        scale = lcm(*(Fraction(x).denominator for x in r))
        m.append([int(Fraction(x) * scale) for x in r])
    nrows, ncols = len(m), len(m[0])
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, nrows):
            m[i] = [(m[r][c] * m[i][j] - m[i][c] * m[r][j]) // prev for j in range(ncols)]
        prev = m[r][c]
        r += 1
    return r


def rref(rows, ncols=None):
    """Reduced row echelon form; returns ``(nonzero rows, pivot columns)``."""
    m = [[Fraction(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        if pv != 1:
            m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def nullspace(rows, ncols):
    """Basis of ``{v : M v = 0}`` for an ``m x ncols`` matrix."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def solve(rows, rhs, ncols):
    """One solution of ``M x = rhs`` or None when the system is infeasible."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[ncols]
    return x


def inverse(rows):
    n = len(rows)
    aug = [list(r) + e for r, e in zip(rows, identity(n))]
    red, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ValueError("matrix is singular")
    return [row[n:] for row in red]


def determinant(rows):
    """Determinant by Bareiss elimination (exact)."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    m = []
    for r in rows:
        s = lcm(*(Fraction(x).denominator for x in r))
        scale /= s
        m.append([int(Fraction(x) * s) for x in r])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * scale * m[n - 1][n - 1]


def leading_minors_positive(rows):
    """Sylvester's criterion for a symmetric matrix."""
    n = len(rows)
    return all(determinant([row[:k] for row in rows[:k]]) > 0 for k in range(1, n + 1))


class Subspace:
    """Linear subspace of ``QQ^n`` held as a reduced echelon basis.

    ``degree`` records which graded piece the coordinates refer to; it is
    carried along but not interpreted here.
    """

    __slots__ = ("n", "basis", "pivots", "degree")

    def __init__(self, n, vectors=(), degree=None):
        self.n = n
        self.degree = degree
        red, pivots = rref(list(vectors), n)
        self.basis = red
        self.pivots = pivots

    @classmethod
    def full(cls, n, degree=None):
        return cls(n, identity(n), degree)

    @classmethod
    def zero(cls, n, degree=None):
        return cls(n, (), degree)

    @property
    def dimension(self):
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def contains(self, v):
        v = [Fraction(x) for x in v]
        for row, p in zip(self.basis, self.pivots):
            if v[p] != 0:
                f = v[p]
                v = [x - f * y for x, y in zip(v, row)]
        return all(x == 0 for x in v)

    def contains_space(self, other):
        return all(self.contains(v) for v in other.basis)

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.n == other.n
                and self.basis == other.basis)

    def __add__(self, other):
        return Subspace(self.n, self.basis + other.basis, self.degree)

    def intersect(self, other):
        """Intersection via the null space of ``[V | -W]``."""
        if not self.basis or not other.basis:
            return Subspace(self.n, (), self.degree)
        cols = self.basis + [[-x for x in w] for w in other.basis]
        m = transpose(cols)
        kern = nullspace(m, len(cols))
        k = len(self.basis)
        vecs = []
        for coeffs in kern:
            v = [Fraction(0)] * self.n
            for c, b in zip(coeffs[:k], self.basis):
                if c:
                    v = [x + c * y for x, y in zip(v, b)]
            vecs.append(v)
        return Subspace(self.n, vecs, self.degree)

    def complement_in(self, ambient):
        """Vectors of ``ambient.basis`` completing ``self`` to ``ambient``.

        Requires ``self`` to lie inside ``ambient``; the chosen vectors are
        the first ambient echelon vectors that raise the rank.
        """
        if not ambient.contains_space(self):
            raise InclusionError("subspace is not contained in the ambient space")
        current = Subspace(self.n, self.basis)
        chosen = []
        for v in ambient.basis:
            if not current.contains(v):
                chosen.append(list(v))
                current = Subspace(self.n, current.basis + [v])
        return chosen

    def coordinates(self, v):
        """Coefficients of ``v`` in the echelon basis (v must lie in the span)."""
        if not self.contains(v):
            raise ValueError("vector not in subspace")
        return [Fraction(v[p]) for p in self.pivots]

    def __repr__(self):
        return f"Subspace(n={self.n}, dim={self.dimension}, degree={self.degree})"


def quotient_dim(big, small):
    """``dim big - dim small`` after asserting ``small`` lies in ``big``."""
    if not big.contains_space(small):
        raise InclusionError("exact subspace not contained in closed subspace")
    return big.dimension - small.dimension


def kernel(matrix, ncols, degree=None):
    return Subspace(ncols, nullspace(matrix, ncols), degree)


def image(matrix, nrows, degree=None):
    """Column space of an ``nrows x m`` matrix."""
    return Subspace(nrows, transpose(matrix) if matrix and matrix[0] else (), degree)
