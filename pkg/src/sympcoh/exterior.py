"""Graded exterior algebra over an exact coefficient ring.

A basis blade ``e_{i1...ik}`` is stored as the strictly increasing tuple
``(i1, ..., ik)`` of 1-based frame indices; the empty tuple is the unit.
All orientation signs are produced by :func:`wedge` and :func:`contract`,
so two forms are equal exactly when their term maps are equal.

Forms are treated as immutable values.
"""

import re
from fractions import Fraction
from itertools import combinations
from math import comb

from .errors import DegreeError, DimensionMismatch, ParseError, RingMismatch
from .rings import QQ


def basis_blades(dim, k):
    """Degree-k blades of a ``dim``-dimensional coframe, lexicographic."""
    if k < 0 or k > dim:
        return []
    return list(combinations(range(1, dim + 1), k))


def blade_index(dim, k):
    return {b: i for i, b in enumerate(basis_blades(dim, k))}


def blade_wedge(a, b):
    """Return ``(sign, blade)`` for ``e_a ^ e_b``; sign 0 when they overlap."""
    if not a:
        return 1, b
    if not b:
        return 1, a
    sa = set(a)
    if any(j in sa for j in b):
        return 0, ()
    # count inversions between the two sorted runs
    inversions = 0
    i = 0
    for j in b:
        while i < len(a) and a[i] < j:
            i += 1
        inversions += len(a) - i
    merged = tuple(sorted(a + b))
    return (-1 if inversions % 2 else 1), merged


def blade_name(blade):
    if not blade:
        return "1"
    return "^".join(f"e{i}" for i in blade)


class Form:
    """Sparse map blade -> coefficient, with ambient dimension and ring."""

    __slots__ = ("dim", "ring", "terms")

    def __init__(self, dim, terms=None, ring=QQ):
        self.dim = dim
        self.ring = ring
        clean = {}
        if terms:
            for blade, c in terms.items():
                blade = tuple(blade)
                if ring.is_zero(c):
                    continue
                clean[blade] = c
        self.terms = clean

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, dim, ring=QQ):
        return cls(dim, {}, ring)

    @classmethod
    def scalar(cls, dim, c, ring=QQ):
        return cls(dim, {(): ring.convert(c)}, ring)

    @classmethod
    def blade(cls, dim, indices, coeff=1, ring=QQ):
        """``coeff * e_{i1} ^ ... ^ e_{ik}`` for indices in any order."""
        indices = tuple(indices)
        for i in indices:
            if not 1 <= i <= dim:
                raise DimensionMismatch(f"frame index {i} outside 1..{dim}")
        form = cls.scalar(dim, coeff, ring)
        for i in indices:
            form = wedge(form, cls(dim, {(i,): ring.one}, ring))
        return form

    @classmethod
    def from_vector(cls, dim, k, vec, ring=QQ):
        blades = basis_blades(dim, k)
        if len(vec) != len(blades):
            raise DimensionMismatch("vector length does not match degree")
        return cls(dim, {b: ring.convert(c) for b, c in zip(blades, vec)}, ring)

    # -- structure ----------------------------------------------------
    def degrees(self):
        return sorted({len(b) for b in self.terms})

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    @property
    def degree(self):
        """Degree of a homogeneous form; the zero form has degree None."""
        degs = self.degrees()
        if len(degs) > 1:
            raise DegreeError(f"form is not homogeneous (degrees {degs})")
        return degs[0] if degs else None

    def coeff(self, blade):
        return self.terms.get(tuple(blade), self.ring.zero)

    def to_vector(self, k):
        """Coefficients in the lexicographic degree-k blade basis."""
        return [self.coeff(b) for b in basis_blades(self.dim, k)]

    def map_coefficients(self, fn, ring=None):
        ring = ring or self.ring
        return Form(self.dim, {b: fn(c) for b, c in self.terms.items()}, ring)

    def is_zero(self):
        return not self.terms

    # -- arithmetic ---------------------------------------------------
    def _check(self, other):
        if not isinstance(other, Form):
            raise TypeError("expected a Form")
        if self.dim != other.dim:
            raise DimensionMismatch(f"ambient dimensions {self.dim} and {other.dim} differ")
        if self.ring != other.ring:
            raise RingMismatch(f"coefficient rings {self.ring!r} and {other.ring!r} differ")

    def __add__(self, other):
        if other == 0:
            return self
        self._check(other)
        terms = dict(self.terms)
        for b, c in other.terms.items():
            terms[b] = terms[b] + c if b in terms else c
        return Form(self.dim, terms, self.ring)

    __radd__ = __add__

    def __neg__(self):
        return Form(self.dim, {b: -c for b, c in self.terms.items()}, self.ring)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = self.ring.convert(c)
        if self.ring.is_zero(c):
            return Form(self.dim, {}, self.ring)
        return Form(self.dim, {b: c * v for b, v in self.terms.items()}, self.ring)

    def __mul__(self, c):
        if isinstance(c, Form):
            return wedge(self, c)
        return self.scale(c)

    def __rmul__(self, c):
        return self.scale(c)

    def __truediv__(self, c):
        return self.scale(Fraction(1) / Fraction(c))

    def __xor__(self, other):
        return wedge(self, other)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, Form):
            return NotImplemented
        return self.dim == other.dim and self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.dim, frozenset((b, str(c)) for b, c in self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        return format_form(self)

    def __repr__(self):
        return f"Form(dim={self.dim}, {format_form(self)!r})"


def _check_pair(a, b):
    a._check(b)


def wedge(a, b):
    """Exterior product; bilinear, associative, graded anticommutative."""
    _check_pair(a, b)
    terms = {}
    for ba, ca in a.terms.items():
        for bb, cb in b.terms.items():
            sign, blade = blade_wedge(ba, bb)
            if sign == 0:
                continue
            v = ca * cb if sign > 0 else -(ca * cb)
            terms[blade] = terms[blade] + v if blade in terms else v
    return Form(a.dim, terms, a.ring)


def wedge_all(forms, dim, ring=QQ):
    out = Form.scalar(dim, 1, ring)
    for f in forms:
        out = wedge(out, f)
    return out


def power(a, r):
    """``a ^ a ^ ... ^ a`` (r factors); the unit for r = 0."""
    out = Form.scalar(a.dim, 1, a.ring)
    for _ in range(r):
        out = wedge(a, out)
    return out


def contract(i, a):
    """Interior product with the i-th frame vector (degree -1 antiderivation)."""
    if not 1 <= i <= a.dim:
        raise DimensionMismatch(f"frame index {i} outside 1..{a.dim}")
    terms = {}
    for blade, c in a.terms.items():
        if i not in blade:
            continue
        pos = blade.index(i)
        rest = blade[:pos] + blade[pos + 1:]
        terms[rest] = -c if pos % 2 else c
    return Form(a.dim, terms, a.ring)


def linear_combine(pairs):
    """Exact linear combination ``sum(c * form)`` of ``(scalar, Form)`` pairs."""
    pairs = list(pairs)
    if not pairs:
        raise ValueError("empty combination has no ambient data")
    out = Form.zero(pairs[0][1].dim, pairs[0][1].ring)
    for c, f in pairs:
        out = out + f.scale(c)
    return out


def project_degree(a, k):
    if not 0 <= k <= a.dim:
        raise DegreeError(f"degree {k} outside 0..{a.dim}")
    return Form(a.dim, {b: c for b, c in a.terms.items() if len(b) == k}, a.ring)


def homogeneous_parts(a):
    """``{k: degree-k component}`` for the degrees present in ``a``."""
    parts = {}
    for b, c in a.terms.items():
        parts.setdefault(len(b), {})[b] = c
    return {k: Form(a.dim, t, a.ring) for k, t in sorted(parts.items())}


def top_blade(dim):
    return tuple(range(1, dim + 1))


def space_dimension(dim, k):
    return comb(dim, k) if 0 <= k <= dim else 0


# -- text format ------------------------------------------------------------

def _blade_sort_key(blade):
    return (len(blade), blade)


def format_form(a):
    """Canonical text: sorted blades, reduced rationals, ``c * e1^e2`` terms."""
    if not a.terms:
        return "0"
    ring = a.ring
    pieces = []
    for blade in sorted(a.terms, key=_blade_sort_key):
        c = a.terms[blade]
        negative = False
        if ring is QQ and c < 0:
            negative, c = True, -c
        if not blade:
            body = ring.format(c)
        elif ring.is_unit_one(c):
            body = blade_name(blade)
        else:
            body = f"{ring.format(c)} * {blade_name(blade)}"
        pieces.append(("-" if negative else "+", body))
    out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<blade>e\d+)|(?P<op>[-+*^()]))")


def parse_form(text, dim, line=1, column_offset=0):
    """Parse the shared form grammar into a rational form.

    Terms are ``c * e{i}^e{j}^...`` joined by ``+``/``-``; the coefficient
    and ``*`` may be omitted, and a bare coefficient is a degree-0 term.
    Errors carry the 1-based line and column.
    """
    tokens = []
    pos = 0
    stripped = text.rstrip()
    while pos < len(stripped):
        m = _TOKEN.match(stripped, pos)
        if not m or m.end() == pos:
            ws = len(stripped[pos:]) - len(stripped[pos:].lstrip())
            raise ParseError(f"unexpected character {stripped[pos + ws]!r}", line,
                             column_offset + pos + ws + 1)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), column_offset + start + 1))
        pos = m.end()
    if not tokens:
        raise ParseError("empty form", line, column_offset + 1)

    result = {}
    i = 0
    expect_term = True
    sign = 1
    while i < len(tokens):
        kind, val, col = tokens[i]
        if kind == "op" and val in "+-" and expect_term:
            sign = -sign if val == "-" else sign
            i += 1
            continue
        if not expect_term:
            if kind == "op" and val in "+-":
                sign = -1 if val == "-" else 1
                expect_term = True
                i += 1
                continue
            raise ParseError(f"expected '+' or '-' before {val!r}", line, col)
        coeff = Fraction(1)
        have_coeff = False
        if kind == "num":
            num, _, den = val.partition("/")
            if den and int(den) == 0:
                raise ParseError("zero denominator", line, col)
            coeff = Fraction(int(num), int(den) if den else 1)
            have_coeff = True
            i += 1
            if i < len(tokens) and tokens[i][:2] == ("op", "*"):
                i += 1
                if i >= len(tokens) or tokens[i][0] != "blade":
                    c = tokens[i][2] if i < len(tokens) else column_offset + len(stripped) + 1
                    raise ParseError("expected a blade after '*'", line, c)
            elif i < len(tokens) and tokens[i][0] == "blade":
                raise ParseError("missing '*' between coefficient and blade", line, tokens[i][2])
        indices = []
        if i < len(tokens) and tokens[i][0] == "blade":
            while True:
                bkind, bval, bcol = tokens[i]
                if bkind != "blade":
                    raise ParseError(f"expected a blade, got {bval!r}", line, bcol)
                idx = int(bval[1:])
                if not 1 <= idx <= dim:
                    raise ParseError(f"frame index {idx} outside 1..{dim}", line, bcol)
                if idx in indices:
                    raise ParseError(f"repeated index e{idx} in one blade", line, bcol)
                indices.append(idx)
                i += 1
                if i < len(tokens) and tokens[i][:2] == ("op", "^"):
                    i += 1
                    if i >= len(tokens):
                        raise ParseError("dangling '^'", line, column_offset + len(stripped) + 1)
                    continue
                break
        elif not have_coeff:
            raise ParseError(f"unexpected token {val!r}", line, col)
        term = Form.blade(dim, indices, sign * coeff)
        for b, c in term.terms.items():
            result[b] = result.get(b, 0) + c
        expect_term = False
        sign = 1
    if expect_term:
        raise ParseError("form ends with an operator", line, column_offset + len(stripped) + 1)
    return Form(dim, result)
