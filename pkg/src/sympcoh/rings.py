"""Exact coefficient rings for forms.

Three rings are supported: the rationals (stdlib ``Fraction``), the
Gaussian rationals and polynomials with rational coefficients in a fixed
set of commuting variables (both backed by sympy's sparse domains).

A ring object is a configuration value: every coefficient of a form lives
in exactly one ring, and forms over different rings never mix.
"""

from fractions import Fraction
from functools import lru_cache

from sympy import QQ as _SYMPY_QQ
from sympy import QQ_I as _SYMPY_QQ_I
from sympy import Symbol, sympify
from sympy.polys.rings import ring as _sympy_ring


def _to_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    # gmpy2.mpq / PythonMPQ
    num = getattr(x, "numerator", None)
    den = getattr(x, "denominator", None)
    if num is not None and den is not None:
        return Fraction(int(num), int(den))
    raise TypeError(f"cannot interpret {x!r} as a rational")


def format_rational(q):
    q = _to_fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class RationalField:
    name = "QQ"
    zero = Fraction(0)
    one = Fraction(1)

    def convert(self, x):
        return _to_fraction(x)

    def is_zero(self, c):
        return c == 0

    def format(self, c):
        return format_rational(c)

    def is_unit_one(self, c):
        return c == 1

    def __repr__(self):
        return "QQ"


class GaussianRationalField:
    """a + b*i with a, b rational."""

    name = "QQ_I"

    def __init__(self):
        self.zero = _SYMPY_QQ_I.zero
        self.one = _SYMPY_QQ_I.one
        self.i = _SYMPY_QQ_I(0, 1)

    def convert(self, x):
        if type(x).__name__ == "GaussianRational":
            return x
        q = _to_fraction(x)
        return _SYMPY_QQ_I(_SYMPY_QQ(q.numerator, q.denominator), 0)

    def make(self, re, im):
        re, im = _to_fraction(re), _to_fraction(im)
        return _SYMPY_QQ_I(_SYMPY_QQ(re.numerator, re.denominator),
                           _SYMPY_QQ(im.numerator, im.denominator))

    def real(self, c):
        return _to_fraction(c.x)

    def imag(self, c):
        return _to_fraction(c.y)

    def conjugate(self, c):
        return _SYMPY_QQ_I(c.x, -c.y)

    def is_zero(self, c):
        return not c.x and not c.y

    def format(self, c):
        re, im = self.real(c), self.imag(c)
        if im == 0:
            return format_rational(re)
        im_part = "i" if im == 1 else ("-i" if im == -1 else f"{format_rational(im)}*i")
        if re == 0:
            return im_part
        sign = "-" if im < 0 else "+"
        im_abs = "i" if abs(im) == 1 else f"{format_rational(abs(im))}*i"
        return f"({format_rational(re)} {sign} {im_abs})"

    def is_unit_one(self, c):
        return c.x == 1 and not c.y

    def __repr__(self):
        return "QQ_I"


class PolynomialRing:
    """Polynomials over QQ in the given variable names."""

    def __init__(self, names):
        self.names = tuple(names)
        self.name = "QQ[" + ",".join(self.names) + "]"
        self._ring, *gens = _sympy_ring(",".join(self.names), _SYMPY_QQ)
        self.gens = tuple(gens)
        self.zero = self._ring.zero
        self.one = self._ring.one

    @property
    def nvars(self):
        return len(self.names)

    def convert(self, x):
        if getattr(x, "ring", None) is self._ring:
            return x
        if isinstance(x, str):
            if _is_rational_literal(x):
                return self.convert(Fraction(x))
            return self._ring.from_expr(sympify(x, locals={n: Symbol(n) for n in self.names}))
        q = _to_fraction(x)
        return self._ring.ground_new(_SYMPY_QQ(q.numerator, q.denominator))

    def gen(self, i):
        """The i-th coordinate (0-based) as a ring element."""
        return self.gens[i]

    def diff(self, c, i):
        return c.diff(self.gens[i])

    def total_degree(self, c):
        if c == 0:
            return -1
        return max(sum(m) for m in c.monoms())

    def is_constant(self, c):
        return c == 0 or c.is_ground

    def constant_value(self, c):
        """Rational value of a constant polynomial."""
        if c == 0:
            return Fraction(0)
        if not c.is_ground:
            raise ValueError("polynomial is not constant")
        return _to_fraction(c.LC)

    def from_terms(self, terms):
        """Build from ``{exponent tuple: rational}``."""
        out = self._ring.zero
        for monom, coeff in terms.items():
            q = _to_fraction(coeff)
            if q == 0:
                continue
            term = self._ring.ground_new(_SYMPY_QQ(q.numerator, q.denominator))
            for g, e in zip(self.gens, monom):
                if e:
                    term = term * g**e
            out = out + term
        return out

    def is_zero(self, c):
        return c == 0

    def format(self, c):
        s = str(c)
        if c.is_ground:
            return format_rational(c.LC if c != 0 else 0)
        if len(c.terms()) == 1 and "+" not in s and not s.startswith("-"):
            return s
        return f"({s})"

    def is_unit_one(self, c):
        return c == 1

    def __eq__(self, other):
        return isinstance(other, PolynomialRing) and other.names == self.names

    def __hash__(self):
        return hash(("PolynomialRing", self.names))

    def __repr__(self):
        return self.name


def _is_rational_literal(s):
    try:
        Fraction(s.strip())
    except ValueError:
        return False
    return True


QQ = RationalField()
QQ_I = GaussianRationalField()


@lru_cache(maxsize=None)
def polynomial_ring(names):
    return PolynomialRing(tuple(names))
