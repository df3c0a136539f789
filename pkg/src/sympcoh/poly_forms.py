"""Polynomial-coefficient forms on R^{2n} in Darboux coordinates.

Coordinates are ordered ``(p1..pn, q1..qn)`` and frame index ``i`` refers
to ``dx^i`` in that order, so ``omega = sum_i e_i ^ e_{n+i}``.
"""

from fractions import Fraction

from .errors import DimensionMismatch, RingMismatch
from .exterior import Form, contract, wedge
from .rings import QQ, polynomial_ring
from .symplectic import SymplecticContext


class DarbouxChart:
    def __init__(self, n):
        if n < 1:
            raise DimensionMismatch("half-dimension must be at least 1")
        self.n = n
        self.dim = 2 * n
        self.names = tuple(f"p{i}" for i in range(1, n + 1)) + tuple(f"q{i}" for i in range(1, n + 1))
        self.ring = polynomial_ring(self.names)
        terms = {(i, n + i): Fraction(1) for i in range(1, n + 1)}
        self.omega_rational = Form(self.dim, terms)
        self.omega = self.omega_rational.map_coefficients(self.ring.convert, self.ring)
        self._contexts = {}

    def coordinate(self, name):
        """Coordinate function by name (``"p1"``) or 1-based frame index."""
        idx = self.names.index(name) if isinstance(name, str) else name - 1
        return self.ring.gen(idx)

    def form(self, terms):
        """Form from ``{blade tuple: coefficient}``; coefficients may be strings."""
        return Form(self.dim, {tuple(b): self.ring.convert(c) for b, c in terms.items()}, self.ring)

    def lift(self, rational_form):
        return rational_form.map_coefficients(self.ring.convert, self.ring)

    def scalar(self, c):
        return Form.scalar(self.dim, self.ring.convert(c), self.ring)

    def d(self, a):
        return exterior_derivative_poly(self, a)

    def context(self, checked=False):
        if checked not in self._contexts:
            self._contexts[checked] = SymplecticContext(self.omega_rational, self.d, self.ring,
                                                        checked=checked)
        return self._contexts[checked]

    def __eq__(self, other):
        return isinstance(other, DarbouxChart) and other.n == self.n

    def __hash__(self):
        return hash(("DarbouxChart", self.n))

    def __repr__(self):
        return f"DarbouxChart(n={self.n})"


def _require_chart_form(chart, a):
    if a.dim != chart.dim:
        raise DimensionMismatch(f"form dimension {a.dim} != chart dimension {chart.dim}")
    if a.ring != chart.ring:
        raise RingMismatch(f"expected coefficients in {chart.ring!r}, got {a.ring!r}")


def exterior_derivative_poly(chart, a):
    """``d a = sum_i d_i(coefficient) e_i ^ blade``."""
    _require_chart_form(chart, a)
    ring = chart.ring
    out = Form.zero(chart.dim, ring)
    for blade, c in a.terms.items():
        if ring.is_constant(c):
            continue
        for i in range(1, chart.dim + 1):
            if i in blade:
                continue
            dc = ring.diff(c, i - 1)
            if dc:
                out = out + wedge(Form(chart.dim, {(i,): dc}, ring), Form(chart.dim, {blade: ring.one}, ring))
    return out


class PolyVectorField:
    """``V = sum_i V^i d/dx^i`` with polynomial components."""

    def __init__(self, chart, components):
        components = [chart.ring.convert(c) for c in components]
        if len(components) != chart.dim:
            raise DimensionMismatch(f"expected {chart.dim} components")
        self.chart = chart
        self.components = tuple(components)

    @classmethod
    def zero(cls, chart):
        return cls(chart, [0] * chart.dim)

    @classmethod
    def basis(cls, chart, i):
        comps = [0] * chart.dim
        comps[i - 1] = 1
        return cls(chart, comps)

    def apply(self, f):
        """Directional derivative V(f) of a polynomial."""
        ring = self.chart.ring
        total = ring.zero
        for i, v in enumerate(self.components):
            if v:
                total = total + v * ring.diff(f, i)
        return total

    def __eq__(self, other):
        return (isinstance(other, PolyVectorField) and other.chart == self.chart
                and other.components == self.components)

    def __repr__(self):
        parts = [f"{self.chart.ring.format(v)}*d/d{name}"
                 for v, name in zip(self.components, self.chart.names) if v]
        return "PolyVectorField(" + (" + ".join(parts) or "0") + ")"


def _require_shared(V, a):
    if not isinstance(V, PolyVectorField):
        raise TypeError("expected a PolyVectorField")
    _require_chart_form(V.chart, a)


def interior_with_vector(V, a):
    """``i_V a = sum_i V^i contract(i, a)``."""
    _require_shared(V, a)
    out = Form.zero(a.dim, a.ring)
    for i, v in enumerate(V.components, start=1):
        if v:
            out = out + contract(i, a).scale(v)
    return out


def lie_derivative(V, a):
    """Cartan formula ``L_V a = i_V da + d i_V a``."""
    _require_shared(V, a)
    d = V.chart.d
    return interior_with_vector(V, d(a)) + d(interior_with_vector(V, a))


def lie_derivative_coordinate(V, a):
    """Independent route: ``L_V(f dx^I) = V(f) dx^I + f sum_j dx^{i1}..dV^{ij}..dx^{ik}``."""
    _require_shared(V, a)
    chart = V.chart
    ring = chart.ring
    out = Form.zero(a.dim, ring)
    dV = [chart.d(Form.scalar(chart.dim, v, ring)) for v in V.components]
    for blade, f in a.terms.items():
        out = out + Form(chart.dim, {blade: V.apply(f)}, ring)
        for pos, idx in enumerate(blade):
            left = Form(chart.dim, {blade[:pos]: ring.one}, ring)
            right = Form(chart.dim, {blade[pos + 1:]: ring.one}, ring)
            out = out + wedge(wedge(left, dV[idx - 1]), right).scale(f)
    return out


def vector_field_from_one_form(chart, v):
    """The V with ``i_V omega = v``: ``V^i = (omega^-1)^{ji} v_j``."""
    _require_chart_form(chart, v)
    if v and v.degree != 1:
        raise ValueError("expected a one-form")
    w = chart.context().omega_inverse
    comps = []
    for i in range(chart.dim):
        total = chart.ring.zero
        for j in range(chart.dim):
            if w[j][i]:
                total = total + v.coeff((j + 1,)) * chart.ring.convert(w[j][i])
        comps.append(total)
    return PolyVectorField(chart, comps)


def hamiltonian_vector_field(chart, h):
    """The vector field V with ``i_V omega = dh``."""
    h = chart.ring.convert(h)
    return vector_field_from_one_form(chart, chart.d(Form.scalar(chart.dim, h, chart.ring)))


def random_polynomial(chart, rng, max_degree=3, max_terms=3, coeff_range=3):
    """A small random polynomial drawn from ``rng`` (a ``random.Random``)."""
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        total = rng.randint(0, max_degree)
        monom = [0] * chart.dim
        for _ in range(total):
            monom[rng.randrange(chart.dim)] += 1
        c = rng.randint(-coeff_range, coeff_range)
        if c:
            terms[tuple(monom)] = terms.get(tuple(monom), 0) + c
    return chart.ring.from_terms(terms)


def rational_to_poly(chart, a):
    if a.ring is not QQ:
        raise RingMismatch("expected a rational form")
    return chart.lift(a)
