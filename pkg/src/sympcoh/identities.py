"""Seeded randomized checks of the operator identities on both backends.

Each identity draws its own random stream from ``(seed, identity name)``,
so reports do not depend on which identities run or in what order.  All
comparisons are exact; a failure records the input and both sides.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .exterior import Form, basis_blades, format_form, wedge
from .metric import HodgeContext
from .model import builtin_model, integrate_top
from .rings import QQ_I
from .poly_forms import (DarbouxChart, PolyVectorField, hamiltonian_vector_field, interior_with_vector,
                         lie_derivative, lie_derivative_coordinate, random_polynomial)
from .symplectic import commutator

LAMBDAS = (Fraction(1), Fraction(7), Fraction(1, 3))


@dataclass
class IdentityOutcome:
    name: str
    group: str
    passed: int = 0
    failed: int = 0
    witness: str = ""

    @property
    def ok(self):
        return self.failed == 0


@dataclass
class SuiteReport:
    backend: str
    seed: int
    cases: int
    outcomes: list = field(default_factory=list)

    @property
    def ok(self):
        return all(o.ok for o in self.outcomes)

    @property
    def failures(self):
        return [o for o in self.outcomes if not o.ok]

    def format(self):
        lines = [f"identity suite: backend={self.backend} seed={self.seed} cases={self.cases}"]
        group = None
        for o in self.outcomes:
            if o.group != group:
                group = o.group
                lines.append(f"{group}:")
            mark = "pass" if o.ok else "FAIL"
            lines.append(f"  [{mark}] {o.name}  {o.passed}/{o.passed + o.failed}")
            if o.witness:
                lines.extend("      " + w for w in o.witness.splitlines())
        total = sum(o.failed for o in self.outcomes)
        lines.append(f"{len(self.outcomes)} identities, {total} failures")
        return "\n".join(lines)

    def to_dict(self):
        return {"backend": self.backend, "seed": self.seed, "cases": self.cases,
                "identities": [{"name": o.name, "group": o.group, "passed": o.passed,
                                "failed": o.failed, "witness": o.witness} for o in self.outcomes]}


class Failure(Exception):
    """Raised inside an identity with a description of both sides."""


def expect_equal(lhs, rhs, label="", inputs=()):
    if lhs != rhs:
        parts = [f"{label}" if label else "sides differ"]
        for name, value in inputs:
            parts.append(f"{name} = {_fmt(value)}")
        parts.append(f"lhs = {_fmt(lhs)}")
        parts.append(f"rhs = {_fmt(rhs)}")
        raise Failure("\n".join(parts))


def expect(cond, message):
    if not cond:
        raise Failure(message)


def _fmt(v):
    return format_form(v) if isinstance(v, Form) else str(v)


# -- backends -----------------------------------------------------------------

class _Backend:
    name = ""
    has_integration = False

    def random_form(self, rng, k=None):
        raise NotImplementedError

    def random_degree(self, rng, top=None):
        return rng.randint(0, self.dim if top is None else top)

    def random_primitive(self, rng, k=None):
        if k is None:
            k = rng.randint(0, self.n)
        return self.sym.primitive_part(self.random_form(rng, k)), k


class InvariantBackend(_Backend):
    has_integration = True

    def __init__(self, model_name="kt", spread=3):
        self.model = builtin_model(model_name) if isinstance(model_name, str) else model_name
        self.name = f"invariant:{self.model.name}"
        self.dim, self.n = self.model.dim, self.model.n
        self.sym = self.model.context()
        self.hodge = HodgeContext(self.model)
        self.spread = spread
        self._six = None

    def random_form(self, rng, k=None):
        if k is None:
            k = self.random_degree(rng)
        blades = basis_blades(self.dim, k)
        terms = {}
        for b in blades:
            if rng.random() < 0.6:
                terms[b] = Fraction(rng.randint(-self.spread, self.spread))
        return Form(self.dim, terms)

    def constant_form(self, rng, k):
        return self.random_form(rng, k)

    def closed_sample(self, rng, k):
        """Random d- and dΛ-closed k-form: ddΛ-image plus a harmonic-style kernel element."""
        from .cohomology import CohomologyEngine
        if not hasattr(self, "_engine"):
            self._engine = CohomologyEngine(self.model)
        closed = self._engine.kernel("d", k).intersect(self._engine.kernel("dΛ", k))
        vec = [Fraction(0)] * closed.n
        for row in closed.basis:
            c = rng.randint(-2, 2)
            vec = [x + c * y for x, y in zip(vec, row)]
        return Form.from_vector(self.dim, k, vec) + self.sym.dd_lambda(self.random_form(rng, k))

    def six(self):
        if self._six is None:
            self._six = InvariantBackend("torus3", self.spread)
        return self._six

    def integrate(self, a):
        return integrate_top(self.model, a)


class PolyBackend(_Backend):
    def __init__(self, n=2, max_degree=3, spread=3):
        self.chart = DarbouxChart(n)
        self.name = f"poly:R^{2 * n}"
        self.dim, self.n = self.chart.dim, n
        self.sym = self.chart.context()
        self.hodge = HodgeContext(self.chart)
        self.max_degree = max_degree
        self.spread = spread
        self._six = None

    def poly(self, rng, max_terms=3):
        return random_polynomial(self.chart, rng, self.max_degree, max_terms, self.spread)

    def random_form(self, rng, k=None, max_terms=3):
        if k is None:
            k = self.random_degree(rng)
        blades = basis_blades(self.dim, k)
        terms = {}
        for _ in range(rng.randint(1, max_terms)):
            b = rng.choice(blades)
            terms[b] = self.poly(rng, 2)
        return Form(self.dim, terms, self.chart.ring)

    def constant_form(self, rng, k):
        blades = basis_blades(self.dim, k)
        terms = {b: rng.randint(-self.spread, self.spread) for b in blades if rng.random() < 0.6}
        return self.chart.lift(Form(self.dim, {b: Fraction(c) for b, c in terms.items()}))

    def closed_sample(self, rng, k):
        """ddΛ-exact plus constant-coefficient (hence d- and dΛ-closed) k-form."""
        return self.constant_form(rng, k) + self.sym.dd_lambda(self.random_form(rng, k))

    def six(self):
        if self._six is None:
            self._six = PolyBackend(3, min(self.max_degree, 2), self.spread)
        return self._six


# -- identity catalogue ---------------------------------------------------------

def _sl2(b, rng):
    s = b.sym
    a = b.random_form(rng)
    H, L, Lam = s.H, s.L, s.Lambda
    expect_equal(commutator(Lam, L)(a), H(a), "[Λ,L] = H", [("a", a)])
    expect_equal(commutator(H, Lam)(a), Lam(a).scale(2), "[H,Λ] = 2Λ", [("a", a)])
    expect_equal(commutator(H, L)(a), L(a).scale(-2), "[H,L] = -2L", [("a", a)])


def _comm_table(b, rng):
    s = b.sym
    a = b.random_form(rng)
    d, dl, ddl = s.d, s.d_lambda, s.dd_lambda
    L, Lam, H = s.L, s.Lambda, s.H
    zero = lambda x: x.scale(0)
    neg = lambda f: (lambda x: -f(x))
    table = [
        ("[d,L] = 0", d, L, zero), ("[d,Λ] = dΛ", d, Lam, dl), ("[d,H] = d", d, H, d),
        ("[dΛ,L] = d", dl, L, d), ("[dΛ,Λ] = 0", dl, Lam, zero), ("[dΛ,H] = -dΛ", dl, H, neg(dl)),
        ("[ddΛ,L] = 0", ddl, L, zero), ("[ddΛ,Λ] = 0", ddl, Lam, zero), ("[ddΛ,H] = 0", ddl, H, zero),
    ]
    for label, f, g, rhs in table:
        expect_equal(commutator(f, g)(a), rhs(a), label, [("a", a)])


def _nilpotent(b, rng):
    s = b.sym
    a = b.random_form(rng)
    expect_equal(s.d(s.d(a)), a.scale(0), "d d = 0", [("a", a)])
    expect_equal(s.d_lambda(s.d_lambda(a)), a.scale(0), "dΛ dΛ = 0", [("a", a)])
    expect_equal(s.d(s.d_lambda(a)), -s.d_lambda(s.d(a)), "d dΛ = -dΛ d", [("a", a)])
    expect_equal(s.dd_lambda(a), -s.d(s.Lambda(s.d(a))), "ddΛ = -dΛd", [("a", a)])


def _star_s_involution(b, rng):
    a = b.random_form(rng)
    expect_equal(b.sym.star_s(b.sym.star_s(a)), a, "*_s *_s = 1", [("a", a)])


def _star_s_pairing(b, rng):
    k = b.random_degree(rng)
    a = b.random_form(rng, k)
    expect_equal(b.sym.star_s(a), b.sym.star_s_pairing(a), "closed form = pairing definition", [("a", a)])


def _d_lambda_symplectic_adjoint(b, rng):
    s = b.sym
    k = b.random_degree(rng)
    a = b.random_form(rng, k)
    rhs = s.star_s(s.d(s.star_s(a))).scale((-1) ** (k + 1))
    expect_equal(s.d_lambda(a), rhs, "dΛ = (-1)^{k+1} *_s d *_s", [("a", a)])


def _lambda_symplectic_adjoint(b, rng):
    s = b.sym
    a = b.random_form(rng)
    expect_equal(s.Lambda(a), s.star_s(s.L(s.star_s(a))), "Λ = *_s L *_s", [("a", a)])


def _lambda_L_power(b, rng):
    s = b.sym
    k = b.random_degree(rng)
    a = b.random_form(rng, k)
    r = rng.randint(1, 3)
    lhs = s.Lambda(s.L(a, r)) - s.L(s.Lambda(a), r)
    inner = s.H(a) - a.scale(r - 1)
    rhs = s.L(inner, r - 1).scale(r)
    expect_equal(lhs, rhs, f"[Λ, L^{r}] = {r} L^{r - 1}(H - {r - 1})", [("a", a)])


def _decomposition_roundtrip(b, rng):
    s = b.sym
    a = b.random_form(rng)
    comps = s.decompose(a)
    for r, B in comps.items():
        expect(s.is_primitive(B), f"component r={r} of {_fmt(a)} is not primitive: {_fmt(B)}")
    expect_equal(comps.recompose(), a, "recompose(decompose(a)) = a", [("a", a)])
    # uniqueness: recomposing the components and decomposing again is stable
    again = s.decompose(comps.recompose())
    expect(dict(again) == dict(comps), f"decomposition of {_fmt(a)} not unique")


def _lemma_primitive_d(b, rng):
    s = b.sym
    n = b.n
    B, k = b.random_primitive(rng)
    dB = s.d(B)
    expect_equal(s.Lambda(s.Lambda(dB)), dB.scale(0), "Λ² dB = 0", [("B", B)])
    comps = s.decompose(dB) if dB else {}
    if k == n:
        expect(not comps.get(0), f"k = n: dB has a primitive top part for B = {_fmt(B)}")
    B1 = comps.get(1) if comps else None
    B1 = B1 if B1 is not None else B.scale(0)
    expect_equal(s.d_lambda(B), B1.scale(-(n - k + 1)), "dΛ B = -(n-k+1) B¹", [("B", B)])
    ddl = s.dd_lambda(B)
    expect(s.is_primitive(ddl) if ddl else True, f"ddΛ B not primitive for B = {_fmt(B)}")
    expect_equal(ddl, s.d(B1).scale(-(n - k + 1)), "ddΛ B = -(n-k+1) d B¹", [("B", B)])


def _ddl_closed_components(b, rng):
    s = b.sym
    k = b.random_degree(rng)
    a = b.random_form(rng, k)
    if rng.random() < 0.5:
        a = (s.d(b.random_form(rng, k - 1)) if k >= 1 else a.scale(0)) + \
            (s.d_lambda(b.random_form(rng, k + 1)) if k < b.dim else a.scale(0))
    comps = s.decompose(a)
    img = s.decompose(s.dd_lambda(a)) if s.dd_lambda(a) else None
    for r, B in comps.items():
        got = img.get(r) if img else None
        got = got if got is not None else B.scale(0)
        expect_equal(got, s.dd_lambda(B), f"ddΛ commutes with the r={r} projection", [("a", a)])
    closed = not s.dd_lambda(a)
    parts = all(not s.dd_lambda(B) for B in comps.values())
    expect(closed == parts, f"ddΛ-closedness of {_fmt(a)} ({closed}) != components ({parts})")


def _d_dl_closed_components(b, rng):
    s = b.sym
    k = b.random_degree(rng)
    a = b.closed_sample(rng, k) if rng.random() < 0.5 else b.random_form(rng, k)
    closed = not s.d(a) and not s.d_lambda(a)
    parts = all(not s.d(B) for B in s.decompose(a).values())
    expect(closed == parts, f"d,dΛ-closedness of {_fmt(a)} ({closed}) != d-closed components ({parts})")


def _example_dim6(b, rng):
    six = b.six()
    s = six.sym
    a = six.random_form(rng, 4)
    comps = s.decompose(a)
    B2 = s.Lambda(a) - s.L(s.Lambda(a, 2)) / 3
    B0 = s.Lambda(a, 2) / 6
    expect_equal(comps.get(1, s.zero()), B2, "B_2 = (Λ - L Λ²/3) A_4", [("A_4", a)])
    expect_equal(comps.get(2, s.zero()), B0, "B_0 = Λ² A_4 / 6", [("A_4", a)])


def _primitive_d_lemma(b, rng):
    s = b.sym
    B, k = b.random_primitive(rng)
    if rng.random() < 0.5:
        B = s.primitive_part(s.dd_lambda(b.random_form(rng, k)))
    dB = s.d(B)
    prim = (not dB) or (dB.degree <= b.n and s.is_primitive(dB))
    expect(prim == (not s.d_lambda(B)), f"dB primitive ({prim}) but dΛB = {_fmt(s.d_lambda(B))} for B = {_fmt(B)}")


def _projection_footnote(b, rng):
    s = b.sym
    B, k = b.random_primitive(rng, rng.randint(0, b.n - 1))
    lhs = s.d(B) + s.L(s.H_inverse(s.d_lambda(B)))
    dB = s.d(B)
    rhs = dB - s.L(s.H_inverse(s.Lambda(dB)))
    expect_equal(lhs, rhs, "(d + L H⁻¹ dΛ) B = (1 - L H⁻¹ Λ) dB", [("B", B)])


# metric identities

def _hodge_basics(b, rng):
    h = b.hodge
    k = b.random_degree(rng)
    a = b.random_form(rng, k)
    expect_equal(h.hodge_star(h.hodge_star(a)), a.scale((-1) ** k), "** = (-1)^k", [("a", a)])
    expect_equal(h.hodge_star(a), h.jay_operator(b.sym.star_s(a)), "* = 𝒥 *_s", [("a", a)])
    expect_equal(b.sym.Lambda(a), h.hodge_star(b.sym.L(h.hodge_star(a))).scale((-1) ** k),
                 "Λ = (-1)^k * L *", [("a", a)])


def _weil(b, rng):
    s, h, n = b.sym, b.hodge, b.n
    B, k = b.random_primitive(rng)
    r = rng.randint(0, n - k)
    lhs = h.hodge_star(s.L(B, r) / factorial(r))
    sign = -1 if (k * (k + 1) // 2) % 2 else 1
    rhs = s.L(h.jay_operator(B), n - k - r).scale(Fraction(sign, factorial(n - k - r)))
    expect_equal(lhs, rhs, f"Weil relation (r={r})", [("B", B)])


def _d_lambda_dc(b, rng):
    h = b.hodge
    a = b.random_form(rng)
    expect_equal(b.sym.d_lambda(a), -h.hodge_star(h.d_c(h.hodge_star(a))), "dΛ = -* d^c *", [("a", a)])


def _adjoint_routes(b, rng):
    s, h = b.sym, b.hodge
    a = b.random_form(rng)
    expect_equal(h.d_lambda_star(a), commutator(s.L, h.d_star)(a), "dΛ* = [L, d*]", [("a", a)])
    expect_equal(h.dd_lambda_star(a), -h.d_star(s.L(h.d_star(a))), "(ddΛ)* = -d* L d*", [("a", a)])


def _adjoint_table(b, rng):
    s, h = b.sym, b.hodge
    a = b.random_form(rng)
    ds, dls, ddls = h.d_star, h.d_lambda_star, h.dd_lambda_star
    L, Lam, H = s.L, s.Lambda, s.H
    zero = lambda x: x.scale(0)
    neg = lambda f: (lambda x: -f(x))
    table = [
        ("[d*,L] = -dΛ*", ds, L, neg(dls)), ("[d*,Λ] = 0", ds, Lam, zero), ("[d*,H] = -d*", ds, H, neg(ds)),
        ("[dΛ*,L] = 0", dls, L, zero), ("[dΛ*,Λ] = -d*", dls, Lam, neg(ds)), ("[dΛ*,H] = dΛ*", dls, H, dls),
        ("[(ddΛ)*,L] = 0", ddls, L, zero), ("[(ddΛ)*,Λ] = 0", ddls, Lam, zero),
        ("[(ddΛ)*,H] = 0", ddls, H, zero),
    ]
    for label, f, g, rhs in table:
        expect_equal(commutator(f, g)(a), rhs(a), label, [("a", a)])


def _laplacian_duality(b, rng):
    h = b.hodge
    a = b.random_form(rng)
    lam = rng.choice(LAMBDAS)
    expect_equal(h.hodge_star(h.laplacian("d+dΛ", a, lam)), h.laplacian("ddΛ", h.hodge_star(a), lam),
                 f"* Δ_(d+dΛ) = Δ_(ddΛ) * (λ={lam})", [("a", a)])


def _laplacian_sl2(b, rng):
    s, h = b.sym, b.hodge
    a = b.random_form(rng)
    lam = rng.choice(LAMBDAS)
    for kind in ("d+dΛ", "ddΛ", "d∩dΛ"):
        lap = lambda x, kind=kind: h.laplacian(kind, x, lam)
        expect_equal(commutator(lap, s.L)(a), s.L(a).scale(0), f"[Δ_{kind}, L] = 0", [("a", a)])
        expect_equal(commutator(lap, s.Lambda)(a), s.Lambda(a).scale(0),
                     f"[Δ_{kind}, Λ] = 0", [("a", a)])


def _jay_routes(b, rng):
    h = b.hodge
    a = b.random_form(rng)
    expect_equal(h.jay_operator(a).map_coefficients(QQ_I.convert, QQ_I), h.jay_operator_pq(a),
                 "∧^k J^* = Σ i^(p-q) Π^(p,q)", [("a", a)])
    comps = h.pq_components(a)
    for (p, q), f in comps.items():
        conj = f.map_coefficients(QQ_I.conjugate, QQ_I)
        expect_equal(comps.get((q, p)), conj, f"conjugate symmetry of ({p},{q})", [("a", a)])


def _inner_adjointness(b, rng):
    s, h = b.sym, b.hodge
    k = b.random_degree(rng)
    a = b.random_form(rng, k)
    if k < b.dim:
        c = b.random_form(rng, k + 1)
        expect_equal(h.inner(s.d(a), c), h.inner(a, h.d_star(c)), "(d a, c) = (a, d* c)", [("a", a), ("c", c)])
    if k > 0:
        c = b.random_form(rng, k - 1)
        expect_equal(h.inner(s.d_lambda(a), c), h.inner(a, h.d_lambda_star(c)),
                     "(dΛ a, c) = (a, dΛ* c)", [("a", a), ("c", c)])
    c = b.random_form(rng, k)
    expect_equal(h.inner(s.dd_lambda(a), c), h.inner(a, h.dd_lambda_star(c)),
                 "(ddΛ a, c) = (a, (ddΛ)* c)", [("a", a), ("c", c)])
    lam = rng.choice(LAMBDAS)
    for kind in ("d", "dΛ", "d+dΛ", "ddΛ", "d∩dΛ"):
        expect_equal(h.inner(h.laplacian(kind, a, lam), c), h.inner(a, h.laplacian(kind, c, lam)),
                     f"Δ_{kind} self-adjoint", [("a", a), ("c", c)])


def _stokes(b, rng):
    a = b.random_form(rng, b.dim - 1)
    expect_equal(b.integrate(b.sym.d(a)), Fraction(0), "∫ d a = 0", [("a", a)])
    x, y = b.random_form(rng), b.random_form(rng)
    k = x.degree or 0
    lhs = b.sym.d(wedge(x, y))
    rhs = wedge(b.sym.d(x), y) + wedge(x, b.sym.d(y)).scale((-1) ** k)
    expect_equal(lhs, rhs, "d(x^y) = dx^y + (-1)^k x^dy", [("x", x), ("y", y)])


# Lie derivative identities (polynomial backend)

def _random_field(b, rng):
    return PolyVectorField(b.chart, [b.poly(rng, 2) for _ in range(b.dim)])


def _hamiltonian(b, rng):
    h = b.poly(rng)
    return h, hamiltonian_vector_field(b.chart, h)


def _cartan(b, rng):
    V = _random_field(b, rng)
    a = b.random_form(rng)
    expect_equal(lie_derivative(V, a), lie_derivative_coordinate(V, a), "Cartan = coordinate formula",
                 [("V", V), ("a", a)])
    expect_equal(lie_derivative(V, b.sym.d(a)), b.sym.d(lie_derivative(V, a)), "[L_V, d] = 0",
                 [("V", V), ("a", a)])


def _hamiltonian_preserves_omega(b, rng):
    h, V = _hamiltonian(b, rng)
    omega = b.chart.omega
    dh = b.sym.d(b.chart.scalar(h))
    expect_equal(interior_with_vector(V, omega), dh, "i_V ω = dh", [("h", h)])
    expect_equal(lie_derivative(V, omega), omega.scale(0), "L_V ω = 0", [("h", h)])


def _lie_decomposition(b, rng):
    s = b.sym
    h, V = _hamiltonian(b, rng)
    a = b.random_form(rng)
    comps = s.decompose(a)
    lhs = lie_derivative(V, a)
    rhs = a.scale(0)
    for r, B in comps.items():
        rhs = rhs + s.L(lie_derivative(V, B), r) / factorial(r)
    expect_equal(lhs, rhs, "L_V A = Σ L^r (L_V B_r) / r!", [("h", h), ("a", a)])


def _lie_primitive(b, rng):
    s = b.sym
    h, V = _hamiltonian(b, rng)
    B, _ = b.random_primitive(rng)
    v = interior_with_vector(V, b.chart.omega)
    expect_equal(interior_with_vector(V, B), -s.Lambda(wedge(v, B)), "i_V B = -Λ(v ^ B)", [("h", h), ("B", B)])
    rhs = -s.d_lambda(wedge(v, B)) - wedge(v, s.d_lambda(B))
    expect_equal(lie_derivative(V, B), rhs, "L_V B = -dΛ(v^B) - v^dΛB", [("h", h), ("B", B)])


def _lie_closed(b, rng):
    s = b.sym
    h, V = _hamiltonian(b, rng)
    k = b.random_degree(rng)
    a = b.constant_form(rng, k)
    if rng.random() < 0.5 and k >= 2:
        a = a + s.L(b.constant_form(rng, k - 2), 1)
    expect(not s.d(a) and not s.d_lambda(a), f"test form not closed: {_fmt(a)}")
    expect_equal(lie_derivative(V, a), s.dd_lambda(a.scale(h)), "L_V A = ddΛ(h A)", [("h", h), ("a", a)])


SYMPLECTIC_IDENTITIES = [
    ("sl(2) relations [Λ,L]=H, [H,Λ]=2Λ, [H,L]=-2L", _sl2),
    ("commutators of d, dΛ, ddΛ with L, Λ, H (nine relations)", _comm_table),
    ("d² = 0, (dΛ)² = 0, d dΛ = -dΛ d, ddΛ = -dΛd", _nilpotent),
    ("*_s *_s = 1", _star_s_involution),
    ("*_s Lefschetz closed form = pairing definition", _star_s_pairing),
    ("dΛ = (-1)^{k+1} *_s d *_s", _d_lambda_symplectic_adjoint),
    ("Λ = *_s L *_s", _lambda_symplectic_adjoint),
    ("[Λ, L^r] = r L^{r-1}(H - r + 1)", _lambda_L_power),
    ("Lefschetz decomposition round trip and uniqueness", _decomposition_roundtrip),
    ("d, dΛ, ddΛ on primitive forms (Λ²dB=0, top case, dΛB, ddΛB)", _lemma_primitive_d),
    ("ddΛ-closed iff every Lefschetz component is", _ddl_closed_components),
    ("d- and dΛ-closed iff every component is d-closed", _d_dl_closed_components),
    ("dim 6 decomposition B_2 = (Λ - LΛ²/3)A_4, B_0 = Λ²A_4/6", _example_dim6),
    ("dB primitive iff dΛ B = 0 (B primitive)", _primitive_d_lemma),
    ("(d + LH⁻¹dΛ)B = (1 - LH⁻¹Λ) dB", _projection_footnote),
]

METRIC_IDENTITIES = [
    ("** = (-1)^k, * = 𝒥 *_s, Λ = (-1)^k * L *", _hodge_basics),
    ("Weil relation on primitive forms", _weil),
    ("dΛ = -* d^c *", _d_lambda_dc),
    ("dΛ* = [L, d*], (ddΛ)* = -d* L d*", _adjoint_routes),
    ("Hodge adjoint commutators with L, Λ, H (nine relations)", _adjoint_table),
    ("* Δ_(d+dΛ) = Δ_(ddΛ) *", _laplacian_duality),
    ("new Laplacians commute with L and Λ", _laplacian_sl2),
]

INVARIANT_ONLY = [
    ("𝒥: wedge of J^* equals the (p,q) route; conjugate symmetry", _jay_routes),
    ("Hodge adjointness and self-adjoint Laplacians", _inner_adjointness),
    ("Stokes and Leibniz on the invariant complex", _stokes),
]

LIE_IDENTITIES = [
    ("Cartan formula matches coordinate formula; [L_V, d] = 0", _cartan),
    ("hamiltonian V: i_V ω = dh and L_V ω = 0", _hamiltonian_preserves_omega),
    ("L_V commutes with Lefschetz decomposition", _lie_decomposition),
    ("L_V on primitive B via dΛ", _lie_primitive),
    ("L_V A = ddΛ(h A) for d- and dΛ-closed A", _lie_closed),
]


def _run(backend, name, group, fn, seed, cases):
    out = IdentityOutcome(name, group)
    rng = random.Random(f"{seed}:{backend.name}:{name}")
    for case in range(cases):
        try:
            fn(backend, rng)
            out.passed += 1
        except Failure as exc:
            out.failed += 1
            if not out.witness:
                out.witness = f"case {case}: {exc}"
        except Exception as exc:  # an identity that crashes counts as failed, with the error as witness
            out.failed += 1
            if not out.witness:
                out.witness = f"case {case}: {type(exc).__name__}: {exc}"
    return out


def run_suite(backend="invariant", seed=0, cases=100, model="kt", groups=None):
    """Run every identity for ``cases`` random inputs; returns a :class:`SuiteReport`."""
    if backend == "invariant":
        b = InvariantBackend(model)
        catalogue = [("symplectic", SYMPLECTIC_IDENTITIES), ("metric", METRIC_IDENTITIES),
                     ("invariant complex", INVARIANT_ONLY)]
    elif backend == "poly":
        b = PolyBackend()
        catalogue = [("symplectic", SYMPLECTIC_IDENTITIES), ("metric", METRIC_IDENTITIES),
                     ("Lie derivative", LIE_IDENTITIES)]
    else:
        raise ValueError(f"unknown backend {backend!r}; expected 'poly' or 'invariant'")
    report = SuiteReport(b.name, seed, cases)
    for group, items in catalogue:
        if groups and group not in groups:
            continue
        for name, fn in items:
            report.outcomes.append(_run(b, name, group, fn, seed, cases))
    return report
