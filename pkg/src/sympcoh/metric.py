"""Compatible triples, the Hodge star, the operator 𝒥, adjoints and Laplacians.

Matrices act on tangent vectors in the frame dual to the coframe:
``omega(X, Y) = X^T W Y`` and ``g(X, Y) = omega(X, J Y)``, so ``g = W J``.
On one-forms ``J^*`` acts by ``(J^* a)(X) = a(J X)``, i.e.
``J^* e_i = sum_j J_ij e_j``; (1,0)-forms are the +i eigenforms of ``J^*``.
"""

from fractions import Fraction
from math import factorial

from . import linalg
from .errors import NotPrimitiveError, TripleError
from .exterior import Form, homogeneous_parts, power, top_blade, wedge
from .rings import QQ, QQ_I
from .symplectic import induced_minor, star_from_pairing, two_form_matrix

LAPLACIAN_KINDS = ("d", "dΛ", "d+dΛ", "ddΛ", "d∩dΛ", "p:d+dΛ", "p:ddΛ", "p:d∩dΛ")
ADJOINT_KINDS = ("d", "dΛ", "ddΛ")
ELLIPTIC_KINDS = ("d+dΛ", "ddΛ")


class CompatibleTriple:
    def __init__(self, omega_matrix, j_matrix, g_matrix, volume):
        self.omega_matrix = omega_matrix
        self.j_matrix = j_matrix
        self.g_matrix = g_matrix
        self.g_inverse = linalg.inverse(g_matrix)
        self.volume = volume  # omega^n / n!, fixes the orientation

    def __repr__(self):
        return f"CompatibleTriple(dim={len(self.j_matrix)})"


def check_triple(omega_matrix, j_matrix):
    """Names of the compatibility conditions that ``J`` violates."""
    dim = len(omega_matrix)
    failures = []
    if len(j_matrix) != dim or any(len(r) != dim for r in j_matrix):
        return [f"J must be {dim}x{dim}"]
    if linalg.matmul(j_matrix, j_matrix) != linalg.mat_scale(linalg.identity(dim), Fraction(-1)):
        failures.append("J^2 = -I")
    g = linalg.matmul(omega_matrix, j_matrix)
    if g != linalg.transpose(g):
        failures.append("g = omega(., J .) symmetric")
    elif not linalg.leading_minors_positive(g):
        failures.append("g positive definite")
    jt = linalg.transpose(j_matrix)
    if linalg.matmul(linalg.matmul(jt, omega_matrix), j_matrix) != omega_matrix:
        failures.append("omega(JX, JY) = omega(X, Y)")
    return failures


def build_compatible_triple(model, j=None):
    """Validated ``(omega, J, g)`` on the model's coframe.

    Without ``j`` (and no ``J`` in the model) the omega matrix W must be
    orthogonal; then ``J = W^T`` gives ``g = W W^T = I``.
    """
    omega = getattr(model, "omega_rational", model.omega)
    w = two_form_matrix(omega)
    dim = len(w)
    if j is None:
        j = getattr(model, "j_matrix", None)
    if j is None:
        if linalg.matmul(linalg.transpose(w), w) != linalg.identity(dim):
            raise TripleError("omega's coframe matrix is not orthogonal (W^T W != I); "
                              "supply a compatible J")
        j = linalg.transpose(w)
    j = linalg.as_fraction_rows(j)
    failures = check_triple(w, j)
    if failures:
        raise TripleError("J is not compatible with omega: fails " + ", ".join(failures))
    g = linalg.matmul(w, j)
    vol = power(omega, dim // 2) / factorial(dim // 2)
    return CompatibleTriple(w, j, g, vol)


class HodgeContext:
    """Metric operators for a backend (invariant model or Darboux chart) with a compatible triple.

    Integration, and hence the global inner product, needs an invariant model.
    """

    def __init__(self, model, triple=None, checked=False):
        self.model = model
        self.triple = triple or build_compatible_triple(model)
        self.sym = model.context(checked)
        self.dim = model.dim
        self.n = model.n
        self.checked = checked
        self._cache = {}
        j = self.triple.j_matrix
        self._jstar = [Form(self.dim, {(c + 1,): j[r][c] for c in range(self.dim)})
                       for r in range(self.dim)]

    # -- stars ---------------------------------------------------------
    def hodge_star(self, a):
        """``A ^ *B = <A, B>_g omega^n/n!`` with the metric induced on k-forms."""
        out = Form.zero(self.dim, a.ring)
        for k, part in homogeneous_parts(a).items():
            key = ("star", k)
            if key not in self._cache:
                ginv = self.triple.g_inverse
                self._cache[key] = star_from_pairing(self.dim, k, lambda I, J: induced_minor(ginv, I, J),
                                                     self.triple.volume)
            images = self._cache[key]
            out = out + self.sym.blade_linear(("hodge", k), lambda b: images[b], part)
        return out

    def metric_pairing(self, a, b):
        """Pointwise ``<a, b>_g`` (top coefficient of ``a ^ *b`` over the volume)."""
        top = top_blade(self.dim)
        return Fraction(wedge(a, self.hodge_star(b)).coeff(top)) / Fraction(self.triple.volume.coeff(top))

    def inner(self, a, b):
        """``(a, b) = integral of a ^ *b`` on the model."""
        from .model import integrate_top
        return integrate_top(self.model, wedge(a, self.hodge_star(b)))

    # -- the operator 𝒥 --------------------------------------------------
    def j_star_one_form(self, i):
        return self._jstar[i - 1]

    def jay_operator(self, a):
        """``𝒥 = wedge^k J^*``: the algebra automorphism extending J^* on one-forms."""
        def image(blade):
            out = Form.scalar(self.dim, 1)
            for i in blade:
                out = wedge(out, self._jstar[i - 1])
            return out
        out = self.sym.blade_linear("jay", image, a)
        if self.checked and a.ring is QQ:
            alt = self.jay_operator_pq(a)
            if alt != out.map_coefficients(QQ_I.convert, QQ_I):
                raise AssertionError(f"𝒥 routes disagree on {a}")
        return out

    def jay_inverse(self, a):
        """``𝒥^{-1} = (-1)^k 𝒥`` on degree k."""
        out = Form.zero(self.dim, a.ring)
        for k, part in homogeneous_parts(a).items():
            img = self.jay_operator(part)
            out = out + (img if k % 2 == 0 else -img)
        return out

    def pq_components(self, a):
        """``{(p, q): Π^{p,q} a}`` over the Gaussian rationals."""
        key = "pq_blade"
        cache = self._cache.setdefault(key, {})
        out = {}
        ac = a if a.ring is QQ_I else a.map_coefficients(QQ_I.convert, QQ_I)
        for blade, c in ac.terms.items():
            if blade not in cache:
                cache[blade] = self._pq_blade(blade)
            for pq, f in cache[blade].items():
                term = f.scale(c)
                out[pq] = out[pq] + term if pq in out else term
        return {pq: f for pq, f in sorted(out.items()) if f}

    def _pq_blade(self, blade):
        # e_i = e_i^{1,0} + e_i^{0,1} with e^{1,0} = (e - i J^* e)/2
        half = QQ_I.make(Fraction(1, 2), 0)
        half_i = QQ_I.make(0, Fraction(1, 2))
        split = {}
        for i in set(blade):
            e = Form.blade(self.dim, (i,), ring=QQ_I)
            je = self._jstar[i - 1].map_coefficients(QQ_I.convert, QQ_I)
            split[i] = (e.scale(half) - je.scale(half_i), e.scale(half) + je.scale(half_i))
        parts = {(0, 0): Form.scalar(self.dim, 1, QQ_I)}
        for i in blade:
            holo, anti = split[i]
            nxt = {}
            for (p, q), f in parts.items():
                for pq, piece in (((p + 1, q), holo), ((p, q + 1), anti)):
                    term = wedge(f, piece)
                    nxt[pq] = nxt[pq] + term if pq in nxt else term
            parts = nxt
        return parts

    def jay_operator_pq(self, a):
        """``sum i^{p-q} Π^{p,q} a`` over the Gaussian rationals."""
        powers = [QQ_I.make(1, 0), QQ_I.make(0, 1), QQ_I.make(-1, 0), QQ_I.make(0, -1)]
        out = Form.zero(self.dim, QQ_I)
        for (p, q), f in self.pq_components(a).items():
            out = out + f.scale(powers[(p - q) % 4])
        return out

    def d_c(self, a):
        """``d^c = 𝒥^{-1} d 𝒥``."""
        return self.jay_inverse(self.model.d(self.jay_operator(a)))

    # -- adjoints --------------------------------------------------------
    def adjoint(self, kind, a):
        if kind not in ADJOINT_KINDS:
            raise ValueError(f"unknown adjoint kind {kind!r}; expected one of {ADJOINT_KINDS}")
        star = self.hodge_star
        if kind == "d":
            return -star(self.sym.d(star(a)))
        if kind == "dΛ":
            return star(self.sym.d_lambda(star(a)))
        out = Form.zero(self.dim, a.ring)
        for k, part in homogeneous_parts(a).items():
            img = star(self.sym.dd_lambda(star(part)))
            out = out + (img if k % 2 else -img)
        return out

    def d_star(self, a):
        return self.adjoint("d", a)

    def d_lambda_star(self, a):
        return self.adjoint("dΛ", a)

    def dd_lambda_star(self, a):
        return self.adjoint("ddΛ", a)

    # -- Laplacians ------------------------------------------------------
    def laplacian(self, kind, a, lam=1):
        """Second-order Laplacian of the given kind; ``p:`` kinds need primitive input."""
        lam = _check_lambda(lam)
        s = self.sym
        d, dl, ddl = s.d, s.d_lambda, s.dd_lambda
        ds, dls, ddls = self.d_star, self.d_lambda_star, self.dd_lambda_star
        if kind.startswith("p:"):
            for part in homogeneous_parts(a).values():
                if not s.is_primitive(part):
                    raise NotPrimitiveError(f"primitive Laplacian {kind} applied to a non-primitive form")
        if kind == "d":
            return d(ds(a)) + ds(d(a))
        if kind == "dΛ":
            return dls(dl(a)) + dl(dls(a))
        if kind == "d+dΛ":
            return ddl(ddls(a)) + (ds(d(a)) + dls(dl(a))).scale(lam)
        if kind == "ddΛ":
            return ddls(ddl(a)) + (d(ds(a)) + dl(dls(a))).scale(lam)
        if kind == "d∩dΛ":
            return d(ds(a)) + ds(d(a)) + dl(dls(a)) + dls(dl(a))
        if kind == "p:d+dΛ":
            return ddl(ddls(a)) + ds(d(a)).scale(lam)
        if kind == "p:ddΛ":
            return ddls(ddl(a)) + dl(dls(a)).scale(lam)
        if kind == "p:d∩dΛ":
            return ds(d(a)) + dl(dls(a))
        raise ValueError(f"unknown Laplacian kind {kind!r}; expected one of {LAPLACIAN_KINDS}")

    def elliptic_D(self, kind, a, lam=1):
        """Fourth-order self-adjoint operators with the same kernel as the Laplacians."""
        lam = _check_lambda(lam)
        s = self.sym
        d, dl, ddl = s.d, s.d_lambda, s.dd_lambda
        ds, dls, ddls = self.d_star, self.d_lambda_star, self.dd_lambda_star
        if kind == "d+dΛ":
            return (ddl(ddls(a)) + ddls(ddl(a)) + ds(dl(dls(d(a)))) + dls(d(ds(dl(a))))
                    + (ds(d(a)) + dls(dl(a))).scale(lam))
        if kind == "ddΛ":
            return (ddls(ddl(a)) + ddl(ddls(a)) + d(dls(dl(ds(a)))) + dl(ds(d(dls(a))))
                    + (d(ds(a)) + dl(dls(a))).scale(lam))
        raise ValueError(f"unknown elliptic operator kind {kind!r}; expected one of {ELLIPTIC_KINDS}")


def _check_lambda(lam):
    lam = Fraction(lam)
    if lam <= 0:
        raise ValueError("lambda must be positive")
    return lam


def hodge_context(model, j=None, checked=False):
    triple = build_compatible_triple(model, j) if j is not None else None
    return HodgeContext(model, triple, checked)


__all__ = ["CompatibleTriple", "HodgeContext", "build_compatible_triple", "check_triple",
           "hodge_context", "LAPLACIAN_KINDS", "ADJOINT_KINDS", "ELLIPTIC_KINDS"]
