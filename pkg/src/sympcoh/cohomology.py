"""Cohomologies, primitive cohomologies and harmonic spaces of an invariant model.

Every space is a :class:`~sympcoh.linalg.Subspace` of the coordinate space
of degree-k forms in the lexicographic blade basis.  A quotient is computed
as ``dim closed - dim exact`` after asserting ``exact ⊆ closed``.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .errors import DegreeError, TripleError
from .exterior import Form, basis_blades, format_form
from .linalg import Subspace
from .metric import ELLIPTIC_KINDS

KINDS = ("d", "dΛ", "d+dΛ", "ddΛ", "d∩dΛ")
PRIMITIVE_KINDS = ("PH:d+dΛ", "PH:ddΛ", "PH:d∩dΛ", "PH:d")
ALL_KINDS = KINDS + PRIMITIVE_KINDS

_ALIASES = {
    "d": "d", "dl": "dΛ", "dlambda": "dΛ",
    "d+dl": "d+dΛ", "d+dlambda": "d+dΛ",
    "ddl": "ddΛ", "ddlambda": "ddΛ",
    "d^dl": "d∩dΛ", "d&dl": "d∩dΛ", "dcapdl": "d∩dΛ",
}

# Laplacian kind whose kernel is the harmonic space of each cohomology kind.
LAPLACIAN_OF = {"d": "d", "dΛ": "dΛ", "d+dΛ": "d+dΛ", "ddΛ": "ddΛ", "d∩dΛ": "d∩dΛ",
                "PH:d+dΛ": "p:d+dΛ", "PH:ddΛ": "p:ddΛ", "PH:d∩dΛ": "p:d∩dΛ"}


def normalize_kind(kind):
    """Canonical kind name; accepts ASCII spellings such as ``d+dL`` or ``p:ddL``."""
    raw = kind.strip()
    primitive = False
    for prefix in ("PH:", "ph:", "p:", "P:"):
        if raw.startswith(prefix):
            primitive, raw = True, raw[len(prefix):]
            break
    base = _ALIASES.get(raw.replace("Λ", "L").replace("∩", "^").lower())
    if base is None:
        raise ValueError(f"unknown cohomology kind {kind!r}")
    name = ("PH:" + base) if primitive else base
    if name not in ALL_KINDS:
        raise ValueError(f"unknown cohomology kind {kind!r}")
    return name


@dataclass
class CohomologyResult:
    model: str
    kind: str
    degree: int
    dimension: int
    representatives: list
    closed: Subspace
    exact: Subspace
    harmonic: list = None
    notes: list = field(default_factory=list)

    def basis_strings(self):
        return [format_form(f) for f in self.representatives]

    def harmonic_strings(self):
        return None if self.harmonic is None else [format_form(f) for f in self.harmonic]

    def to_dict(self):
        out = {"kind": self.kind, "degree": self.degree, "dim": self.dimension,
               "basis": self.basis_strings()}
        if self.harmonic is not None:
            out["harmonicBasis"] = self.harmonic_strings()
        return out


class CohomologyEngine:
    """Exact cohomology computations on one model.

    ``hodge`` (a :class:`~sympcoh.metric.HodgeContext`) is only needed for
    adjoints, Laplacians and harmonic spaces.
    """

    def __init__(self, model, hodge=None, lam=1):
        self.model = model
        self.sym = model.context()
        self.hodge = hodge
        self.lam = Fraction(lam)
        self.dim = model.dim
        self.n = model.n
        self._matrices = {}
        self._spaces = {}

    # -- operators ------------------------------------------------------
    def _operator(self, op):
        """``(callable on forms, degree shift or callable k -> target degree)``."""
        s, h = self.sym, self.hodge
        simple = {
            "d": (s.d, 1), "dΛ": (s.d_lambda, -1), "ddΛ": (s.dd_lambda, 0),
            "L": (s.L, 2), "Λ": (s.Lambda, -2), "H": (s.H, 0),
            "*s": (s.star_s, None),
            "d+LH⁻¹dΛ": (lambda a: s.d(a) + s.L(s.H_inverse(s.d_lambda(a))), 1),
        }
        if op in simple:
            return simple[op]
        if op.startswith("L^") or op.startswith("Λ^"):
            j = int(op[2:])
            base = s.L if op[0] == "L" else s.Lambda
            return (lambda a: base(a, j)), (2 * j if op[0] == "L" else -2 * j)
        if h is None:
            raise TripleError(f"operator {op!r} needs a compatible triple")
        metric = {
            "d*": (h.d_star, -1), "dΛ*": (h.d_lambda_star, 1), "ddΛ*": (h.dd_lambda_star, 0),
            "*": (h.hodge_star, None), "𝒥": (h.jay_operator, 0),
        }
        if op in metric:
            return metric[op]
        if op.startswith("Δ:"):
            kind = op[2:]
            return (lambda a: h.laplacian(kind, a, self.lam)), 0
        if op.startswith("D:"):
            kind = op[2:]
            return (lambda a: h.elliptic_D(kind, a, self.lam)), 0
        raise ValueError(f"unknown operator {op!r}")

    def target_degree(self, op, k):
        _, shift = self._operator(op)
        return self.dim - k if shift is None else k + shift

    def matrix(self, op, k):
        """Matrix of ``op`` on degree-k forms; columns are blade images."""
        if not 0 <= k <= self.dim:
            raise DegreeError(f"degree {k} outside 0..{self.dim}")
        key = (op, k)
        if key not in self._matrices:
            fn, _ = self._operator(op)
            t = self.target_degree(op, k)
            src = basis_blades(self.dim, k)
            tgt = basis_blades(self.dim, t)
            index = {b: i for i, b in enumerate(tgt)}
            m = linalg.zeros(len(tgt), len(src))
            for col, blade in enumerate(src):
                img = fn(Form(self.dim, {blade: Fraction(1)}))
                for b, c in img.terms.items():
                    m[index[b]][col] = Fraction(c)
            self._matrices[key] = m
        return self._matrices[key]

    def size(self, k):
        return len(basis_blades(self.dim, k))

    def full(self, k):
        return Subspace.full(self.size(k), k) if 0 <= k <= self.dim else Subspace.zero(0, k)

    def kernel(self, op, k):
        return linalg.kernel(self.matrix(op, k), self.size(k), k)

    def apply(self, op, k, space):
        """Image of a degree-k subspace under ``op``."""
        t = self.target_degree(op, k)
        if not 0 <= k <= self.dim or not 0 <= t <= self.dim or not space.basis:
            return Subspace.zero(self.size(t) if 0 <= t <= self.dim else 0, t)
        m = self.matrix(op, k)
        return Subspace(self.size(t), [linalg.matvec(m, v) for v in space.basis], t)

    def image(self, op, k):
        """Image of all degree-k forms."""
        return self.apply(op, k, self.full(k))

    def image_into(self, op, target, source):
        """``op(Ω^source)`` as a subspace of degree ``target`` (zero if out of range)."""
        if not 0 <= source <= self.dim:
            return Subspace.zero(self.size(target), target)
        return self.apply(op, source, self.full(source))

    def primitive(self, k):
        """Primitive k-forms (zero for k > n)."""
        key = ("P", k)
        if key not in self._spaces:
            if 0 <= k <= self.n:
                self._spaces[key] = self.kernel("Λ", k)
            else:
                self._spaces[key] = Subspace.zero(self.size(k) if 0 <= k <= self.dim else 0, k)
        return self._spaces[key]

    def to_form(self, k, vec):
        return Form.from_vector(self.dim, k, vec)

    def to_vector(self, a, k):
        return [Fraction(c) for c in a.to_vector(k)]

    # -- closed / exact pairs --------------------------------------------
    def closed_exact(self, kind, k):
        kind = normalize_kind(kind)
        key = ("ce", kind, k)
        if key in self._spaces:
            return self._spaces[key]
        if not 0 <= k <= self.dim:
            raise DegreeError(f"degree {k} outside 0..{self.dim}")
        if kind.startswith("PH:") and k > self.n:
            raise DegreeError(f"primitive cohomology needs k <= n = {self.n}")
        size = self.size(k)
        zero = Subspace.zero(size, k)
        ker = self.kernel
        if kind == "d":
            closed, exact = ker("d", k), self.image_into("d", k, k - 1)
        elif kind == "dΛ":
            closed, exact = ker("dΛ", k), self.image_into("dΛ", k, k + 1)
        elif kind == "d+dΛ":
            closed, exact = ker("d", k).intersect(ker("dΛ", k)), self.image("ddΛ", k)
        elif kind == "ddΛ":
            closed = ker("ddΛ", k)
            exact = self.image_into("d", k, k - 1) + self.image_into("dΛ", k, k + 1)
        elif kind == "d∩dΛ":
            closed = ker("d", k).intersect(ker("dΛ", k))
            exact = zero
            if k >= 1:
                exact = exact + self.apply("d", k - 1, ker("ddΛ", k - 1))
            if k + 1 <= self.dim:
                exact = exact + self.apply("dΛ", k + 1, ker("ddΛ", k + 1))
        else:
            P = self.primitive(k)
            if kind == "PH:d+dΛ":
                closed = ker("d", k).intersect(P)
                exact = self.apply("ddΛ", k, P)
            elif kind == "PH:ddΛ":
                closed = ker("ddΛ", k).intersect(P)
                exact = zero
                if k >= 1:
                    exact = exact + self.apply("d+LH⁻¹dΛ", k - 1, self.primitive(k - 1))
                exact = exact + self.apply("dΛ", k + 1, self.primitive(k + 1))
            elif kind == "PH:d∩dΛ":
                closed = ker("d", k).intersect(P)
                exact = zero
                if k >= 1:
                    exact = exact + self.apply("d+LH⁻¹dΛ", k - 1, self.b_tilde(k - 1))
                exact = exact + self.apply("dΛ", k + 1, self.b_tilde(k + 1))
            else:  # PH:d
                closed = ker("d", k).intersect(P)
                exact = zero
                if k >= 1:
                    p_prime = self.primitive(k - 1).intersect(ker("dΛ", k - 1))
                    exact = self.apply("d", k - 1, p_prime)
        closed.degree = exact.degree = k
        self._spaces[key] = (closed, exact)
        return closed, exact

    def b_tilde(self, k):
        """Primitive dd^Λ-closed k-forms."""
        if not 0 <= k <= self.dim:
            return Subspace.zero(0, k)
        return self.primitive(k).intersect(self.kernel("ddΛ", k))

    def dimension(self, kind, k):
        closed, exact = self.closed_exact(kind, k)
        return linalg.quotient_dim(closed, exact)

    def representatives(self, kind, k):
        """Canonical class representatives: closed vectors reduced modulo exact, in echelon form."""
        closed, exact = self.closed_exact(kind, k)
        linalg.quotient_dim(closed, exact)
        reduced = [_reduce(v, exact) for v in closed.basis]
        rows, _ = linalg.rref(reduced, closed.n)
        return [self.to_form(k, r) for r in rows]

    def cohomology(self, kind, k, harmonic=False):
        kind = normalize_kind(kind)
        closed, exact = self.closed_exact(kind, k)
        dim = linalg.quotient_dim(closed, exact)
        reps = self.representatives(kind, k)
        result = CohomologyResult(self.model.name, kind, k, dim, reps, closed, exact)
        if harmonic:
            space = self.harmonic_space(kind, k)
            if space is None:
                result.notes.append("no harmonic theory for this kind")
            else:
                result.harmonic = [self.to_form(k, v) for v in space.basis]
        return result

    def cohomology_table(self, kind, harmonic=False):
        kind = normalize_kind(kind)
        top = self.n if kind.startswith("PH:") else self.dim
        return [self.cohomology(kind, k, harmonic) for k in range(top + 1)]

    # -- harmonic spaces -------------------------------------------------
    def _need_hodge(self):
        if self.hodge is None:
            raise TripleError("harmonic computations need a compatible triple")

    def harmonic_space(self, kind, k):
        """Intersection of the defining kernels; None for PH:d (no Laplacian)."""
        kind = normalize_kind(kind)
        self._need_hodge()
        ker = self.kernel
        conditions = {
            "d": ("d", "d*"),
            "dΛ": ("dΛ", "dΛ*"),
            "d+dΛ": ("d", "dΛ", "ddΛ*"),
            "ddΛ": ("ddΛ", "d*", "dΛ*"),
            "d∩dΛ": ("d", "dΛ", "d*", "dΛ*"),
            "PH:d+dΛ": ("Λ", "d", "ddΛ*"),
            "PH:ddΛ": ("Λ", "ddΛ", "dΛ*"),
            "PH:d∩dΛ": ("Λ", "d", "dΛ*"),
        }
        if kind not in conditions:
            return None
        if kind.startswith("PH:") and k > self.n:
            raise DegreeError(f"primitive harmonic forms need k <= n = {self.n}")
        space = self.full(k)
        for op in conditions[kind]:
            space = space.intersect(ker(op, k))
        return space

    def laplacian_kernel(self, kind, k, operator="Δ"):
        """Kernel of the Laplacian (or of ``D`` with operator="D") at degree k.

        Primitive kinds restrict the operator to primitive forms.  None when
        the kind has no such operator.
        """
        kind = normalize_kind(kind)
        self._need_hodge()
        lap = LAPLACIAN_OF.get(kind)
        if lap is None:
            return None
        if operator == "D":
            # D has no separate primitive form; restricted to P^k its kernel is ker D ∩ P^k
            lap = lap[2:] if lap.startswith("p:") else lap
            if lap not in ELLIPTIC_KINDS:
                return None
        op = f"{operator}:{lap}"
        if not kind.startswith("PH:"):
            return self.kernel(op, k)
        P = self.primitive(k)
        if not P.basis:
            return P
        m = self.matrix_on_basis(op, k, P.basis)
        coeffs = linalg.nullspace(m, len(P.basis))
        vecs = [_combine(c, P.basis) for c in coeffs]
        return Subspace(P.n, vecs, k)

    def matrix_on_basis(self, op, k, basis):
        fn, _ = self._operator(op)
        t = self.target_degree(op, k)
        cols = [self.to_vector(fn(self.to_form(k, v)), t) for v in basis]
        return linalg.transpose(cols)

    def hodge_decomposition_check(self, kind, k):
        """Orthogonality and dimension count of the three-summand decomposition."""
        kind = normalize_kind(kind)
        self._need_hodge()
        harm = self.harmonic_space(kind, k)
        if kind == "d+dΛ":
            middle = self.image("ddΛ", k)
            last = self.image_into("d*", k, k + 1) + self.image_into("dΛ*", k, k - 1)
            labels = ("harmonic", "im ddΛ", "im d* + im dΛ*")
        elif kind == "ddΛ":
            middle = self.image_into("d", k, k - 1) + self.image_into("dΛ", k, k + 1)
            last = self.image("ddΛ*", k)
            labels = ("harmonic", "im d + im dΛ", "im (ddΛ)*")
        elif kind == "d∩dΛ":
            middle = self.closed_exact("d∩dΛ", k)[1]
            last = self.image_into("d*", k, k + 1) + self.image_into("dΛ*", k, k - 1)
            labels = ("harmonic", "d Ω̃ + dΛ Ω̃", "im d* + im dΛ*")
        elif kind == "d":
            middle = self.image_into("d", k, k - 1)
            last = self.image_into("d*", k, k + 1)
            labels = ("harmonic", "im d", "im d*")
        elif kind == "dΛ":
            middle = self.image_into("dΛ", k, k + 1)
            last = self.image_into("dΛ*", k, k - 1)
            labels = ("harmonic", "im dΛ", "im dΛ*")
        else:
            raise ValueError(f"no Hodge decomposition implemented for {kind}")
        spaces = list(zip(labels, (harm, middle, last)))
        entries = []
        for i in range(3):
            for j in range(i + 1, 3):
                (la, a), (lb, b) = spaces[i], spaces[j]
                ok = all(self.hodge.inner(self.to_form(k, u), self.to_form(k, v)) == 0
                         for u in a.basis for v in b.basis)
                entries.append((f"{la} ⟂ {lb}", ok))
        total = sum(s.dimension for _, s in spaces)
        entries.append((f"dimensions {' + '.join(str(s.dimension) for _, s in spaces)} = {self.size(k)}",
                        total == self.size(k)))
        return HodgeDecompositionReport(kind, k, entries, {l: s.dimension for l, s in spaces})


@dataclass
class HodgeDecompositionReport:
    kind: str
    degree: int
    entries: list
    dimensions: dict

    @property
    def ok(self):
        return all(ok for _, ok in self.entries)


def _reduce(v, space):
    v = list(v)
    for row, p in zip(space.basis, space.pivots):
        if v[p] != 0:
            f = v[p]
            v = [x - f * y for x, y in zip(v, row)]
    return v


def _combine(coeffs, vectors):
    out = [Fraction(0)] * len(vectors[0])
    for c, v in zip(coeffs, vectors):
        if c:
            out = [x + c * y for x, y in zip(out, v)]
    return out


def span_matches(engine, kind, k, forms):
    """True when ``forms`` is a basis of the class space of ``kind`` at degree k.

    Each form must be closed, the forms must be independent modulo exact
    forms and their span together with the exact subspace must be the
    closed subspace.
    """
    closed, exact = engine.closed_exact(kind, k)
    vecs = [engine.to_vector(f, k) for f in forms]
    if not all(closed.contains(v) for v in vecs):
        return False
    total = Subspace(closed.n, exact.basis + vecs)
    return total == closed and total.dimension - exact.dimension == len(forms)


def class_of_in(engine, kind, k, form):
    """Coordinates-free test: is ``form`` a nonzero class of the given kind?"""
    closed, exact = engine.closed_exact(kind, k)
    v = engine.to_vector(form, k)
    return closed.contains(v) and not exact.contains(v)
