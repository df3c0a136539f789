"""Invariant forms on a nilmanifold or solvmanifold.

A model is a coframe ``e_1..e_{2n}`` together with ``d e_i`` (invariant
2-forms, i.e. structure constants) and an invariant symplectic form.  The
exterior derivative extends to all invariant forms by the Leibniz rule,
giving the finite Chevalley-Eilenberg complex on which every cohomology in
this package is computed.

Results are cohomologies of the invariant complex; for the new
symplectic cohomologies no comparison with the full manifold is claimed.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from hashlib import sha256

from .errors import DimensionMismatch, ModelError, ParseError
from .exterior import Form, basis_blades, format_form, parse_form, power, top_blade, wedge
from .rings import QQ, format_rational
from .symplectic import SymplecticContext, two_form_matrix

HEADER = "# symp-model v1"


class InvariantModel:
    def __init__(self, name, dim, d_one, omega, volume=Fraction(1), j_matrix=None, source=None):
        if dim % 2:
            raise ModelError("model dimension must be even")
        d_one = list(d_one) + [Form.zero(dim)] * (dim - len(d_one))
        for f in d_one:
            if f.dim != dim or (f and f.degree != 2):
                raise ModelError("each d e_i must be an invariant 2-form in the model dimension")
        if omega.dim != dim or (omega and omega.degree != 2):
            raise ModelError("omega must be a 2-form in the model dimension")
        self.name = name
        self.dim = dim
        self.n = dim // 2
        self.d_one = tuple(d_one)
        self.omega = omega
        self.volume = Fraction(volume)
        self.j_matrix = j_matrix
        self.source = source
        self._blade_d = {}
        self._contexts = {}

    def exterior_derivative(self, a):
        """Leibniz extension of ``d e_i`` to invariant forms of any ring."""
        if a.dim != self.dim:
            raise DimensionMismatch(f"form dimension {a.dim} != model dimension {self.dim}")
        out = {}
        for blade, c in a.terms.items():
            img = self._blade_d.get(blade)
            if img is None:
                img = self._d_blade(blade)
                self._blade_d[blade] = img
            for b2, v in img.terms.items():
                term = c * v
                out[b2] = out[b2] + term if b2 in out else term
        return Form(self.dim, out, a.ring)

    d = exterior_derivative

    def _d_blade(self, blade):
        out = Form.zero(self.dim)
        for pos, i in enumerate(blade):
            left = Form.blade(self.dim, blade[:pos])
            right = Form.blade(self.dim, blade[pos + 1:])
            term = wedge(wedge(left, self.d_one[i - 1]), right)
            out = out + (term if pos % 2 == 0 else -term)
        return out

    def context(self, checked=False):
        """The symplectic context of this model (cached per ``checked``)."""
        if checked not in self._contexts:
            self._contexts[checked] = SymplecticContext(self.omega, self.exterior_derivative,
                                                        QQ, checked=checked)
        return self._contexts[checked]

    def form(self, text):
        return parse_form(text, self.dim)

    def basis(self, k):
        return [Form.blade(self.dim, b) for b in basis_blades(self.dim, k)]

    def to_text(self):
        lines = [HEADER, f"name {self.name}", f"dim {self.dim}"]
        for i, f in enumerate(self.d_one, start=1):
            if f:
                lines.append(f"d e{i} = {format_form(f)}")
        lines.append(f"omega = {format_form(self.omega)}")
        if self.volume != 1:
            lines.append(f"volume = {format_rational(self.volume)}")
        if self.j_matrix is not None:
            rows = "; ".join(" ".join(format_rational(x) for x in row) for row in self.j_matrix)
            lines.append(f"J = {rows}")
        return "\n".join(lines) + "\n"

    @cached_property
    def input_hash(self):
        text = self.source if self.source is not None else self.to_text()
        return sha256(text.encode()).hexdigest()

    def __repr__(self):
        return f"InvariantModel({self.name!r}, dim={self.dim})"


def integrate_top(m, a):
    """Top-blade coefficient of ``a`` times the model's volume normalization."""
    return Fraction(a.coeff(top_blade(m.dim))) * m.volume


# -- validation -------------------------------------------------------------

@dataclass
class CheckEntry:
    name: str
    passed: bool
    witness: str = ""


@dataclass
class ValidationReport:
    model: str
    entries: list = field(default_factory=list)

    @property
    def ok(self):
        return all(e.passed for e in self.entries)

    def failures(self):
        return [e for e in self.entries if not e.passed]

    def __str__(self):
        lines = [f"model {self.model}: {'valid' if self.ok else 'INVALID'}"]
        for e in self.entries:
            mark = "pass" if e.passed else "FAIL"
            lines.append(f"  [{mark}] {e.name}" + (f"  witness: {e.witness}" if e.witness else ""))
        return "\n".join(lines)


def validate_model(m):
    """Check d^2 = 0 on the coframe, d omega = 0 and omega^n != 0."""
    report = ValidationReport(m.name)
    bad = []
    for i in range(1, m.dim + 1):
        dd = m.d(m.d(Form.blade(m.dim, (i,))))
        if dd:
            bad.append(f"d(d e{i}) = {dd}")
    report.entries.append(CheckEntry("d∘d = 0 on every e_i (Jacobi identity)", not bad, "; ".join(bad)))
    d_omega = m.d(m.omega)
    report.entries.append(CheckEntry("d omega = 0", not d_omega,
                                     f"d omega = {d_omega}" if d_omega else ""))
    top = power(m.omega, m.n)
    report.entries.append(CheckEntry("omega^n != 0 (nondegenerate)", bool(top),
                                     f"omega^{m.n} = 0" if not top else ""))
    if top:
        ctx = m.context()
        unit = Form.scalar(m.dim, 1)
        ok = ctx.Lambda(ctx.L(unit)) == unit.scale(m.n)
        report.entries.append(CheckEntry("Lambda L (1) = n", ok))
    return report


# -- built-in models --------------------------------------------------------

def _kodaira_thurston():
    d_one = [Form.zero(4)] * 3 + [Form.blade(4, (2, 3))]
    omega = Form.blade(4, (1, 2)) + Form.blade(4, (3, 4))
    return InvariantModel("kt", 4, d_one, omega)


def _torus(n):
    dim = 2 * n
    omega = Form.zero(dim)
    for i in range(n):
        omega = omega + Form.blade(dim, (2 * i + 1, 2 * i + 2))
    return InvariantModel(f"torus{n}", dim, [], omega)


def builtin_names():
    return ["kt", "torus1", "torus2", "torus3"]


def builtin_model(name):
    """``kt`` (Kodaira-Thurston) or ``torus{n}`` (flat 2n-torus)."""
    if name == "kt":
        return _kodaira_thurston()
    if name.startswith("torus"):
        suffix = name[len("torus"):]
        if suffix.isdigit() and int(suffix) >= 1:
            return _torus(int(suffix))
    raise ModelError(f"unknown built-in model {name!r}; known: {', '.join(builtin_names())} (torusN for any N)")


BUILTIN_DESCRIPTIONS = {
    "kt": "Kodaira-Thurston nilmanifold: d e4 = e2^e3, omega = e1^e2 + e3^e4",
    "torus1": "flat 2-torus",
    "torus2": "flat 4-torus, omega = e1^e2 + e3^e4",
    "torus3": "flat 6-torus, omega = e1^e2 + e3^e4 + e5^e6",
}


# -- model files ------------------------------------------------------------

def _col(raw, fragment):
    return raw.index(fragment) + 1 if fragment in raw else 1


def parse_model(text, name=None):
    """Parse the ``# symp-model v1`` text format.

    Raises :class:`ParseError` with line and column on malformed input.
    """
    lines = text.splitlines()
    header_seen = False
    dim = None
    d_one = {}
    omega = None
    volume = Fraction(1)
    j_rows = None
    model_name = name
    for lineno, raw in enumerate(lines, start=1):
        stripped = raw.strip()
        if not stripped:
            continue
        if not header_seen:
            if stripped != HEADER:
                raise ParseError(f"expected header {HEADER!r}", lineno, _col(raw, stripped))
            header_seen = True
            continue
        if stripped.startswith("#"):
            continue
        lead = len(raw) - len(raw.lstrip())
        if stripped.startswith("name"):
            rest = stripped[4:].strip()
            if not rest:
                raise ParseError("missing model name", lineno, lead + 5)
            model_name = model_name or rest
            continue
        if stripped.startswith("dim"):
            rest = stripped[3:].strip()
            if not rest.isdigit() or int(rest) < 2 or int(rest) % 2:
                raise ParseError("dim must be a positive even integer", lineno, lead + 4)
            if dim is not None:
                raise ParseError("duplicate dim line", lineno, lead + 1)
            dim = int(rest)
            continue
        if "=" not in stripped:
            raise ParseError("expected 'key = value'", lineno, lead + 1)
        lhs, _, rhs = stripped.partition("=")
        rhs_offset = lead + len(lhs) + 1  # columns before the first character of rhs
        rhs_col = rhs_offset + 1 + (len(rhs) - len(rhs.lstrip()))
        key = lhs.strip()
        if key.startswith("d ") or key.startswith("d\t"):
            if dim is None:
                raise ParseError("'dim' must precede structure equations", lineno, lead + 1)
            target = key[1:].strip()
            if not (target.startswith("e") and target[1:].isdigit()):
                raise ParseError(f"expected 'd e<i>', got {key!r}", lineno, lead + 1)
            idx = int(target[1:])
            if not 1 <= idx <= dim:
                raise ParseError(f"frame index {idx} outside 1..{dim}", lineno,
                                 lead + key.index(target) + 1)
            if idx in d_one:
                raise ParseError(f"duplicate equation for d e{idx}", lineno, lead + 1)
            form = parse_form(rhs, dim, lineno, rhs_offset)
            if form and form.degrees() != [2]:
                raise ParseError(f"d e{idx} must be a 2-form", lineno, rhs_col)
            d_one[idx] = form
        elif key == "omega":
            if dim is None:
                raise ParseError("'dim' must precede omega", lineno, lead + 1)
            omega = parse_form(rhs, dim, lineno, rhs_offset)
            if omega and omega.degrees() != [2]:
                raise ParseError("omega must be a 2-form", lineno, rhs_col)
        elif key == "volume":
            try:
                volume = Fraction(rhs.strip())
            except (ValueError, ZeroDivisionError):
                raise ParseError("volume must be a rational p/q", lineno, rhs_col) from None
            if volume <= 0:
                raise ParseError("volume must be positive", lineno, rhs_col)
        elif key == "J":
            if dim is None:
                raise ParseError("'dim' must precede J", lineno, lead + 1)
            rows = [r for r in rhs.split(";")]
            if len(rows) != dim:
                raise ParseError(f"J needs {dim} rows", lineno, rhs_col)
            j_rows = []
            for r in rows:
                entries = r.replace(",", " ").split()
                if len(entries) != dim:
                    raise ParseError(f"J rows need {dim} entries", lineno, _col(raw, r.strip() or ";"))
                try:
                    j_rows.append([Fraction(x) for x in entries])
                except (ValueError, ZeroDivisionError):
                    raise ParseError("J entries must be rationals", lineno, _col(raw, r.strip())) from None
        else:
            raise ParseError(f"unknown key {key!r}", lineno, lead + 1)
    if not header_seen:
        raise ParseError(f"missing header {HEADER!r}", 1, 1)
    if dim is None:
        raise ParseError("missing 'dim' line", len(lines) or 1, 1)
    if omega is None:
        raise ParseError("missing 'omega' line", len(lines) or 1, 1)
    d_list = [d_one.get(i, Form.zero(dim)) for i in range(1, dim + 1)]
    return InvariantModel(model_name or "model", dim, d_list, omega, volume, j_rows, source=text)


def load_model(path):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    stem = str(path).rsplit("/", 1)[-1].rsplit(".", 1)[0]
    return parse_model(text, name=None) if "\nname " in "\n" + text else parse_model(text, name=stem)


def omega_matrix(m):
    return two_form_matrix(m.omega)
