"""Lefschetz operators, d^Λ, primitive forms and the symplectic star.

Everything here works for any backend that supplies an exterior derivative
on forms whose symplectic form has constant coefficients in the frame (a
Darboux chart or an invariant coframe).  Under that assumption L, Λ, H,
the Lefschetz projections and *_s act blade by blade with rational
coefficients, so they are computed once per blade and extended linearly
over whatever coefficient ring the form uses.
"""

from fractions import Fraction
from itertools import permutations
from math import factorial

from . import linalg
from .errors import DegreeError, DimensionMismatch, NotPrimitiveError
from .exterior import (Form, basis_blades, blade_wedge, contract, homogeneous_parts,
                       power, top_blade, wedge)
from .rings import QQ


def two_form_matrix(omega):
    """Antisymmetric matrix ``w_ij = omega(d_i, d_j)`` of a rational 2-form."""
    n = omega.dim
    m = linalg.zeros(n, n)
    for blade, c in omega.terms.items():
        if len(blade) != 2:
            raise DegreeError("expected a 2-form")
        i, j = blade
        m[i - 1][j - 1] = Fraction(c)
        m[j - 1][i - 1] = -Fraction(c)
    return m


def matrix_two_form(m):
    dim = len(m)
    return Form(dim, {(i + 1, j + 1): m[i][j] for i in range(dim) for j in range(i + 1, dim)})


def induced_minor(matrix, rows, cols):
    """Determinant of the ``rows x cols`` submatrix (1-based index tuples)."""
    if not rows:
        return Fraction(1)
    return linalg.determinant([[matrix[i - 1][j - 1] for j in cols] for i in rows])


def star_from_pairing(dim, k, bilinear, volume):
    """Blade images of the star defined by ``A ^ *B = bilinear(A, B) volume``.

    ``bilinear(I, J)`` gives the pairing on degree-k blades and ``volume``
    is a rational top form.  The wedge pairing between degrees k and
    dim - k is a signed permutation of blades, so the system is solved
    directly: the complement blade of ``I`` carries the coefficient that
    matches row ``I``.
    """
    top = top_blade(dim)
    vol = volume.coeff(top)
    blades = basis_blades(dim, k)
    images = {}
    for J in blades:
        terms = {}
        for I in blades:
            g = bilinear(I, J)
            if g == 0:
                continue
            comp = tuple(i for i in top if i not in I)
            sign, _ = blade_wedge(I, comp)
            terms[comp] = terms.get(comp, 0) + sign * g * vol
        images[J] = Form(dim, terms)
    return images


class SymplecticContext:
    """A coframe of dimension 2n with a constant symplectic form.

    ``derivative`` is the backend's exterior derivative.  ``ring`` is the
    coefficient ring of forms the derivative accepts.  With ``checked`` set,
    primitivity and the symplectic star are evaluated along two independent
    routes and compared.
    """

    def __init__(self, omega, derivative, ring=QQ, checked=False):
        if omega.dim % 2:
            raise DimensionMismatch("symplectic dimension must be even")
        self.dim = omega.dim
        self.n = omega.dim // 2
        self.ring = ring
        self.omega_rational = omega
        self.omega = omega if ring is QQ else omega.map_coefficients(ring.convert, ring)
        self.derivative = derivative
        self.checked = checked
        self.omega_matrix = two_form_matrix(omega)
        try:
            self.omega_inverse = linalg.inverse(self.omega_matrix)
        except ValueError:
            raise DegreeError("symplectic form is degenerate") from None
        self._inv_pairs = [(i + 1, j + 1, self.omega_inverse[i][j])
                           for i in range(self.dim) for j in range(self.dim)
                           if self.omega_inverse[i][j] != 0]
        self._volume = power(omega, self.n) / factorial(self.n)
        self._cache = {}
        if self.Lambda(self.L(self.unit())) != self.unit().scale(self.n):
            raise AssertionError("Lambda L (1) != n")

    # -- helpers ------------------------------------------------------
    def unit(self):
        return Form.scalar(self.dim, 1, self.ring)

    def zero(self):
        return Form.zero(self.dim, self.ring)

    def lift(self, rational_form):
        """A rational form viewed over this context's ring."""
        if self.ring is QQ:
            return rational_form
        return rational_form.map_coefficients(self.ring.convert, self.ring)

    @property
    def volume_form(self):
        """``omega^n / n!`` as a rational form."""
        return self._volume

    def blade_linear(self, name, blade_image, a):
        """Extend a per-blade rational map linearly over ``a``'s coefficients."""
        cache = self._cache.setdefault(name, {})
        out = {}
        for blade, c in a.terms.items():
            img = cache.get(blade)
            if img is None:
                img = blade_image(blade)
                cache[blade] = img
            for b2, v in img.terms.items():
                term = c * v
                out[b2] = out[b2] + term if b2 in out else term
        return Form(self.dim, out, a.ring)

    # -- sl(2) triple -------------------------------------------------
    def L(self, a, times=1):
        omega = self.omega if a.ring == self.ring else self._omega_in(a.ring)
        for _ in range(times):
            a = wedge(omega, a)
        return a

    def _omega_in(self, ring):
        return self.omega_rational.map_coefficients(ring.convert, ring)

    def Lambda(self, a, times=1):
        """``1/2 (omega^-1)^{ij} i_i i_j``, applying i_j first."""
        for _ in range(times):
            out = Form.zero(self.dim, a.ring)
            for i, j, w in self._inv_pairs:
                t = contract(i, contract(j, a))
                if t:
                    out = out + t.scale(w / 2)
            a = out
        return a

    def H(self, a):
        """Degree counting operator: scales the degree-k part by n - k."""
        return Form(self.dim, {b: (self.n - len(b)) * c for b, c in a.terms.items()}, a.ring)

    def H_inverse(self, a):
        for b in a.terms:
            if len(b) == self.n:
                raise DegreeError("H is not invertible on degree n")
        return Form(self.dim, {b: Fraction(1, self.n - len(b)) * c for b, c in a.terms.items()},
                    a.ring)

    # -- differential operators ---------------------------------------
    def d(self, a):
        return self.derivative(a)

    def d_lambda(self, a):
        """``d Λ - Λ d``; lowers degree by one."""
        return self.d(self.Lambda(a)) - self.Lambda(self.d(a))

    def dd_lambda(self, a):
        return self.d(self.d_lambda(a))

    # -- primitivity and the Lefschetz decomposition -------------------
    def is_primitive(self, b):
        if not b:
            return True
        k = b.degree
        if k > self.n:
            return False
        lam = not self.Lambda(b)
        if self.checked:
            alt = not self.L(b, self.n - k + 1)
            if alt != lam:
                raise AssertionError(f"primitivity tests disagree on {b}")
        return lam

    def primitive_basis(self, s):
        """Rational basis of the primitive s-forms (empty for s > n)."""
        key = ("primitive_basis", s)
        if key not in self._cache:
            if s < 0 or s > self.n:
                basis = []
            else:
                src = basis_blades(self.dim, s)
                tgt = basis_blades(self.dim, s - 2)
                m = self._blade_matrix(self.Lambda, src, tgt)
                basis = [Form.from_vector(self.dim, s, v) for v in linalg.nullspace(m, len(src))]
            self._cache[key] = basis
        return self._cache[key]

    def _blade_matrix(self, op, src, tgt):
        index = {b: i for i, b in enumerate(tgt)}
        m = linalg.zeros(len(tgt), len(src))
        for col, blade in enumerate(src):
            img = op(Form(self.dim, {blade: Fraction(1)}))
            for b, c in img.terms.items():
                m[index[b]][col] = Fraction(c)
        return m

    def _decomposition_solver(self, k):
        """Inverse of ``(B_{k-2r})_r -> sum L^r B_{k-2r} / r!`` at degree k."""
        key = ("decomp", k)
        if key in self._cache:
            return self._cache[key]
        rs = [r for r in range(max(k - self.n, 0), k // 2 + 1)]
        columns, labels = [], []
        blades = basis_blades(self.dim, k)
        for r in rs:
            for idx, b in enumerate(self.primitive_basis(k - 2 * r)):
                img = self.L(b, r) / factorial(r)
                columns.append(img.to_vector(k))
                labels.append((r, idx))
        m = linalg.transpose(columns) if columns else []
        if len(columns) != len(blades):
            raise AssertionError("Lefschetz components do not match the form space")
        inv = linalg.inverse(m) if blades else []
        self._cache[key] = (rs, labels, inv)
        return self._cache[key]

    def _blade_components(self, blade):
        k = len(blade)
        rs, labels, inv = self._decomposition_solver(k)
        col = basis_blades(self.dim, k).index(blade)
        comps = {r: Form.zero(self.dim) for r in rs}
        for row, (r, idx) in enumerate(labels):
            c = inv[row][col]
            if c:
                comps[r] = comps[r] + self.primitive_basis(k - 2 * r)[idx].scale(c)
        return comps

    def decompose(self, a):
        """Lefschetz components ``{r: B_{k-2r}}`` of a homogeneous form.

        Every admissible r appears (possibly with a zero form), so that
        ``recompose(decompose(a)) == a``.
        """
        if not a.is_homogeneous():
            raise DegreeError("Lefschetz decomposition needs a homogeneous form")
        k = a.degree
        if k is None:
            return LefschetzComponents(self, 0, {0: self.zero()})
        rs, _, _ = self._decomposition_solver(k)
        comps = {}
        for r in rs:
            comps[r] = self.blade_linear(("component", r), lambda b, r=r: self._blade_components(b)[r], a)
        return LefschetzComponents(self, k, comps)

    def recompose(self, components):
        out = None
        for r, b in components.items():
            if b and not self.is_primitive(b):
                raise NotPrimitiveError(f"component r={r} is not primitive")
            term = self.L(b, r) / factorial(r)
            out = term if out is None else out + term
        return out if out is not None else self.zero()

    def primitive_part(self, a):
        """The r = 0 Lefschetz component of a homogeneous form."""
        return self.decompose(a)[0] if a else a

    # -- symplectic star ----------------------------------------------
    def star_s(self, a):
        """Symplectic star via its action on Lefschetz components.

        ``*_s L^r B_s / r! = (-1)^{s(s+1)/2} L^{n-s-r} B_s / (n-s-r)!``.  In
        checked mode the result is compared with the pairing definition.
        """
        out = self.zero() if a.ring == self.ring else Form.zero(self.dim, a.ring)
        for k, part in homogeneous_parts(a).items():
            out = out + self.blade_linear("star_s", self._star_s_blade, part)
        if self.checked:
            alt = self.star_s_pairing(a)
            if alt != out:
                raise AssertionError(f"symplectic star routes disagree on {a}")
        return out

    def _star_s_blade(self, blade):
        k = len(blade)
        comps = self._blade_components(blade)
        out = Form.zero(self.dim)
        for r, b in comps.items():
            if not b:
                continue
            s = k - 2 * r
            sign = -1 if (s * (s + 1) // 2) % 2 else 1
            m = self.n - s - r
            out = out + self.L(b, m).scale(Fraction(sign, factorial(m)))
        return out

    def star_s_pairing(self, a):
        """Symplectic star from ``A ^ *_s A' = (omega^-1)^k(A, A') omega^n/n!``."""
        out = Form.zero(self.dim, a.ring)
        for k, part in homogeneous_parts(a).items():
            if ("star_s_pairing", k) not in self._cache:
                w = self.omega_inverse
                self._cache[("star_s_pairing", k)] = star_from_pairing(
                    self.dim, k, lambda I, J: induced_minor(w, I, J), self._volume)
            images = self._cache[("star_s_pairing", k)]
            out = out + self.blade_linear(("star_s_pairing_k", k), lambda b: images[b], part)
        return out

    def symplectic_pairing(self, a, b):
        """``(omega^-1)^k(A, A')`` for homogeneous rational forms of equal degree."""
        total = Fraction(0)
        for I, ca in a.terms.items():
            for J, cb in b.terms.items():
                if len(I) == len(J):
                    total += ca * cb * induced_minor(self.omega_inverse, I, J)
        return total


class LefschetzComponents(dict):
    """``{r: B_{k-2r}}`` with the source degree ``k`` attached."""

    def __init__(self, ctx, degree, comps):
        super().__init__(sorted(comps.items()))
        self.degree = degree
        self.ctx = ctx

    def nonzero(self):
        return {r: b for r, b in self.items() if b}

    def recompose(self):
        return self.ctx.recompose(self)

    def describe(self):
        lines = []
        for r, b in self.items():
            lines.append(f"r={r}: B_{self.degree - 2 * r} = {b}")
        return "\n".join(lines)


def commutator(f, g):
    """``[f, g] = f g - g f`` as a callable."""
    return lambda a: f(g(a)) - g(f(a))


def all_permutation_sign(perm):
    inv = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
    return -1 if inv % 2 else 1


def symplectic_pairing_bruteforce(omega_inverse, a_components, b_components, k):
    """``1/k! W^{i1 j1}...W^{ik jk} A_{i...} B_{j...}`` summed over all index tuples.

    ``a_components`` maps sorted blades to coefficients; the antisymmetric
    tensor components are reconstructed with permutation signs.  Used as an
    independent oracle for the determinant formula.
    """
    def tensor(comp):
        t = {}
        for blade, c in comp.items():
            for perm in permutations(range(k)):
                idx = tuple(blade[p] for p in perm)
                t[idx] = all_permutation_sign(perm) * Fraction(c)
        return t
    ta, tb = tensor(a_components), tensor(b_components)
    total = Fraction(0)
    for I, ca in ta.items():
        for J, cb in tb.items():
            prod = Fraction(1)
            for i, j in zip(I, J):
                prod *= omega_inverse[i - 1][j - 1]
                if prod == 0:
                    break
            total += prod * ca * cb
    return total / factorial(k)
