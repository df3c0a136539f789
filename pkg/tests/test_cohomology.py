import random
from math import comb

import pytest
import sympy

from sympcoh.cohomology import (ALL_KINDS, KINDS, PRIMITIVE_KINDS, CohomologyEngine, class_of_in,
                                normalize_kind, span_matches)
from sympcoh.errors import DegreeError
from sympcoh.exterior import Form, parse_form
from sympcoh.linalg import rank
from sympcoh.metric import ELLIPTIC_KINDS, HodgeContext
from sympcoh.model import InvariantModel, builtin_model, parse_model, validate_model

# A 6-dimensional nilmanifold with d e5 = e12, d e6 = e13 and a closed omega.
SIX = """# symp-model v1
name six
dim 6
d e5 = e1^e2
d e6 = e1^e3
omega = e1^e4 + e2^e6 + e3^e5
"""


def P(text, dim=4):
    return parse_form(text, dim)


@pytest.fixture(scope="module")
def six():
    m = parse_model(SIX)
    assert validate_model(m).ok
    return CohomologyEngine(m, HodgeContext(m))


def test_kind_aliases():
    assert normalize_kind("dL") == "dΛ"
    assert normalize_kind("d+dL") == "d+dΛ"
    assert normalize_kind("ddL") == "ddΛ"
    assert normalize_kind("d^dL") == "d∩dΛ"
    assert normalize_kind("p:d+dL") == "PH:d+dΛ"
    with pytest.raises(ValueError):
        normalize_kind("dd")


def test_operator_matrices(kt_engine, torus2_engine):
    for k in range(5):
        assert rank(torus2_engine.matrix("d", k)) == 0
    assert rank(kt_engine.matrix("d", 1)) == 1
    # L: forms of degree 1 -> degree 3 is an isomorphism in dimension 4
    assert rank(kt_engine.matrix("L", 1)) == 4


def test_kernel_intersection(kt_engine):
    both = kt_engine.kernel("d", 1).intersect(kt_engine.kernel("dΛ", 1))
    assert both.dimension == 3
    z = kt_engine.kernel("d", 2)
    assert z.intersect(z) == z


@pytest.mark.parametrize("kind", ALL_KINDS)
def test_torus_cohomology_is_binomial(kind):
    for n in (1, 2, 3):
        e = CohomologyEngine(builtin_model(f"torus{n}"))
        top = n if kind.startswith("PH:") else 2 * n
        for k in range(top + 1):
            expected = comb(2 * n, k)
            if kind.startswith("PH:"):
                expected -= comb(2 * n, k - 2) if k >= 2 else 0
            assert e.dimension(kind, k) == expected, (n, k)


def _rank_nullity_oracle(e, kind, k):
    """Cohomology dimension from sympy ranks of stacked operator matrices."""
    def M(op, j):
        rows = e.matrix(op, j)
        return sympy.Matrix(rows) if rows and rows[0] else sympy.zeros(max(len(rows), 1), max(e.size(j), 1))

    size = e.size(k)

    def nullity(*ops):
        blocks = [M(op, k) for op in ops if e.size(e.target_degree(op, k)) and size]
        if not blocks:
            return size
        return size - sympy.Matrix.vstack(*blocks).rank()

    def image_dim(*pairs):
        cols = [M(op, j) for op, j in pairs if 0 <= j <= e.dim and e.size(j)]
        if not cols or not size:
            return 0
        return sympy.Matrix.hstack(*cols).rank()

    if kind == "d":
        return nullity("d") - image_dim(("d", k - 1))
    if kind == "dΛ":
        return nullity("dΛ") - image_dim(("dΛ", k + 1))
    if kind == "d+dΛ":
        return nullity("d", "dΛ") - image_dim(("ddΛ", k))
    if kind == "ddΛ":
        return nullity("ddΛ") - image_dim(("d", k - 1), ("dΛ", k + 1))
    raise ValueError(kind)


@pytest.mark.parametrize("kind", ["d", "dΛ", "d+dΛ", "ddΛ"])
def test_dimensions_match_rank_nullity_oracle(kt_engine, six, kind):
    for e in (kt_engine, six):
        for k in range(e.dim + 1):
            assert e.dimension(kind, k) == _rank_nullity_oracle(e, kind, k), (e.model.name, k)


def test_six_dimensional_dualities(six):
    dim = six.dim
    for k in range(dim + 1):
        assert six.dimension("d", k) == six.dimension("d", dim - k)
        assert six.dimension("dΛ", k) == six.dimension("d", dim - k)
        assert six.dimension("d+dΛ", k) == six.dimension("ddΛ", dim - k)
        assert six.dimension("d∩dΛ", k) == six.dimension("d∩dΛ", dim - k)


def test_relabelling_the_frame_preserves_dimensions(kt_engine):
    rng = random.Random(1)
    kt = builtin_model("kt")
    for _ in range(3):
        perm = list(range(1, 5))
        rng.shuffle(perm)

        def relabel(a):
            return sum((Form.blade(4, tuple(perm[i - 1] for i in b), c) for b, c in a.terms.items()),
                       Form.zero(4))

        d_one = [None] * 4
        for i in range(4):
            d_one[perm[i] - 1] = relabel(kt.d_one[i])
        m = InvariantModel("kt-relabelled", 4, d_one, relabel(kt.omega))
        assert validate_model(m).ok
        e = CohomologyEngine(m)
        for kind in ALL_KINDS:
            top = 2 if kind.startswith("PH:") else 4
            assert [e.dimension(kind, k) for k in range(top + 1)] == \
                [kt_engine.dimension(kind, k) for k in range(top + 1)]


def test_class_representatives(kt_engine):
    omega = builtin_model("kt").omega
    assert span_matches(kt_engine, "d+dΛ", 2, [omega, P("e1^e2 - e3^e4"), P("e1^e3"), P("e2^e4"),
                                                  P("e2^e3")])
    assert span_matches(kt_engine, "d∩dΛ", 1, [P("e1"), P("e2")])
    assert span_matches(kt_engine, "ddΛ", 1, [P("e1"), P("e2"), P("e4")])
    assert not span_matches(kt_engine, "d", 1, [P("e1"), P("e2"), P("e4")])
    assert not span_matches(kt_engine, "d", 1, [P("e1"), P("e2")])
    assert class_of_in(kt_engine, "d+dΛ", 2, P("e2^e3"))
    assert not class_of_in(kt_engine, "d", 2, P("e2^e3"))


def test_primitive_cohomology(kt_engine, torus2_engine):
    assert [kt_engine.dimension("PH:d+dΛ", k) for k in range(3)] == [1, 3, 4]
    assert [kt_engine.dimension("PH:ddΛ", k) for k in range(3)] == [1, 3, 4]
    assert [kt_engine.dimension("PH:d∩dΛ", k) for k in range(3)] == [1, 2, 3]
    assert [kt_engine.dimension("PH:d", k) for k in range(3)] == [1, 3, 3]
    assert torus2_engine.dimension("PH:d+dΛ", 1) == 4
    with pytest.raises(DegreeError):
        kt_engine.dimension("PH:d", 3)


def test_harmonic_spaces_match_cohomology(kt_engine, six):
    for e in (kt_engine, six):
        for kind in ALL_KINDS:
            top = e.n if kind.startswith("PH:") else e.dim
            for k in range(top + 1):
                space = e.harmonic_space(kind, k)
                if kind == "PH:d":
                    assert space is None
                    continue
                assert space.dimension == e.dimension(kind, k), (e.model.name, kind, k)
                assert e.laplacian_kernel(kind, k) == space
                if kind.replace("PH:", "") in ELLIPTIC_KINDS:
                    assert e.laplacian_kernel(kind, k, "D") == space
                else:
                    assert e.laplacian_kernel(kind, k, "D") is None


def test_harmonic_representatives_are_classes(kt_engine):
    for kind in KINDS:
        for k in range(5):
            result = kt_engine.cohomology(kind, k, harmonic=True)
            assert span_matches(kt_engine, kind, k, result.harmonic)


def test_hodge_decompositions(kt_engine, six):
    for e in (kt_engine, six):
        for kind in KINDS:
            for k in range(e.dim + 1):
                report = e.hodge_decomposition_check(kind, k)
                assert report.ok, (e.model.name, kind, k, report.entries)


def test_lambda_independence(kt_engine):
    kt = builtin_model("kt")
    h = HodgeContext(kt)
    for lam in (7, "1/3"):
        other = CohomologyEngine(kt, h, lam)
        for kind in KINDS + PRIMITIVE_KINDS[:3]:
            top = 2 if kind.startswith("PH:") else 4
            for k in range(top + 1):
                assert other.laplacian_kernel(kind, k) == kt_engine.laplacian_kernel(kind, k)


def test_result_serialisation(kt_engine):
    r = kt_engine.cohomology("d∩dΛ", 1, harmonic=True)
    assert r.to_dict() == {"kind": "d∩dΛ", "degree": 1, "dim": 2, "basis": ["e1", "e2"],
                           "harmonicBasis": ["e1", "e2"]}
    assert "harmonicBasis" not in kt_engine.cohomology("d", 0).to_dict()
