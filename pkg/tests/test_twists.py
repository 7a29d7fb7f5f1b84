from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import factorint

from fermat237.covariants import INF, covariants, syzygy_check
from fermat237.forms import TernaryForm
from fermat237.twists import (
    EllipticCoeffs,
    case1_reduce,
    catalog,
    curve,
    elliptic_fixture,
    enumerate_case1,
    format_j,
    iter_fixture_quartics,
    load_catalog,
    parse_j,
    x_e7_minus_quartic,
    x_e7_quartic,
)


def _squarefree(n):
    return all(e == 1 for e in factorint(n).values())


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5000), st.integers(1, 500), st.integers(1, 500))
def test_case1_reduce_invariants(a, b, c):
    t = case1_reduce(a, b, c)
    assert all(_squarefree(v) for v in t)
    assert t.a >= t.b and t.a >= t.c
    assert case1_reduce(*t) == t


def test_case1_reduce_example():
    # 4 x^3 y + y^3 z + z^3 x: x -> x/2 style rescaling moves the square
    t = case1_reduce(4, 1, 1)
    assert t == case1_reduce(1, 2, 1)


def test_enumerate_case1_support():
    twists = enumerate_case1()
    assert len(set(twists)) == len(twists)
    for t in twists:
        for v in t:
            assert set(factorint(v)) <= {2, 3, 7}
    labels = {tuple(t) for t in twists}
    for label in ("C1", "C2", "C3"):
        f = catalog()[label].form
        coeffs = (f.coeff((3, 1, 0)), f.coeff((0, 3, 1)), f.coeff((1, 0, 3)))
        assert tuple(case1_reduce(*map(int, coeffs))) in labels


def test_catalog_shape():
    cat = catalog()
    assert list(cat) == [f"C{i}" for i in range(1, 11)]
    assert sum(len(c.points) for c in cat.values()) == 33
    for entry in cat.values():
        for kp in entry.points:
            assert entry.form(*kp.point) == 0


def test_catalog_version_required():
    with pytest.raises(ValueError):
        load_catalog("curve C1 1 x^3*y + y^3*z + z^3*x\n")


def test_parse_j_forms():
    assert parse_j("inf") is INF
    assert parse_j("-7^4*2^-1*3^-1") == parse_j("-2401/6")
    assert format_j(parse_j("2^6*3^3")) == "1728"


def test_curve_resolves_labels_and_polys():
    assert curve("c5") == catalog()["C5"].form
    assert curve("x^4 + y^4 + z^4").degree == 4


def test_elliptic_fixture_quartics():
    assert len(elliptic_fixture()) == 13
    for name, f in iter_fixture_quartics():
        assert covariants(f).psi0 != 0, name
        assert syzygy_check(f), name


@pytest.mark.parametrize(
    "a,b,text",
    [
        (0, 1, "7*x^3*z + 3*x^2*y^2 - 6*x*y*z^2 + 2*y^3*z - 4*z^4"),
        # -5ab x z^3 vanishes at b = 0
        (1, 0, "x^4 + 3*x^2*y^2 - 3*x^2*z^2 + 2*y^3*z + 3*y^2*z^2 + 2*y*z^3"),
        (0, -1, "-7*x^3*z + 3*x^2*y^2 + 6*x*y*z^2 + 2*y^3*z - 4*z^4"),
    ],
)
def test_x_e7_substitutions(a, b, text):
    assert x_e7_quartic(EllipticCoeffs(a, b)) == TernaryForm.parse(text)


def test_x_e7_minus_substitutions():
    assert x_e7_minus_quartic(EllipticCoeffs(0, 1)) == TernaryForm.parse(
        "3*z^4 - 36*x^2*y^2 + 18*x*y*z^2 - 12*x^3*z - 42*y^3*z"
    )
    # every term of the general formula that survives b = 0, including -8a y z^3
    assert x_e7_minus_quartic(EllipticCoeffs(1, 0)) == TernaryForm.parse(
        "-x^4 + 3*y^4 + 3*z^4 + 6*y^2*z^2 + 6*x^2*z^2 - 6*x^2*y^2 - 8*y^3*z - 8*y*z^3"
    )
    assert syzygy_check(x_e7_minus_quartic(EllipticCoeffs(-1, 1)))


def test_case1_contains_catalog_and_klein():
    found = {tuple(t) for t in enumerate_case1()}
    assert {(6, 1, 1), (3, 1, 2), (3, 2, 1), (1, 1, 1)} <= found


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3000), st.integers(1, 300), st.integers(1, 300))
def test_case1_reduce_never_grows(a, b, c):
    t = case1_reduce(a, b, c)
    assert t.a * t.b * t.c <= a * b * c


def test_c8_points():
    assert [str(kp.point) for kp in catalog()["C8"].points] == ["0:0:1", "2:-1:0"]
    assert all(kp.solution is None for kp in catalog()["C5"].points)
