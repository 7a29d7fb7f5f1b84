from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import GF, Poly, symbols

from _oracles import count_projective
from fermat237 import zeta
from fermat237.twists import catalog

T = symbols("t")
LABELS = [f"C{i}" for i in range(1, 11)]


def _sympy_irreducible(coeffs, p):
    return Poly(list(reversed(coeffs)), T, domain=GF(p)).is_irreducible


@pytest.mark.parametrize("p,k", [(2, 2), (2, 3), (3, 2), (3, 3), (5, 2)])
def test_rabin_matches_sympy(p, k):
    for low in product(range(p), repeat=k):
        m = list(low) + [1]
        assert zeta.is_irreducible(m, p) == _sympy_irreducible(m, p)


@pytest.mark.parametrize("p,k", [(2, 4), (3, 3), (5, 2), (5, 3), (13, 3)])
def test_field_generator_is_primitive(p, k):
    fq = zeta.field(p, k)
    assert _sympy_irreducible(list(fq.modulus), p)
    g, x, order = fq.generator, 1, 0
    while True:
        x = fq.mul(x, g)
        order += 1
        if x == 1:
            break
    assert order == fq.q - 1


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 124), st.integers(0, 124), st.integers(0, 124))
def test_field_axioms_f125(a, b, c):
    fq = zeta.field(5, 3)
    assert fq.mul(a, fq.add(b, c)) == fq.add(fq.mul(a, b), fq.mul(a, c))
    assert fq.mul(fq.mul(a, b), c) == fq.mul(a, fq.mul(b, c))


def test_c2_over_f5():
    assert zeta.count_points(catalog()["C2"].form, zeta.field(5, 1)) == 6


@pytest.mark.parametrize("label", LABELS)
@pytest.mark.parametrize("p,k", [(5, 2), (5, 3)])
def test_counts_match_independent_oracle(label, p, k):
    f = catalog()[label].form
    assert zeta.count_points(f, zeta.field(p, k)) == count_projective(f, p, k)


@pytest.mark.parametrize("label", LABELS)
@pytest.mark.parametrize("p", [7, 11, 13])
def test_gcd_count_matches_enumeration(label, p):
    f = catalog()[label].form
    for k in (1, 2):
        fq = zeta.field(p, k)
        n = zeta.count_points(f, fq)
        assert n == zeta.count_points_enumerate(f, fq)
        if zeta.has_good_reduction(f, p):
            assert (n - (p**k + 1)) ** 2 <= 36 * p**k


def test_bad_reduction_detected():
    f = catalog()["C5"].form
    assert not zeta.has_good_reduction(f, 3)
    with pytest.raises(zeta.BadReductionError):
        zeta.l_polynomial(f, 3)


@pytest.mark.parametrize("label", ["C2", "C5", "C9"])
def test_l_polynomial_predicts_higher_counts(label):
    f = catalog()[label].form
    counts = tuple(zeta.count_points(f, zeta.field(5, k)) for k in (1, 2, 3))
    lp = zeta.l_polynomial(f, 5, counts)
    assert tuple(lp.point_count(k) for k in (1, 2, 3)) == counts
    assert lp.point_count(4) == zeta.count_points_enumerate(f, zeta.field(5, 4))
    c = lp.coefficients()
    # functional equation: c_{6-i} = p^{3-i} c_i
    assert all(c[6 - i] == 5 ** (3 - i) * c[i] for i in range(4))


@pytest.mark.parametrize(
    "label,p,order",
    [
        ("C2", 5, 126), ("C4", 5, 216), ("C5", 13, 2198), ("C5", 23, 16384),
        ("C6", 11, 2048), ("C7", 13, 2744), ("C9", 11, 1400),
    ],
)
def test_printed_jacobian_orders(label, p, order):
    assert zeta.jacobian_order(catalog()[label].form, p) == order


def test_c9_at_13_recomputed():
    # counts (14, 196, 2198) give P(T) = (1 + 13T^2)(1 + 169T^4)
    lp = zeta.l_polynomial(catalog()["C9"].form, 13)
    assert (lp.e1, lp.e2, lp.e3) == (0, 13, 0)
    assert lp(1) == 2380


def test_small_prime_examples():
    lp = zeta.l_polynomial(catalog()["C2"].form, 5)
    assert lp.e1 == 0
    n = zeta.count_points(catalog()["C5"].form, zeta.field(23, 1))
    assert (n - 24) ** 2 <= 36 * 23
    c4 = catalog()["C4"].form
    assert zeta.count_points(c4, zeta.field(5, 1)) == zeta.count_points_enumerate(c4, zeta.field(5, 1))
