from __future__ import annotations

from fractions import Fraction

import pytest

from _oracles import in_class, padic_admissible_points
from fermat237.forms import TernaryForm
from fermat237.localtest import (
    ResidueClass,
    class_bounds,
    hensel_point_exists,
    initial_classes,
    local_test,
    restrict_to_class,
    vp,
)
from fermat237.twists import catalog

KLEIN = TernaryForm.parse("x^3*y + y^3*z + z^3*x")
LABELS = [f"C{i}" for i in range(1, 11)]


def test_vp():
    assert vp(0, 3) == float("inf")
    assert vp(18, 3) == 2
    assert vp(Fraction(5, 12), 2) == -2


def test_class_string_roundtrip():
    rc = ResidueClass(3, 1, (6, 2), (2, 1))
    assert str(rc) == "6+3^2Z:1:2+3^1Z"
    assert ResidueClass.parse(str(rc), 3) == rc


def test_child_and_reduction():
    rc = ResidueClass(2, 0, (0, 0), (0, 0)).child(0, 1).child(1, 1)
    assert rc.depths == (1, 1)
    assert rc.reduction() == (1, 1, 1)
    assert rc.child(0, 1).center == (3, 1)
    with pytest.raises(ValueError):
        ResidueClass(2, 0, (0, 0), (0, 1)).reduction()


def test_initial_partition():
    assert [str(rc) for rc in initial_classes(2)] == [
        "1:0+2^0Z:0+2^0Z", "0+2^1Z:1:0+2^0Z", "0+2^1Z:0+2^1Z:1",
    ]


def test_identity_chart_restriction():
    f = catalog()["C5"].form
    h = restrict_to_class(f, initial_classes(3)[0])
    assert h == {(j, k): c for (i, j, k), c in f.items()}


def test_c5_mod3_factorisation():
    # line times a cubic with a cusp at (0:1:0)
    f = catalog()["C5"].form
    cubic = TernaryForm.parse("x^2*y + x^2*z + x*y*z + x*z^2 + y*z^2")
    g = TernaryForm.parse("x - z") * cubic
    assert all(c % 3 == 0 for _, c in (f - g).items())
    assert cubic(0, 1, 0) == 0
    assert all(d(0, 1, 0) % 3 == 0 for d in cubic.gradient())


def test_w_for_c5_at_3():
    assert class_bounds(catalog()["C5"].form, initial_classes(3)[0]).w == 4


def test_scaling_shifts_bounds():
    f = catalog()["C5"].form
    rc = initial_classes(3)[0]
    a, b = class_bounds(f, rc), class_bounds(f * 3, rc)
    assert (b.w - a.w, b.W6 - a.W6, b.W14 - a.W14, b.W21 - a.W21) == (3, 3, 8, 12)


def test_hensel_examples():
    # Klein quartic takes the odd value 3 on the whole class of (1:1:1) mod 2
    assert not hensel_point_exists(KLEIN, ResidueClass(2, 0, (1, 1), (1, 1)))
    # the smooth F_3-point (0:1:0) of C5 lifts
    assert hensel_point_exists(catalog()["C5"].form, ResidueClass(3, 1, (0, 0), (1, 1)))


def test_c5_constraints():
    f = catalog()["C5"].form
    assert local_test(f, 2).reductions() == {(1, 0, 0), (1, 1, 1)}
    assert local_test(f, 3).reductions() == {(0, 1, 0)}


def test_depth_limit_is_flagged():
    v = local_test(catalog()["C5"].form, 3, max_depth=0)
    assert v.max_depth_reached and v.inconclusive_classes
    assert not v.passes


def test_bad_prime_rejected():
    with pytest.raises(ValueError):
        local_test(KLEIN, 5)


def test_records_format():
    v = local_test(catalog()["C5"].form, 3)
    for line in v.records():
        p, label, verdict = line.split()
        assert p == "3" and verdict == "admissible"
        assert ResidueClass.parse(label, 3) in v.admissible_classes


@pytest.mark.parametrize("p", [2, 3, 7])
@pytest.mark.parametrize("label", LABELS)
def test_catalog_passes(label, p):
    v = local_test(catalog()[label].form, p)
    assert v.passes and not v.max_depth_reached


@pytest.mark.parametrize("p,n", [(2, 6), (3, 4)])
@pytest.mark.parametrize("label", LABELS)
def test_oracle_equivalence(label, p, n):
    f = catalog()[label].form
    v = local_test(f, p)
    assert max(max(rc.depths) for rc in v.admissible_classes) <= 3
    pts = list(padic_admissible_points(f, p, n))
    for axis, pt, depth, admissible in pts:
        if depth < 3:
            continue
        assert any(in_class(rc, axis, pt) for rc in v.admissible_classes) == admissible, (axis, pt)
    for rc in v.admissible_classes:
        assert any(adm and in_class(rc, a, pt) for a, pt, _, adm in pts), str(rc)
