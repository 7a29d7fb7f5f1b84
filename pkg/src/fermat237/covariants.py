"""Invariant and covariants of ternary quartics, the syzygy certificate and the j-map.

Normalizations (all exact):

* ``psi6  = -1/54 * det(Hessian)``
* ``psi14 =  1/9  * det([[Hessian, grad psi6], [grad psi6^T, 0]])``
* ``psi21 =  1/14 * det(jacobian(F, psi6, psi14))``
* ``psi0  =  1/5184 * D^4 (F(p1) F(p2) F(p3))`` with D the 3x3 determinant of
  partial derivatives in three copies of the variables.

For any twist of the Klein quartic these satisfy
``psi21^2 - psi14^3 + 1728 psi0 psi6^7 == 0 (mod F)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .forms import (
    DegreeError,
    Rational,
    TernaryForm,
    UniPoly,
    bivariate_to_unipoly,
    normalize,
    reduce_mod_form,
    resultant,
)


class _Infinity:
    """The point at infinity of the j-line."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    def __str__(self) -> str:
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


def _require_quartic(f: TernaryForm) -> None:
    if f.is_zero() or f.degree != 4:
        raise DegreeError(f"expected a nonzero quartic, got degree {f.degree}")


def _det3(m):
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def _second_partials(f: TernaryForm):
    grad = f.gradient()
    return [[grad[i].diff(j) for j in range(3)] for i in range(3)]


def hessian_covariant(f: TernaryForm) -> TernaryForm:
    _require_quartic(f)
    return _det3(_second_partials(f)) * Fraction(-1, 54)


def psi14(f: TernaryForm, psi6: TernaryForm | None = None) -> TernaryForm:
    _require_quartic(f)
    if psi6 is None:
        psi6 = hessian_covariant(f)
    if psi6.degree != 6:
        raise DegreeError("psi6 must have degree 6")
    h = _second_partials(f)
    g = psi6.gradient()
    # det [[H, g], [g^T, 0]] = -g^T adj(H) g
    adj = [[None] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            r = [k for k in range(3) if k != j]
            c = [k for k in range(3) if k != i]
            minor = h[r[0]][c[0]] * h[r[1]][c[1]] - h[r[0]][c[1]] * h[r[1]][c[0]]
            adj[i][j] = minor if (i + j) % 2 == 0 else -minor
    total = TernaryForm.zero(14)
    for i in range(3):
        for j in range(3):
            total = total + g[i] * adj[i][j] * g[j]
    return total * Fraction(-1, 9)


def psi21(f: TernaryForm, psi6: TernaryForm | None = None, psi14_: TernaryForm | None = None) -> TernaryForm:
    _require_quartic(f)
    if psi6 is None:
        psi6 = hessian_covariant(f)
    if psi14_ is None:
        psi14_ = psi14(f, psi6)
    if psi6.degree != 6 or psi14_.degree != 14:
        raise DegreeError("psi6/psi14 have wrong degrees")
    return _det3([f.gradient(), psi6.gradient(), psi14_.gradient()]) * Fraction(1, 14)


QUARTIC_EXPONENTS = tuple(
    (i, j, 4 - i - j) for i in range(4, -1, -1) for j in range(4 - i, -1, -1)
)


@lru_cache(maxsize=1)
def psi0_table() -> dict[tuple, Fraction]:
    """psi0 as a cubic polynomial in the 15 quartic coefficients.

    Keys are sorted triples of exponent triples (one coefficient of F per
    copy of the variables); values are rational weights. Built by expanding
    D^4 literally: each of the four factors of D picks a permutation, each
    copy of the variables receives four first-order derivatives, and the
    fourth derivative ∂^α F equals α! times the coefficient of x^α.
    """
    perms = [(p, _perm_sign(p)) for p in itertools.permutations(range(3))]
    acc: dict[tuple, int] = {}
    for choice in itertools.product(perms, repeat=4):
        sign = 1
        counts = [[0, 0, 0] for _ in range(3)]
        for p, s in choice:
            sign *= s
            for point in range(3):
                counts[point][p[point]] += 1
        weight = sign
        for c in counts:
            weight *= factorial(c[0]) * factorial(c[1]) * factorial(c[2])
        key = tuple(sorted(tuple(c) for c in counts))
        acc[key] = acc.get(key, 0) + weight
    return {k: Fraction(v, 5184) for k, v in acc.items() if v}


def _perm_sign(p) -> int:
    sign = 1
    p = list(p)
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                sign = -sign
    return sign


def psi0(f: TernaryForm) -> Rational:
    _require_quartic(f)
    total = Fraction(0)
    for (a, b, c), w in psi0_table().items():
        fa, fb, fc = f.coeff(a), f.coeff(b), f.coeff(c)
        if fa and fb and fc:
            total += w * fa * fb * fc
    return normalize(total)


@dataclass(frozen=True)
class CovariantSet:
    source: TernaryForm
    psi0: Rational
    psi6: TernaryForm
    psi14: TernaryForm
    psi21: TernaryForm

    def at(self, point) -> tuple[Rational, Rational, Rational]:
        """(psi6, psi14, psi21) evaluated at a point."""
        x, y, z = point
        return self.psi6(x, y, z), self.psi14(x, y, z), self.psi21(x, y, z)


@lru_cache(maxsize=256)
def covariants(f: TernaryForm) -> CovariantSet:
    _require_quartic(f)
    p6 = hessian_covariant(f)
    p14 = psi14(f, p6)
    p21 = psi21(f, p6, p14)
    return CovariantSet(f, psi0(f), p6, p14, p21)


def syzygy_remainder(f: TernaryForm) -> TernaryForm:
    cs = covariants(f)
    g = cs.psi21 * cs.psi21 - cs.psi14 ** 3 + cs.psi6 ** 7 * (1728 * cs.psi0)
    return reduce_mod_form(g, f)


def syzygy_check(f: TernaryForm) -> bool:
    """True iff psi21^2 - psi14^3 + 1728 psi0 psi6^7 vanishes modulo f."""
    return syzygy_remainder(f).is_zero()


def is_klein_twist(f: TernaryForm) -> bool:
    return covariants(f).psi0 != 0 and syzygy_check(f)


def j_invariant(f: TernaryForm, point) -> Rational | _Infinity:
    """Canonical j-map psi14^3 / (psi0 psi6^7) at a point of the curve."""
    x, y, z = point
    if f(x, y, z) != 0:
        raise ValueError(f"point {point} is not on the curve")
    cs = covariants(f)
    if cs.psi0 == 0:
        raise ValueError("psi0 vanishes; not a twist of the Klein quartic")
    v6, v14, _ = cs.at(point)
    if v6 == 0:
        return INF
    return normalize(Fraction(v14) ** 3 / (Fraction(cs.psi0) * Fraction(v6) ** 7))


def flex_resultant(f: TernaryForm) -> UniPoly:
    """Resultant in v of f(u, v, 1) and its Hessian; roots are u-coordinates of flexes."""
    _require_quartic(f)
    h = hessian_covariant(f)
    fu = bivariate_to_unipoly(f.dehomogenize("z"))
    hu = bivariate_to_unipoly(h.dehomogenize("z"))
    if fu.degree < 1 or hu.degree < 1:
        raise ValueError("degenerate chart: f or its Hessian is constant in v; permute coordinates")
    res = resultant(fu, hu)
    if not res:
        raise ValueError("degenerate chart: resultant vanishes identically")
    return res
