"""p-adic residue-class local solubility test for twists of the Klein quartic.

A residue class is ``{(1 : a + p^k u : b + p^l v) : u, v in Z_p}`` after
moving the unit coordinate to the front. Every polynomial is restricted to
the class as an exact bivariate polynomial in (u, v); splitting a class is a
Taylor shift ``u -> d + p u`` of the parent's restriction.

Scaling weights: the covariant triple at a point is
``a = (1728 psi0)^3 psi21, b = -(1728 psi0)^2 psi14, c = -1728 psi0 psi6``,
so with ``w = v_p(1728 psi0)`` the quantities compared are
``(W21 + 3w)/21``, ``(W14 + 2w)/14`` and ``(W6 + w)/6``.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, inf

from .covariants import covariants
from .forms import Rational, TernaryForm

Bivariate = dict[tuple[int, int], Rational]

DEFAULT_MAX_DEPTH = int(os.environ.get("FERMAT237_MAX_DEPTH", "30"))


class HenselInconclusive(RuntimeError):
    """The Hensel search hit its depth limit without deciding."""


def vp(c: Rational, p: int) -> float | int:
    if c == 0:
        return inf
    c = Fraction(c)
    v = 0
    num, den = c.numerator, c.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


@dataclass(frozen=True, order=True)
class ResidueClass:
    prime: int
    unit_axis: int
    center: tuple[int, int]
    depths: tuple[int, int]

    def __post_init__(self):
        if self.unit_axis not in (0, 1, 2):
            raise ValueError("unit_axis must be 0, 1 or 2")
        if min(self.depths) < 0:
            raise ValueError("depths must be nonnegative")

    @property
    def other_axes(self) -> tuple[int, int]:
        return tuple(i for i in range(3) if i != self.unit_axis)

    def child(self, which: int, digit: int) -> "ResidueClass":
        c, d = list(self.center), list(self.depths)
        c[which] += digit * self.prime ** d[which]
        d[which] += 1
        return ResidueClass(self.prime, self.unit_axis, tuple(c), tuple(d))

    def reduction(self) -> tuple[int, int, int]:
        """Image in P^2(F_p); needs both depths >= 1."""
        if min(self.depths) < 1:
            raise ValueError(f"class {self} does not have a single reduction mod p")
        pt = [0, 0, 0]
        pt[self.unit_axis] = 1
        for ax, a in zip(self.other_axes, self.center):
            pt[ax] = a % self.prime
        first = next(v for v in pt if v)
        inv = pow(first, -1, self.prime)
        return tuple(v * inv % self.prime for v in pt)

    def sample(self, u: int = 0, v: int = 0) -> tuple[int, int, int]:
        pt = [0, 0, 0]
        pt[self.unit_axis] = 1
        for ax, a, k, t in zip(self.other_axes, self.center, self.depths, (u, v)):
            pt[ax] = a + self.prime**k * t
        return tuple(pt)

    def __str__(self) -> str:
        parts = [""] * 3
        parts[self.unit_axis] = "1"
        for ax, a, k in zip(self.other_axes, self.center, self.depths):
            parts[ax] = f"{a}+{self.prime}^{k}Z"
        return ":".join(parts)

    @classmethod
    def parse(cls, text: str, prime: int) -> "ResidueClass":
        parts = text.strip().split(":")
        if len(parts) != 3 or parts.count("1") < 1:
            raise ValueError(f"bad class label {text!r}")
        axis = parts.index("1")
        center, depths = [], []
        for i, s in enumerate(parts):
            if i == axis:
                continue
            m = re.fullmatch(r"(-?\d+)\+(\d+)\^(\d+)Z", s)
            if not m or int(m.group(2)) != prime:
                raise ValueError(f"bad coordinate {s!r} in {text!r}")
            center.append(int(m.group(1)))
            depths.append(int(m.group(3)))
        return cls(prime, axis, tuple(center), tuple(depths))


def initial_classes(p: int) -> list[ResidueClass]:
    """(1 : Zp : Zp), (pZp : 1 : Zp), (pZp : pZp : 1)."""
    return [
        ResidueClass(p, 0, (0, 0), (0, 0)),
        ResidueClass(p, 1, (0, 0), (1, 0)),
        ResidueClass(p, 2, (0, 0), (1, 1)),
    ]


def shift(poly: Bivariate, which: int, a: int, s: int) -> Bivariate:
    """Substitute u -> a + s*u (which=0) or v -> a + s*v (which=1)."""
    out: dict[tuple[int, int], Rational] = {}
    for (i, j), c in poly.items():
        n = (i, j)[which]
        for t in range(n + 1):
            coeff = c * comb(n, t) * a ** (n - t) * s**t
            if coeff:
                key = (t, j) if which == 0 else (i, t)
                out[key] = out.get(key, 0) + coeff
    return {k: c for k, c in out.items() if c}


def restrict_to_class(g: TernaryForm, rc: ResidueClass) -> Bivariate:
    poly = g.dehomogenize(rc.unit_axis)
    for which in (0, 1):
        a, k = rc.center[which], rc.depths[which]
        if a or k:
            poly = shift(poly, which, a, rc.prime**k)
    return poly


def coefficient_valuations(poly: Bivariate, p: int) -> dict[tuple[int, int], int]:
    return {k: vp(c, p) for k, c in poly.items()}


def _bound(poly: Bivariate, p: int) -> tuple[float | int, bool]:
    """(min coefficient valuation, constant term is the unique minimum)."""
    if not poly:
        return inf, False
    vals = coefficient_valuations(poly, p)
    m = min(vals.values())
    const = vals.get((0, 0), inf)
    exact = const == m and sum(1 for v in vals.values() if v == m) == 1
    return m, exact


def _has_no_zero(poly: Bivariate, p: int) -> bool:
    # p^e (unit + p*F1): the value has valuation e everywhere on the class
    return _bound(poly, p)[1]


@dataclass(frozen=True)
class ValuationBounds:
    W6: float | int
    W14: float | int
    W21: float | int
    exact6: bool
    exact14: bool
    exact21: bool
    w: int

    def weights(self) -> tuple[Fraction | float, Fraction | float, Fraction | float]:
        """(w_a, w_b, w_c) = ((W21+3w)/21, (W14+2w)/14, (W6+w)/6)."""

        def q(W, k, n):
            return inf if W == inf else Fraction(W + k * self.w, n)

        return q(self.W21, 3, 21), q(self.W14, 2, 14), q(self.W6, 1, 6)

    def decided_minimum(self) -> Fraction | None:
        """The true minimum on the class if an exactly known covariant attains the bound."""
        ws = self.weights()
        m = min(ws)
        if m == inf:
            return None
        for wi, ex in zip(ws, (self.exact21, self.exact14, self.exact6)):
            if ex and wi == m:
                return m
        return None


def _bounds_from(polys, p: int, w: int) -> ValuationBounds:
    (W6, e6), (W14, e14), (W21, e21) = (_bound(h, p) for h in polys)
    return ValuationBounds(W6, W14, W21, e6, e14, e21, w)


def _restricted_covariants(F: TernaryForm, rc: ResidueClass):
    cs = covariants(F)
    return tuple(restrict_to_class(g, rc) for g in (cs.psi6, cs.psi14, cs.psi21))


def _w(F: TernaryForm, p: int) -> int:
    psi0 = covariants(F).psi0
    if psi0 == 0:
        raise ValueError("psi0 vanishes; not a twist of the Klein quartic")
    return vp(1728 * Fraction(psi0), p)


def class_bounds(F: TernaryForm, rc: ResidueClass) -> ValuationBounds:
    return _bounds_from(_restricted_covariants(F, rc), rc.prime, _w(F, rc.prime))


def _hensel(h: Bivariate, p: int, budget: int, level: int = 0) -> bool | None:
    # h is the top-level restriction after `level` substitutions u -> d + p u,
    # v -> e + p v; derivatives are measured in the top-level variables
    if not h:
        return True
    if _has_no_zero(h, p):
        return False
    f0 = vp(h.get((0, 0), 0), p)
    if f0 == inf:
        return True
    d = min(vp(h.get((1, 0), 0), p), vp(h.get((0, 1), 0), p)) - level
    if f0 > 2 * d:
        return True
    if budget <= 0:
        return None
    undecided = False
    for du in range(p):
        hu = shift(h, 0, du, p)
        for dv in range(p):
            r = _hensel(shift(hu, 1, dv, p), p, budget - 1, level + 1)
            if r:
                return True
            if r is None:
                undecided = True
    return None if undecided else False


def hensel_point_exists(F: TernaryForm, rc: ResidueClass, max_depth: int = DEFAULT_MAX_DEPTH) -> bool:
    """Whether the class contains a Q_p-point of F = 0.

    Searches subclasses until some representative is a simple zero to
    sufficient precision (v(F) > 2 v(grad F)) or F has constant valuation.
    """
    r = _hensel(restrict_to_class(F, rc), rc.prime, max_depth)
    if r is None:
        raise HenselInconclusive(f"undecided at depth {max_depth} for class {rc}")
    return r


@dataclass
class LocalVerdict:
    prime: int
    passes: bool
    admissible_classes: list[ResidueClass] = field(default_factory=list)
    max_depth_reached: bool = False
    inconclusive_classes: list[ResidueClass] = field(default_factory=list)

    def reductions(self) -> set[tuple[int, int, int]]:
        return {rc.reduction() for rc in self.admissible_classes}

    def records(self) -> list[str]:
        out = [f"{self.prime} {rc} admissible" for rc in self.admissible_classes]
        out += [f"{self.prime} {rc} inconclusive" for rc in self.inconclusive_classes]
        return out


def _split_axes(polys, bounds: ValuationBounds, p: int) -> tuple[int, ...]:
    m = min(bounds.weights())
    axes = set()
    for h, wi in zip(reversed(polys), bounds.weights()):
        if wi != m:
            continue
        vals = coefficient_valuations(h, p)
        const = vals.get((0, 0), inf)
        for (i, j), v in vals.items():
            if (i, j) != (0, 0) and v <= const:
                if i:
                    axes.add(0)
                if j:
                    axes.add(1)
    return tuple(sorted(axes)) or (0, 1)


def local_test(F: TernaryForm, p: int, max_depth: int = DEFAULT_MAX_DEPTH) -> LocalVerdict:
    """Decide which residue classes of P^2(Q_p) yield p-primitive solutions."""
    if p not in (2, 3, 7):
        raise ValueError("the local test is only needed at p in {2, 3, 7}")
    w = _w(F, p)
    verdict = LocalVerdict(p, False)
    stack = []
    for rc in reversed(initial_classes(p)):
        hf = restrict_to_class(F, rc)
        stack.append((rc, hf, _restricted_covariants(F, rc)))

    def split(rc, hf, polys, axes):
        children = [(rc, hf, polys)]
        for which in axes:
            nxt = []
            for crc, chf, cpolys in children:
                for d in range(p):
                    nxt.append((
                        crc.child(which, d),
                        shift(chf, which, d, p),
                        tuple(shift(h, which, d, p) for h in cpolys),
                    ))
            children = nxt
        stack.extend(reversed(children))

    while stack:
        rc, hf, polys = stack.pop()
        if _has_no_zero(hf, p):
            continue
        if max(rc.depths) > max_depth:
            verdict.max_depth_reached = True
            verdict.inconclusive_classes.append(rc)
            continue
        bounds = _bounds_from(polys, p, w)
        m = bounds.decided_minimum()
        if m is None:
            split(rc, hf, polys, _split_axes(polys, bounds, p))
            continue
        if m.denominator != 1:
            continue
        shallow = tuple(i for i in (0, 1) if rc.depths[i] == 0)
        if shallow:
            split(rc, hf, polys, shallow)
            continue
        found = _hensel(hf, p, max_depth - max(rc.depths))
        if found:
            verdict.admissible_classes.append(rc)
        elif found is None:
            verdict.max_depth_reached = True
            verdict.inconclusive_classes.append(rc)
        else:
            split(rc, hf, polys, (0, 1))
    verdict.admissible_classes.sort()
    verdict.inconclusive_classes.sort()
    verdict.passes = bool(verdict.admissible_classes)
    return verdict
