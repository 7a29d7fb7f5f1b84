"""Independent brute-force oracles shared by the unit and acceptance tests."""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from fermat237.covariants import covariants
from fermat237.forms import TernaryForm
from fermat237.localtest import ResidueClass, vp

# -- p-adic points ----------------------------------------------------------


def _den_val(g: TernaryForm, p: int) -> int:
    return max([-vp(Fraction(1, Fraction(c).denominator), p) for _, c in g.items()] + [0])


def _chart_points(p: int, n: int):
    q = p**n
    for a, b in product(range(q), repeat=2):
        yield 0, (1, a, b)
    for a, b in product(range(0, q, p), range(q)):
        yield 1, (a, 1, b)
    for a, b in product(range(0, q, p), repeat=2):
        yield 2, (a, b, 1)


def _newton_lift(F, grads, pt, i, g, p, m):
    pt = list(pt)
    q = p ** (m + g)
    for _ in range(200):
        val = F(*pt)
        if val % q == 0:
            return tuple(pt)
        u = (grads[i](*pt) // p**g) % p**m
        pt[i] = (pt[i] - (val // p**g) * pow(u, -1, p**m)) % q
    raise RuntimeError("Newton iteration did not converge")


def padic_admissible_points(F: TernaryForm, p: int, n: int, m: int = 60):
    """Scan P^2(Z/p^n) chart by chart.

    Each smooth representative (v(F) >= n > 2 v(grad)) is Newton-lifted
    to a Z_p-point known mod p^m and the covariant valuations are read
    off directly. Yields (unit axis, representative, reliable depth,
    admissible) for the representatives whose minimum is decided.
    """
    cs = covariants(F)
    w = vp(1728 * Fraction(cs.psi0), p)
    grads = F.gradient()
    covs = (cs.psi21, cs.psi14, cs.psi6)
    limit = m - max(_den_val(h, p) for h in covs)
    q = p**n
    for axis, pt in _chart_points(p, n):
        if F.eval_mod(*pt, q):
            continue
        others = [i for i in range(3) if i != axis]
        gv = [vp(grads[i](*pt), p) for i in others]
        g = min(gv)
        if n <= 2 * g:
            continue
        lifted = _newton_lift(F, grads, pt, others[gv.index(g)], g, p, m)
        known, floor = [], []
        for h, k, d in zip(covs, (3, 2, 1), (21, 14, 6)):
            v = vp(h(*lifted), p)
            if v < limit:
                known.append(Fraction(v + k * w, d))
                floor.append(known[-1])
            else:
                floor.append(Fraction(limit + k * w, d))
        if not known or min(known) > min(floor):
            continue
        yield axis, pt, n - g, min(known).denominator == 1


def in_class(rc: ResidueClass, axis: int, pt) -> bool:
    if rc.unit_axis != axis:
        return False
    return all((pt[ax] - c) % rc.prime**d == 0 for ax, c, d in zip(rc.other_axes, rc.center, rc.depths))


# -- finite fields -----------------------------------------------------------


def _cubic_or_quadratic_field(p: int, k: int):
    """F_p[t]/(t^k + a t + b) for a rootless trinomial; k <= 3 so rootless means irreducible."""
    if k not in (1, 2, 3):
        raise ValueError("oracle fields are limited to degree <= 3")
    a, b = next(
        (a, b) for a in range(p) for b in range(1, p)
        if all((x**k + a * x + b) % p for x in range(p)) or k == 1
    )
    low = [0] * k  # t^k = -a t - b
    low[0] = -b % p
    if k > 1:
        low[1] = -a % p

    def mul(u, v):
        acc = [0] * (2 * k - 1)
        for i, x in enumerate(u):
            if x:
                for j, y in enumerate(v):
                    acc[i + j] += x * y
        for d in range(2 * k - 2, k - 1, -1):
            c, acc[d] = acc[d], 0
            for t, l in enumerate(low):
                acc[d - k + t] += c * l
        return tuple(x % p for x in acc[:k])

    return list(product(range(p), repeat=k)), mul


def count_projective(F: TernaryForm, p: int, k: int) -> int:
    """#{F = 0} in P^2(F_{p^k}) by evaluating F at every point."""
    elems, mul = _cubic_or_quadratic_field(p, k)
    zero = (0,) * k
    one = (1,) + (0,) * (k - 1)
    terms = [(e, int(c) % p) for e, c in F.items()]
    powers = {}
    for a in elems:
        ps = [one]
        for _ in range(F.degree):
            ps.append(mul(ps[-1], a))
        powers[a] = ps

    def value(x, y, z):
        acc = [0] * k
        for (i, j, l), c in terms:
            m = mul(mul(powers[x][i], powers[y][j]), powers[z][l])
            for t in range(k):
                acc[t] += c * m[t]
        return tuple(v % p for v in acc)

    n = sum(value(x, y, one) == zero for x in elems for y in elems)
    n += sum(value(x, one, zero) == zero for x in elems)
    return n + (value(one, zero, zero) == zero)
