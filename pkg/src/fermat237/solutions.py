"""From rational points on twists to primitive solutions of x^2 + y^3 = z^7."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Iterable

import numpy as np
from sympy import factorint

from .covariants import covariants
from .forms import TernaryForm
from .points import ProjPoint
from .twists import EllipticCoeffs, catalog


@dataclass(frozen=True, order=True)
class PrimitiveSolution:
    a: int
    b: int
    c: int

    def __post_init__(self):
        if not verify_solution(self.a, self.b, self.c):
            raise ValueError(f"({self.a}, {self.b}, {self.c}) is not a primitive solution")

    def __iter__(self):
        return iter((self.a, self.b, self.c))

    def __str__(self) -> str:
        return f"{self.a} {self.b} {self.c}"


@dataclass(frozen=True)
class NoPrimitiveScaling:
    """The covariant triple at a point cannot be scaled to a primitive solution.

    ``prime`` is the smallest obstructing prime; ``valuations`` are the
    p-adic valuations of (a, b, c) there (None for a zero entry).
    """

    point: ProjPoint
    prime: int
    valuations: tuple[int | None, int | None, int | None]

    def __str__(self) -> str:
        return f"no primitive scaling at {self.point} (obstruction at p={self.prime})"


def verify_solution(a: int, b: int, c: int) -> bool:
    return a * a + b**3 == c**7 and gcd(gcd(a, b), c) == 1


def _val(n: Fraction, p: int) -> int | None:
    if n == 0:
        return None
    v = 0
    num, den = n.numerator, n.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def covariant_triple(f: TernaryForm, point) -> tuple[Fraction, Fraction, Fraction]:
    """(a, b, c) = ((1728 psi0)^3 psi21, -(1728 psi0)^2 psi14, -1728 psi0 psi6) at a point."""
    cs = covariants(f)
    k = 1728 * Fraction(cs.psi0)
    v6, v14, v21 = (Fraction(v) for v in cs.at(tuple(point)))
    zeros = [v == 0 for v in (v6, v14, v21)]
    if sum(zeros) > 1:
        raise ArithmeticError(f"two covariants vanish at {point}; not a Klein twist")
    return k**3 * v21, -(k**2) * v14, -k * v6


def _effective_weights(a, b, c) -> tuple[int, int, int]:
    w = [21, 14, 6]
    live = [wi for wi, t in zip(w, (a, b, c)) if t]
    g = gcd(*live)
    return tuple(wi // g for wi in w)


def recover_solution(f: TernaryForm, point) -> PrimitiveSolution | NoPrimitiveScaling:
    pt = point if isinstance(point, ProjPoint) else ProjPoint(*point)
    if f(*pt) != 0:
        raise ValueError(f"point {pt} is not on the curve")
    cs = covariants(f)
    if cs.psi0 == 0:
        raise ValueError("psi0 vanishes; not a twist of the Klein quartic")
    a, b, c = covariant_triple(f, pt)
    primes: set[int] = set()
    nonzero = [abs(t) for t in (a, b, c) if t]
    g = 0
    for t in nonzero:
        g = gcd(g, t.numerator)
        primes.update(factorint(t.denominator))
    primes.update(factorint(g))
    # with one entry zero only the remaining weights matter, divided by their gcd
    weights = _effective_weights(a, b, c)
    lam = Fraction(1)
    for p in sorted(primes):
        vals = (_val(a, p), _val(b, p), _val(c, p))
        m = min(Fraction(v, w) for v, w in zip(vals, weights) if v is not None)
        if m.denominator != 1:
            return NoPrimitiveScaling(pt, p, vals)
        lam *= Fraction(p) ** int(m)
    a, b, c = (t / lam**w for t, w in zip((a, b, c), weights))
    a, b, c = int(a), int(b), int(c)
    if a < 0 or (a == 0 and c < 0):
        # (a,b,c) -> (-a,b,c) always; (0,b,c) -> (0,-b,-c) as well
        a, b, c = (-a, b, c) if a else (a, -b, -c)
    return PrimitiveSolution(a, b, c)


def elliptic_from_solution(s) -> tuple[EllipticCoeffs, Fraction]:
    """E_(a,b,c): Y^2 = X^3 + 3bX - 2a and its j-invariant c4^3/Delta."""
    a, b, c = s
    if b == 0 or c == 0:
        raise ValueError("b and c must be nonzero")
    c4, delta = -144 * b, -1728 * c**7
    j = Fraction(c4**3, delta)
    assert j == Fraction(1728 * b**3, c**7)
    return EllipticCoeffs(3 * b, -2 * a), j


# -- searching ------------------------------------------------------------

_SIEVE_PRIMES = (1_000_003, 999_983)


def _mod_values(f: TernaryForm, xs: np.ndarray, ys: np.ndarray, zs: np.ndarray, p: int) -> np.ndarray:
    d = f.degree
    pw = []
    for arr in (xs, ys, zs):
        base = arr % p
        powers = [np.ones_like(base)]
        for _ in range(d):
            powers.append(powers[-1] * base % p)
        pw.append(powers)
    total = np.zeros(np.broadcast(xs, ys, zs).shape, dtype=np.int64)
    for (i, j, k), c in f.items():
        if isinstance(c, Fraction):
            c = c.numerator * pow(c.denominator, -1, p)
        term = pw[0][i] * pw[1][j] % p * pw[2][k] % p * (c % p) % p
        total = (total + term) % p
    return total


def point_search(
    f: TernaryForm,
    bound: int,
    filter: Callable[[ProjPoint], bool] | None = None,
) -> list[ProjPoint]:
    """All points of f = 0 with max(|x|,|y|,|z|) <= bound, sorted.

    Candidates are sieved modulo two large primes with numpy and then
    confirmed by exact evaluation.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    rng = np.arange(-bound, bound + 1, dtype=np.int64)
    ys, zs = np.meshgrid(rng, rng, indexing="ij")
    found = set()
    for x in range(0, bound + 1):
        xs = np.full_like(ys, x)
        mask = np.ones(ys.shape, dtype=bool)
        for p in _SIEVE_PRIMES:
            mask &= _mod_values(f, xs, ys, zs, p) == 0
        for y, z in zip(ys[mask].tolist(), zs[mask].tolist()):
            if (x, y, z) == (0, 0, 0) or gcd(gcd(x, y), z) != 1:
                continue
            if f(x, y, z) == 0:
                pt = ProjPoint(x, y, z)
                if filter is None or filter(pt):
                    found.add(pt)
    return sorted(found)


def residue_filter(allowed: dict[int, Iterable[tuple[int, int, int]]]) -> Callable[[ProjPoint], bool]:
    """Predicate: the reduction mod p lies in allowed[p] for every listed prime."""
    table = {p: {tuple(q) for q in pts} for p, pts in allowed.items()}

    def pred(pt: ProjPoint) -> bool:
        return all(pt.reduce(p) in pts for p, pts in table.items())

    return pred


# conditions that cut out the 2-adic and 3-adic subsets of C5 used by the sieve
C5_SUBSET = {2: [(1, 0, 0), (1, 1, 1)], 3: [(0, 1, 0)]}


def reproduce_theorem() -> set[PrimitiveSolution]:
    out: set[PrimitiveSolution] = set()
    for entry in catalog().values():
        for kp in entry.points:
            r = recover_solution(entry.form, kp.point)
            if isinstance(r, PrimitiveSolution):
                out.update(sign_orbit(r))
    return out


def sign_orbit(s: PrimitiveSolution) -> set[PrimitiveSolution]:
    a, b, c = s
    orbit = {PrimitiveSolution(a, b, c), PrimitiveSolution(-a, b, c)}
    if a == 0:
        orbit.add(PrimitiveSolution(0, -b, -c))
    return orbit


def catalog_recoveries():
    """Yield (label, known point, recovery result) for every catalog row."""
    for label, entry in catalog().items():
        for kp in entry.points:
            yield label, kp, recover_solution(entry.form, kp.point)


# -- Fermat septic covers --------------------------------------------------


def fermat_cover_identity(A: int) -> bool:
    """Check u^7 = v^2 (A v - w) w^4 modulo x^3 y + y^3 z + A z^3 x for (u,v,w) = (xyz, -z^3, x^2 y)."""
    from .forms import reduce_mod_form

    if A == 0:
        raise ValueError("A must be nonzero")
    f = TernaryForm({(3, 1, 0): 1, (0, 3, 1): 1, (1, 0, 3): A})
    u = TernaryForm({(1, 1, 1): 1})
    v = TernaryForm({(0, 0, 3): -1})
    w = TernaryForm({(2, 1, 0): 1})
    g = u**7 - v * v * (v * A - w) * w**4
    return reduce_mod_form(g, f).is_zero()


def _seventh_power_free(n: int) -> bool:
    return all(e < 7 for e in factorint(abs(n)).values())


@dataclass(frozen=True)
class SepticCurve:
    c1: int
    c2: int
    c3: int

    def __post_init__(self):
        for c in (self.c1, self.c2, self.c3):
            if c == 0 or not _seventh_power_free(c):
                raise ValueError(f"coefficient {c} must be nonzero and 7th-power-free")

    def __iter__(self):
        return iter((self.c1, self.c2, self.c3))


def _iroot7(n: int) -> int | None:
    if n == 0:
        return 0
    s = -1 if n < 0 else 1
    m = abs(n)
    r = round(m ** (1 / 7))
    for c in (r - 1, r, r + 1):
        if c >= 0 and c**7 == m:
            return s * c
    return None


def septic_search(curve: SepticCurve, bound: int) -> list[ProjPoint]:
    """Primitive points of c1 X^7 + c2 Y^7 + c3 Z^7 = 0 with coordinates bounded by `bound`."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    c1, c2, c3 = curve
    found = set()
    for X in range(-bound, bound + 1):
        for Y in range(-bound, bound + 1):
            t = -(c1 * X**7 + c2 * Y**7)
            if t % c3:
                continue
            Z = _iroot7(t // c3)
            if Z is None or abs(Z) > bound or (X, Y, Z) == (0, 0, 0):
                continue
            if gcd(gcd(X, Y), Z) == 1:
                found.add(ProjPoint(X, Y, Z))
    return sorted(found)


COROLLARY_SEPTICS = (
    (1, 1, 12), (1, 1, 18), (1, 1, 48), (1, 1, 144), (1, 1, 162), (1, 1, 324),
    (1, 2, 3), (1, 2, 81), (1, 3, 4), (1, 3, 16), (1, 4, 9), (1, 9, 16), (1, 16, 81),
)
