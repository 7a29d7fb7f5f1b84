"""Twists of the Klein quartic: the diagonal (mu_7) family, the X_E(7) and
X_E^-(7) quartics of an elliptic curve, and the built-in catalog C1..C10."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from math import gcd
from typing import Iterator

from .covariants import INF
from .forms import TernaryForm
from .points import ProjPoint


@dataclass(frozen=True, order=True)
class Case1Twist:
    """Coefficients of a*x^3*y + b*y^3*z + c*z^3*x."""

    a: int
    b: int
    c: int

    def form(self) -> TernaryForm:
        return TernaryForm({(3, 1, 0): self.a, (0, 3, 1): self.b, (1, 0, 3): self.c})

    def __iter__(self):
        return iter((self.a, self.b, self.c))


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _rotations(t: tuple[int, int, int]) -> list[tuple[int, int, int]]:
    # the cyclic substitution x -> y -> z -> x sends (a, b, c) to (c, a, b)
    a, b, c = t
    return [(a, b, c), (c, a, b), (b, c, a)]


def case1_reduce(a: int, b: int, c: int) -> Case1Twist:
    """Squarefree, coprime, rotated representative of a*x^3*y + b*y^3*z + c*z^3*x.

    If p^2 | a, multiplying by p and putting x = x'/p gives (a/p^2, b*p, c);
    the analogous moves for b and c are (a, b/p^2, c*p) and (a*p, b, c/p^2).
    Each move divides abc by p, so the loop terminates.
    """
    if min(a, b, c) < 1:
        raise ValueError("coefficients must be positive")
    t = [a, b, c]
    changed = True
    while changed:
        changed = False
        for i in range(3):
            for p in _prime_factors(t[i]):
                if t[i] % (p * p) == 0:
                    t[i] //= p * p
                    t[(i + 1) % 3] *= p
                    changed = True
        g = gcd(gcd(t[0], t[1]), t[2])
        if g > 1:
            t = [v // g for v in t]
            changed = True
    best = max(r for r in _rotations(tuple(t)) if r[0] >= r[1] and r[0] >= r[2])
    return Case1Twist(*best)


def enumerate_case1() -> list[Case1Twist]:
    """Reduced representatives for a = 2^i 3^j 7^k, 0 <= i, j, k <= 6.

    Only diagonal (mu_7) twists are produced; twists over cyclic cubic
    fields are outside this function.
    """
    out = set()
    for i in range(7):
        for j in range(7):
            for k in range(7):
                out.add(case1_reduce(2**i * 3**j * 7**k, 1, 1))
    return sorted(out)


class SingularCurveError(ValueError):
    pass


@dataclass(frozen=True)
class EllipticCoeffs:
    """Short Weierstrass model Y^2 = X^3 + a X + b."""

    a: int
    b: int

    def __post_init__(self):
        if 4 * self.a**3 + 27 * self.b**2 == 0:
            raise SingularCurveError(f"4a^3 + 27b^2 = 0 for (a, b) = ({self.a}, {self.b})")

    @property
    def j(self) -> Fraction:
        return Fraction(1728 * 4 * self.a**3, 4 * self.a**3 + 27 * self.b**2)


def x_e7_quartic(e: EllipticCoeffs) -> TernaryForm:
    a, b = e.a, e.b
    return TernaryForm({
        (4, 0, 0): a,
        (3, 0, 1): 7 * b,
        (2, 2, 0): 3,
        (2, 0, 2): -3 * a * a,
        (1, 1, 2): -6 * b,
        (1, 0, 3): -5 * a * b,
        (0, 3, 1): 2,
        (0, 2, 2): 3 * a,
        (0, 1, 3): 2 * a * a,
        (0, 0, 4): -4 * b * b,
    })


def x_e7_minus_quartic(e: EllipticCoeffs) -> TernaryForm:
    a, b = e.a, e.b
    return TernaryForm({
        (4, 0, 0): -a * a,
        (0, 4, 0): a * (3 * a**3 + 19 * b * b),
        (0, 0, 4): 3,
        (0, 2, 2): 6 * a * a,
        (2, 0, 2): 6 * a,
        (2, 2, 0): -6 * (a**3 + 6 * b * b),
        (1, 2, 1): -12 * a * b,
        (1, 1, 2): 18 * b,
        (3, 1, 0): 2 * a * b,
        (3, 0, 1): -12 * b,
        (0, 3, 1): -2 * (4 * a**3 + 21 * b * b),
        (1, 3, 0): 2 * a * a * b,
        (0, 1, 3): -8 * a,
    })


# -- catalog --------------------------------------------------------------


@dataclass(frozen=True)
class KnownPoint:
    point: ProjPoint
    j: object  # Fraction, int or INF
    solution: tuple[int, int, int] | None
    cremona: str = ""


@dataclass(frozen=True)
class CatalogCurve:
    label: str
    rank: int
    form: TernaryForm
    points: tuple[KnownPoint, ...]


def parse_j(text: str):
    """`inf`, a rational literal, or a signed product of prime powers."""
    text = text.strip()
    if text == "inf":
        return INF
    sign = 1
    if text.startswith("-"):
        sign, text = -1, text[1:]
    if "^" not in text and "*" not in text:
        return sign * Fraction(text)
    value = Fraction(1)
    for factor in text.split("*"):
        base, _, exp = factor.partition("^")
        value *= Fraction(int(base)) ** int(exp or 1)
    value *= sign
    return value.numerator if value.denominator == 1 else value


def format_j(j) -> str:
    if j is INF:
        return "inf"
    j = Fraction(j)
    return str(j.numerator) if j.denominator == 1 else f"{j.numerator}/{j.denominator}"


def _parse_solution(text: str):
    if text == "-":
        return None
    a, b, c = (int(v) for v in text.split(","))
    return (a, b, c)


def load_catalog(text: str) -> dict[str, CatalogCurve]:
    curves: dict[str, dict] = {}
    order: list[str] = []
    version = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line.startswith("# format-version:"):
            version = int(line.split(":", 1)[1])
            continue
        if not line or line.startswith("#"):
            continue
        kind, rest = line.split(None, 1)
        if kind == "curve":
            label, rank, poly = rest.split(None, 2)
            curves[label] = {"rank": int(rank), "form": TernaryForm.parse(poly), "points": []}
            order.append(label)
        elif kind == "point":
            fields = rest.split()
            if len(fields) not in (4, 5):
                raise ValueError(f"line {lineno}: malformed point record")
            label, pt, j, sol = fields[:4]
            cremona = fields[4] if len(fields) == 5 else ""
            curves[label]["points"].append(
                KnownPoint(ProjPoint.parse(pt), parse_j(j), _parse_solution(sol), cremona)
            )
        else:
            raise ValueError(f"line {lineno}: unknown record {kind!r}")
    if version != 1:
        raise ValueError(f"unsupported catalog version {version}")
    return {
        k: CatalogCurve(k, curves[k]["rank"], curves[k]["form"], tuple(curves[k]["points"]))
        for k in order
    }


@lru_cache(maxsize=1)
def catalog() -> dict[str, CatalogCurve]:
    text = resources.files("fermat237").joinpath("data/curves.txt").read_text()
    return load_catalog(text)


def curve(label_or_poly: str) -> TernaryForm:
    """Resolve a catalog label (``C5``) or parse a polynomial."""
    cat = catalog()
    key = label_or_poly.strip()
    if key.upper() in cat:
        return cat[key.upper()].form
    return TernaryForm.parse(key)


@dataclass(frozen=True)
class NamedElliptic:
    label: str
    coeffs: EllipticCoeffs
    note: str = ""


def load_elliptic(text: str) -> list[NamedElliptic]:
    out = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        label, a, b, *note = line.split(None, 3)
        out.append(NamedElliptic(label, EllipticCoeffs(int(a), int(b)), note[0] if note else ""))
    return out


@lru_cache(maxsize=1)
def elliptic_fixture() -> tuple[NamedElliptic, ...]:
    text = resources.files("fermat237").joinpath("data/elliptic.txt").read_text()
    return tuple(load_elliptic(text))


def iter_fixture_quartics() -> Iterator[tuple[str, TernaryForm]]:
    for e in elliptic_fixture():
        yield f"X_{e.label}(7)", x_e7_quartic(e.coeffs)
        yield f"X^-_{e.label}(7)", x_e7_minus_quartic(e.coeffs)
