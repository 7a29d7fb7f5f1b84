"""Point counts of plane quartics over F_{p^k}, L-polynomials and Jacobian orders.

Field elements of F_q (q = p^k) are encoded as integers c0 + c1 p + ... +
c_{k-1} p^{k-1}, the coefficient vector modulo a fixed monic irreducible.
Multiplication goes through discrete log / antilog tables for a primitive
element. The hot loop (one Frobenius gcd per x-coordinate) is compiled with
numba.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

import numpy as np
from numba import njit

from .forms import TernaryForm
from .twists import catalog

# -- F_p[t] helpers used to set up a field ---------------------------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], m: list[int], p: int) -> list[int]:
    a = [c % p for c in a]
    _trim(a)
    inv = pow(m[-1], -1, p)
    while len(a) >= len(m):
        c = a[-1] * inv % p
        s = len(a) - len(m)
        for i, mc in enumerate(m):
            a[s + i] = (a[s + i] - c * mc) % p
        _trim(a)
    return a


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _ppowmod(a: list[int], e: int, m: list[int], p: int) -> list[int]:
    result, base = [1], _pmod(a, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        e >>= 1
    return result


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim([c % p for c in a]), _trim([c % p for c in b])
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _prime_divisors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(m: list[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over F_p (coefficients low to high)."""
    k = len(m) - 1
    if k < 1:
        return False
    t = [0, 1]
    if _ppowmod(t, p**k, m, p) != _pmod(t, m, p):
        return False
    for r in _prime_divisors(k):
        h = _ppowmod(t, p ** (k // r), m, p)
        diff = [(a - b) % p for a, b in zip(h + [0] * 2, _pmod(t, m, p) + [0] * (len(h) + 2))]
        if len(_pgcd(m, diff, p)) > 1:
            return False
    return True


def smallest_irreducible(p: int, k: int) -> list[int]:
    """Least monic irreducible of degree k, ordering lower coefficients by their base-p encoding."""
    if k == 1:
        return [0, 1]
    for code in range(p**k):
        low = [(code // p**i) % p for i in range(k)]
        m = low + [1]
        if is_irreducible(m, p):
            return m
    raise ArithmeticError("no irreducible polynomial found")


# -- compiled field kernels -------------------------------------------------


@njit(cache=True)
def _add(a, b, p, k):
    out = 0
    scale = 1
    for _ in range(k):
        out += ((a % p + b % p) % p) * scale
        a //= p
        b //= p
        scale *= p
    return out


@njit(cache=True)
def _neg(a, p, k):
    out = 0
    scale = 1
    for _ in range(k):
        out += ((p - a % p) % p) * scale
        a //= p
        scale *= p
    return out


@njit(cache=True)
def _mul(a, b, log, exp):
    if a == 0 or b == 0:
        return 0
    return exp[log[a] + log[b]]


@njit(cache=True)
def _inv(a, log, exp, qm1):
    return exp[qm1 - log[a]]


@njit(cache=True)
def _build_tables(p, k, modulus, gen_code):
    q = p**k
    log = np.zeros(q, dtype=np.int64)
    exp = np.zeros(2 * (q - 1) + 1, dtype=np.int64)
    g = np.zeros(k, dtype=np.int64)
    c = gen_code
    for i in range(k):
        g[i] = c % p
        c //= p
    cur = np.zeros(k, dtype=np.int64)
    cur[0] = 1
    prod = np.zeros(2 * k, dtype=np.int64)
    for e in range(q - 1):
        code = 0
        scale = 1
        for i in range(k):
            code += cur[i] * scale
            scale *= p
        if e > 0 and code == 1:
            return log, exp, False
        exp[e] = code
        log[code] = e
        for i in range(2 * k):
            prod[i] = 0
        for i in range(k):
            for j in range(k):
                prod[i + j] = (prod[i + j] + cur[i] * g[j]) % p
        for d in range(2 * k - 2, k - 1, -1):
            coef = prod[d]
            if coef:
                for i in range(k + 1):
                    prod[d - k + i] = (prod[d - k + i] - coef * modulus[i]) % p
        for i in range(k):
            cur[i] = prod[i]
    for e in range(q - 1, 2 * (q - 1) + 1):
        exp[e] = exp[e - (q - 1)]
    return log, exp, True


@njit(cache=True)
def _polymulmod(a, b, f, n, p, k, log, exp):
    prod = np.zeros(2 * n, dtype=np.int64)
    for i in range(n):
        if a[i] == 0:
            continue
        for j in range(n):
            if b[j] == 0:
                continue
            prod[i + j] = _add(prod[i + j], _mul(a[i], b[j], log, exp), p, k)
    for d in range(2 * n - 2, n - 1, -1):
        c = prod[d]
        if c == 0:
            continue
        nc = _neg(c, p, k)
        for i in range(n):
            prod[d - n + i] = _add(prod[d - n + i], _mul(nc, f[i], log, exp), p, k)
        prod[d] = 0
    return prod[:n].copy()


@njit(cache=True)
def _polypowmod(a, e, f, n, p, k, log, exp):
    result = np.zeros(n, dtype=np.int64)
    result[0] = 1
    base = a.copy()
    while e:
        if e & 1:
            result = _polymulmod(result, base, f, n, p, k, log, exp)
        e >>= 1
        if e:
            base = _polymulmod(base, base, f, n, p, k, log, exp)
    return result


@njit(cache=True)
def _degree(a, n):
    for d in range(n - 1, -1, -1):
        if a[d] != 0:
            return d
    return -1


@njit(cache=True)
def _gcd_degree(f, g, n, p, k, log, exp, qm1):
    """deg gcd(f, g) for f monic of degree n (f[n] implicit) and deg g < n."""
    a = np.zeros(n + 1, dtype=np.int64)
    a[:n] = f[:n]
    a[n] = 1
    da = n
    b = np.zeros(n + 1, dtype=np.int64)
    b[:n] = g[:n]
    db = _degree(b, n + 1)
    while db >= 0:
        inv = _inv(b[db], log, exp, qm1)
        while da >= db:
            c = _mul(a[da], inv, log, exp)
            nc = _neg(c, p, k)
            for i in range(db + 1):
                a[da - db + i] = _add(a[da - db + i], _mul(nc, b[i], log, exp), p, k)
            da = _degree(a, n + 1)
            if da < 0:
                break
        a, b = b, a
        da, db = db, da
    return da


@njit(cache=True)
def _frob(x, p, log, exp, qm1):
    if x == 0:
        return 0
    return exp[(log[x] * p) % qm1]


@njit(cache=True)
def _eval_coeffs(coef, x, p, k, log, exp):
    """Evaluate the x-polynomial coef[0] + coef[1] x + ... at x."""
    total = 0
    power = 1
    for i in range(coef.shape[0]):
        if coef[i]:
            total = _add(total, _mul(coef[i], power, log, exp), p, k)
        power = _mul(power, x, log, exp)
    return total


@njit(cache=True)
def _count_affine(table, lead_inv, p, k, log, exp):
    """sum over x in F_q of #{y : f_x(y) = 0}, f_x(y) = sum_j table[j](x) y^j, deg_y = 4."""
    q = p**k
    qm1 = q - 1
    n = 4
    total = 0
    f = np.zeros(n, dtype=np.int64)
    ypoly = np.zeros(n, dtype=np.int64)
    ypoly[1] = 1
    for x in range(q):
        # one representative per Frobenius orbit, weighted by orbit size
        orbit = 1
        y = _frob(x, p, log, exp, qm1)
        skip = False
        while y != x:
            if y < x:
                skip = True
                break
            orbit += 1
            y = _frob(y, p, log, exp, qm1)
        if skip:
            continue
        for j in range(n):
            f[j] = _mul(_eval_coeffs(table[j], x, p, k, log, exp), lead_inv, log, exp)
        r = ypoly.copy()
        for _ in range(k):
            r = _polypowmod(r, p, f, n, p, k, log, exp)
        r[1] = _add(r[1], _neg(1, p, k), p, k)
        total += orbit * _gcd_degree(f, r, n, p, k, log, exp, qm1)
    return total


@njit(cache=True)
def _count_line(coef, p, k, log, exp):
    q = p**k
    count = 0
    for x in range(q):
        if _eval_coeffs(coef, x, p, k, log, exp) == 0:
            count += 1
    return count


@njit(cache=True)
def _count_plane(table, p, k, log, exp):
    """Affine points of sum_j table[j](x) y^j = 0 by enumerating all (x, y)."""
    q = p**k
    n = table.shape[0]
    count = 0
    cx = np.zeros(n, dtype=np.int64)
    for x in range(q):
        for j in range(n):
            cx[j] = _eval_coeffs(table[j], x, p, k, log, exp)
        for y in range(q):
            total = 0
            power = 1
            for j in range(n):
                if cx[j]:
                    total = _add(total, _mul(cx[j], power, log, exp), p, k)
                power = _mul(power, y, log, exp)
            if total == 0:
                count += 1
    return count


# -- public API -------------------------------------------------------------


class Fq:
    """The finite field F_{p^k} with a deterministic modulus and primitive element."""

    def __init__(self, p: int, k: int = 1):
        if k < 1 or p < 2 or len(_prime_divisors(p)) != 1 or _prime_divisors(p)[0] != p:
            raise ValueError(f"bad field parameters p={p}, k={k}")
        self.p, self.k, self.q = p, k, p**k
        self.modulus = tuple(smallest_irreducible(p, k))
        if not is_irreducible(list(self.modulus), p):
            raise ArithmeticError("modulus is reducible")
        mod_arr = np.array([c % p for c in self.modulus], dtype=np.int64)
        for g in range(1, self.q):
            log, exp, ok = _build_tables(p, k, mod_arr, g)
            if ok:
                self.generator = g
                self.log, self.exp = log, exp
                break
        else:  # pragma: no cover - q = 2 has generator 1
            raise ArithmeticError("no primitive element")

    def __repr__(self) -> str:
        mod = " + ".join(f"{c}*t^{i}" for i, c in enumerate(self.modulus) if c)
        return f"Fq({self.p}^{self.k}, modulus {mod})"

    def mul(self, a: int, b: int) -> int:
        return int(_mul(a, b, self.log, self.exp))

    def add(self, a: int, b: int) -> int:
        return int(_add(a, b, self.p, self.k))


@lru_cache(maxsize=16)
def field(p: int, k: int) -> Fq:
    return Fq(p, k)


class BadReductionError(ValueError):
    pass


def _reduced_coeffs(F: TernaryForm, p: int) -> dict[tuple[int, int, int], int]:
    out = {}
    for e, c in F.items():
        c = Fraction(c)
        if c.denominator % p == 0:
            raise BadReductionError(f"coefficient {c} is not p-integral")
        v = c.numerator * pow(c.denominator, -1, p) % p
        if v:
            out[e] = v
    if not out:
        raise BadReductionError(f"F vanishes identically mod {p}")
    return out


def _reduce_form(F: TernaryForm, p: int) -> TernaryForm:
    return TernaryForm(_reduced_coeffs(F, p), degree=F.degree)


def _normalize_chart(F: TernaryForm, p: int) -> TernaryForm | None:
    """An F_p-equivalent form with F(0,1,0) != 0 mod p, or None if F vanishes on P^2(F_p)."""
    G = _reduce_form(F, p)
    for pt in _projective_points(p):
        if G.eval_mod(*pt, p):
            # new y-axis points at pt, so G'(0,1,0) = G(pt) != 0
            a, b = _complete_basis(pt, p)
            m = [[a[i], pt[i], b[i]] for i in range(3)]
            return _reduce_form(G.substitute(m), p)
    return None


def _complete_basis(pt, p):
    std = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    for a in std:
        for b in std:
            m = [[a[i], pt[i], b[i]] for i in range(3)]
            det = (
                m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
            )
            if det % p:
                return a, b
    raise AssertionError("unreachable")


def _projective_points(p: int):
    yield (1, 0, 0)
    for x in range(p):
        yield (x, 1, 0)
    for x, y in product(range(p), repeat=2):
        yield (x, y, 1)


def _tables(G: TernaryForm, p: int) -> tuple[np.ndarray, np.ndarray]:
    d = G.degree
    table = np.zeros((d + 1, d + 1), dtype=np.int64)  # table[j][i]: coefficient of x^i y^j (z = 1)
    line = np.zeros(d + 1, dtype=np.int64)  # F(x, 1, 0)
    for (i, j, _), c in G.items():
        table[j][i] = (table[j][i] + c) % p
    for (i, j, l), c in G.items():
        if l == 0:
            line[i] = (line[i] + c) % p
    return table, line


def count_points(F: TernaryForm, fq: Fq) -> int:
    """#{P in P^2(F_q) : F(P) = 0} via one Frobenius gcd per x-coordinate."""
    p, k = fq.p, fq.k
    if F.degree != 4:
        raise ValueError("count_points expects a quartic")
    G = _normalize_chart(F, p)
    if G is None:
        return count_points_enumerate(F, fq)
    table, line = _tables(G, p)
    lead = int(table[4][0])
    lead_inv = pow(lead, -1, p)
    affine = _count_affine(table[:5], lead_inv, p, k, fq.log, fq.exp)
    # z = 0: points (x:1:0), plus (1:0:0) when the x^4 coefficient vanishes
    infinity = _count_line(line, p, k, fq.log, fq.exp) + (1 if line[4] == 0 else 0)
    return int(affine + infinity)


def count_points_enumerate(F: TernaryForm, fq: Fq) -> int:
    """Reference count by enumerating every point of P^2(F_q)."""
    p, k = fq.p, fq.k
    G = _reduce_form(F, p)
    table, line = _tables(G, p)
    affine = _count_plane(table, p, k, fq.log, fq.exp)
    infinity = _count_line(line, p, k, fq.log, fq.exp) + (1 if line[G.degree] == 0 else 0)
    return int(affine + infinity)


def singular_points(F: TernaryForm, p: int) -> list[tuple[int, int, int]]:
    """F_p-rational points where F and all its partials vanish."""
    G = _reduce_form(F, p)
    parts = [G] + list(G.gradient())
    return [pt for pt in _projective_points(p) if all(h.eval_mod(*pt, p) == 0 for h in parts)]


def has_good_reduction(F: TernaryForm, p: int) -> bool:
    try:
        return not singular_points(F, p)
    except BadReductionError:
        return False


@dataclass(frozen=True)
class LPolynomial:
    p: int
    e1: int
    e2: int
    e3: int

    def coefficients(self) -> tuple[int, ...]:
        p, e1, e2, e3 = self.p, self.e1, self.e2, self.e3
        return (1, -e1, e2, -e3, p * e2, -(p**2) * e1, p**3)

    def __call__(self, t: int) -> int:
        return sum(c * t**i for i, c in enumerate(self.coefficients()))

    def point_count(self, k: int) -> int:
        """N_k = p^k + 1 - sum of k-th powers of the Frobenius eigenvalues."""
        # P(T) = prod (1 - a_i T), so the coefficient of T^m is (-1)^m e_m
        c = self.coefficients()
        e = [(-1) ** m * c[m] for m in range(7)] + [0] * max(0, k - 6)
        s: list[int] = []
        for n in range(1, k + 1):
            val = (-1) ** (n - 1) * n * e[n]
            for i in range(1, n):
                val += (-1) ** (i - 1) * e[i] * s[n - i - 1]
            s.append(val)
        return self.p**k + 1 - s[-1]


def l_polynomial(F: TernaryForm, p: int, counts: tuple[int, int, int] | None = None) -> LPolynomial:
    if not has_good_reduction(F, p):
        raise BadReductionError(f"F has a singular F_{p}-point")
    if counts is None:
        counts = tuple(count_points(F, field(p, k)) for k in (1, 2, 3))
    s1, s2, s3 = (p**k + 1 - n for k, n in zip((1, 2, 3), counts))
    for k, s in zip((1, 2, 3), (s1, s2, s3)):
        if s * s > 36 * p**k:
            raise ArithmeticError(f"Weil bound violated for k={k}: s={s}")
    num2, num3 = s1 * s1 - s2, s1**3 - 3 * s1 * s2 + 2 * s3
    if num2 % 2 or num3 % 6:
        raise ArithmeticError(f"non-integral symmetric functions from counts {counts}")
    return LPolynomial(p, s1, num2 // 2, num3 // 6)


def jacobian_order(F: TernaryForm, p: int) -> int:
    order = l_polynomial(F, p)(1)
    assert order > 0
    return order


def resolve_curve(label_or_form) -> TernaryForm:
    if isinstance(label_or_form, TernaryForm):
        return label_or_form
    return catalog()[label_or_form].form
