"""Exact polynomial arithmetic.

`TernaryForm` is a sparse homogeneous polynomial in x, y, z with rational
coefficients. Integral coefficients are stored as plain ``int`` and only
promoted to ``Fraction`` when needed, which keeps the covariant
computations (forms of degree 42 with several hundred terms) fast.

`UniPoly` is a dense univariate polynomial over any coefficient ring that
supports ``+ - *`` (rationals, or another `UniPoly`); `resultant` works on
polynomials in ``v`` whose coefficients are polynomials in ``u``.
"""

from __future__ import annotations

import heapq
import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union

Rational = Union[int, Fraction]
Exponent = tuple[int, int, int]

AXES = {"x": 0, "y": 1, "z": 2}


def normalize(c: Rational) -> Rational:
    """Demote a Fraction with denominator 1 to int."""
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _rational(c) -> Rational:
    if isinstance(c, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return normalize(c)
    if isinstance(c, str):
        return normalize(Fraction(c))
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


def _axis(axis) -> int:
    if isinstance(axis, str):
        return AXES[axis]
    if axis in (0, 1, 2):
        return axis
    raise ValueError(f"bad axis {axis!r}")


class DegreeError(ValueError):
    """Raised when forms of different degrees are added or a degree check fails."""


class EliminationError(ValueError):
    """Raised when reduction against a form is impossible for the chosen axis."""


class TernaryForm:
    """Homogeneous polynomial in x, y, z with exact rational coefficients.

    Instances are immutable. The term map is kept sorted by exponent triple,
    so equal polynomials have identical term maps and hash alike.
    """

    __slots__ = ("_terms", "degree", "_hash")

    def __init__(self, terms: Mapping[Exponent, Rational] | Iterable = (), degree: int | None = None):
        acc: dict[Exponent, Rational] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exp, c in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != 3 or min(exp) < 0:
                raise ValueError(f"bad exponent {exp}")
            c = _rational(c)
            if c:
                acc[exp] = acc.get(exp, 0) + c
        self._terms = {e: normalize(c) for e, c in sorted(acc.items()) if c}
        degs = {sum(e) for e in self._terms}
        if len(degs) > 1:
            raise DegreeError(f"inhomogeneous terms of degrees {sorted(degs)}")
        if degs:
            (d,) = degs
            if degree is not None and degree != d:
                raise DegreeError(f"terms have degree {d}, declared {degree}")
            degree = d
        self.degree = 0 if degree is None else degree
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Exponent, Rational], degree: int) -> "TernaryForm":
        # trusted constructor: terms already nonzero, normalized and homogeneous
        f = object.__new__(cls)
        f._terms = dict(sorted(terms.items()))
        f.degree = degree
        f._hash = None
        return f

    @classmethod
    def monomial(cls, exp: Exponent, coeff: Rational = 1) -> "TernaryForm":
        return cls({exp: coeff})

    @classmethod
    def constant(cls, c: Rational) -> "TernaryForm":
        return cls({(0, 0, 0): c}, degree=0)

    @classmethod
    def zero(cls, degree: int = 0) -> "TernaryForm":
        return cls._raw({}, degree)

    @classmethod
    def parse(cls, text: str) -> "TernaryForm":
        return cls(parse_poly(text, "xyz"))

    # -- basic protocol -------------------------------------------------

    @property
    def terms(self) -> dict[Exponent, Rational]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, exp: Exponent) -> Rational:
        return self._terms.get(tuple(exp), 0)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[Exponent]:
        return iter(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        if isinstance(other, TernaryForm):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self._terms
            return self._terms == {(0, 0, 0): other}
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"TernaryForm({format_poly(self._terms, 'xyz')!r})"

    def __str__(self) -> str:
        return format_poly(self._terms, "xyz")

    # -- arithmetic -----------------------------------------------------

    def _check_add(self, other: "TernaryForm") -> int:
        if self._terms and other._terms and self.degree != other.degree:
            raise DegreeError(f"cannot add forms of degree {self.degree} and {other.degree}")
        return self.degree if self._terms else other.degree

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TernaryForm.constant(other) if other else TernaryForm.zero(self.degree)
        if not isinstance(other, TernaryForm):
            return NotImplemented
        deg = self._check_add(other)
        acc = dict(self._terms)
        for e, c in other._terms.items():
            s = acc.get(e, 0) + c
            if s:
                acc[e] = normalize(s)
            else:
                acc.pop(e, None)
        return TernaryForm._raw(acc, deg)

    __radd__ = __add__

    def __neg__(self):
        return TernaryForm._raw({e: -c for e, c in self._terms.items()}, self.degree)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return self + (-other)
        if not isinstance(other, TernaryForm):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = _rational(other)
            if not other:
                return TernaryForm.zero(self.degree)
            return TernaryForm._raw({e: normalize(c * other) for e, c in self._terms.items()}, self.degree)
        if not isinstance(other, TernaryForm):
            return NotImplemented
        acc: dict[Exponent, Rational] = {}
        get = acc.get
        for (a0, a1, a2), c in self._terms.items():
            for (b0, b1, b2), d in other._terms.items():
                e = (a0 + b0, a1 + b1, a2 + b2)
                acc[e] = get(e, 0) + c * d
        acc = {e: normalize(c) for e, c in acc.items() if c}
        return TernaryForm._raw(acc, self.degree + other.degree)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, n: int) -> "TernaryForm":
        if n < 0:
            raise ValueError("negative power")
        result = TernaryForm.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- calculus and evaluation ---------------------------------------

    def diff(self, axis) -> "TernaryForm":
        i = _axis(axis)
        acc = {}
        for e, c in self._terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                acc[tuple(ne)] = normalize(c * e[i])
        return TernaryForm._raw(acc, max(self.degree - 1, 0))

    def gradient(self) -> tuple["TernaryForm", "TernaryForm", "TernaryForm"]:
        return self.diff(0), self.diff(1), self.diff(2)

    def __call__(self, x, y, z):
        """Evaluate exactly (works for ints, Fractions, or any ring elements)."""
        px = [1]
        py = [1]
        pz = [1]
        d = self.degree
        for _ in range(d):
            px.append(px[-1] * x)
            py.append(py[-1] * y)
            pz.append(pz[-1] * z)
        total = 0
        for (i, j, k), c in self._terms.items():
            total = total + c * px[i] * py[j] * pz[k]
        return normalize(total) if isinstance(total, (int, Fraction)) else total

    def eval_mod(self, x: int, y: int, z: int, m: int) -> int:
        total = 0
        for (i, j, k), c in self._terms.items():
            total += c * pow(x, i, m) * pow(y, j, m) * pow(z, k, m)
        if isinstance(total, Fraction):
            total = total.numerator * pow(total.denominator, -1, m)
        return total % m

    def substitute(self, matrix: Sequence[Sequence[Rational]]) -> "TernaryForm":
        """Return F(g·(x,y,z)) for a 3×3 matrix g (row i gives the new i-th variable)."""
        lin = [TernaryForm({(1, 0, 0): r[0], (0, 1, 0): r[1], (0, 0, 1): r[2]}, degree=1) for r in matrix]
        powers = [[TernaryForm.constant(1)] for _ in range(3)]
        for i in range(3):
            for _ in range(self.degree):
                powers[i].append(powers[i][-1] * lin[i])
        out = TernaryForm.zero(self.degree)
        for (i, j, k), c in self._terms.items():
            out = out + powers[0][i] * powers[1][j] * powers[2][k] * c
        return out

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self._terms.values())

    def content(self) -> Fraction:
        """Positive rational c with self/c integral and primitive (0 for the zero form)."""
        from math import gcd, lcm

        if not self._terms:
            return Fraction(0)
        den = 1
        for c in self._terms.values():
            if isinstance(c, Fraction):
                den = lcm(den, c.denominator)
        g = 0
        for c in self._terms.values():
            g = gcd(g, int(c * den))
        return Fraction(g, den)

    def dehomogenize(self, axis="z") -> dict[tuple[int, int], Rational]:
        """Set one variable to 1; returns a bivariate term map in the two remaining variables."""
        i = _axis(axis)
        keep = [a for a in range(3) if a != i]
        acc: dict[tuple[int, int], Rational] = {}
        for e, c in self._terms.items():
            k = (e[keep[0]], e[keep[1]])
            acc[k] = acc.get(k, 0) + c
        return {k: normalize(c) for k, c in acc.items() if c}


def poly_arith(lhs: TernaryForm, rhs: TernaryForm, op: str) -> TernaryForm:
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    raise ValueError(f"unknown op {op!r}")


def _grevlex_key(e: Exponent) -> tuple[int, int, int]:
    # x > y > z; larger key = larger monomial
    return (e[0] + e[1] + e[2], -e[2], -e[1])


def reduce_mod_form(g: TernaryForm, f: TernaryForm, eliminated_var=None) -> TernaryForm:
    """Remainder of `g` on division by `f`.

    With ``eliminated_var`` set, `f` must contain a pure power of that variable
    of full degree; every term of `g` whose exponent in that variable reaches
    ``deg f`` is cancelled. With ``eliminated_var=None`` an axis with a pure power
    is chosen automatically, falling back to grevlex division (x > y > z).
    Either way the remainder is zero iff `f` divides `g`.
    """
    if f.is_zero():
        raise EliminationError("cannot reduce modulo the zero form")
    d = f.degree
    if eliminated_var is None:
        for a in (0, 1, 2):
            e = [0, 0, 0]
            e[a] = d
            if f.coeff(tuple(e)):
                return _reduce_lex(g, f, a)
        return _reduce_grevlex(g, f)
    a = _axis(eliminated_var)
    e = [0, 0, 0]
    e[a] = d
    if not f.coeff(tuple(e)):
        raise EliminationError(f"form has no pure power of {'xyz'[a]}")
    return _reduce_lex(g, f, a)


def _reduce_lex(g: TernaryForm, f: TernaryForm, a: int) -> TernaryForm:
    d = f.degree
    lead = [0, 0, 0]
    lead[a] = d
    lc = f.coeff(tuple(lead))
    inv = Fraction(1) / Fraction(lc) if lc not in (1, -1) else lc
    tail = [(e, c) for e, c in f.items() if e[a] < d]
    acc = dict(g.items())
    heap = [(-e[a], e) for e in acc if e[a] >= d]
    heapq.heapify(heap)
    while heap:
        _, e = heapq.heappop(heap)
        c = acc.pop(e, 0)
        if not c:
            continue
        q = normalize(c * inv)
        shift = list(e)
        shift[a] -= d
        for te, tc in tail:
            ne = (shift[0] + te[0], shift[1] + te[1], shift[2] + te[2])
            had = ne in acc
            v = acc.get(ne, 0) - q * tc
            if v:
                acc[ne] = normalize(v)
                if not had and ne[a] >= d:
                    heapq.heappush(heap, (-ne[a], ne))
            elif had:
                del acc[ne]
    return TernaryForm._raw(acc, g.degree)


def _reduce_grevlex(g: TernaryForm, f: TernaryForm) -> TernaryForm:
    lead = max(f, key=_grevlex_key)
    lc = f.coeff(lead)
    tail = [(e, c) for e, c in f.items() if e != lead]
    acc = dict(g.items())
    remainder: dict[Exponent, Rational] = {}
    heap = [(tuple(-k for k in _grevlex_key(e)), e) for e in acc]
    heapq.heapify(heap)
    while heap:
        _, e = heapq.heappop(heap)
        c = acc.pop(e, 0)
        if not c:
            continue
        if all(e[i] >= lead[i] for i in range(3)):
            q = Fraction(c) / lc
            shift = (e[0] - lead[0], e[1] - lead[1], e[2] - lead[2])
            for te, tc in tail:
                ne = (shift[0] + te[0], shift[1] + te[1], shift[2] + te[2])
                had = ne in acc
                v = acc.get(ne, 0) - q * tc
                if v:
                    acc[ne] = normalize(v)
                    if not had:
                        heapq.heappush(heap, (tuple(-k for k in _grevlex_key(ne)), ne))
                elif had:
                    del acc[ne]
        else:
            remainder[e] = c
    return TernaryForm._raw(remainder, g.degree)


# -- text format ----------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([a-z])|(\^)|([-+*()]))")


def parse_poly(text: str, variables: str = "xyz") -> dict[tuple[int, ...], Rational]:
    """Parse ASCII polynomial text into a term map keyed by exponent tuples.

    Grammar: sums of products of rational literals, variables, ``^`` powers
    and parenthesized subexpressions. Whitespace is insignificant.
    """
    tokens: list[tuple[str, str]] = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        num, var, caret, op = m.groups()
        if num:
            tokens.append(("num", num))
        elif var:
            if var not in variables:
                raise ValueError(f"unknown variable {var!r} (expected one of {variables!r})")
            tokens.append(("var", var))
        elif caret:
            tokens.append(("^", caret))
        else:
            tokens.append((op, op))
        pos = m.end()
    if not tokens:
        raise ValueError("empty polynomial")
    n = len(variables)
    zero_exp = (0,) * n
    state = {"i": 0}

    def peek():
        return tokens[state["i"]][0] if state["i"] < len(tokens) else None

    def take(kind=None):
        if state["i"] >= len(tokens):
            raise ValueError("unexpected end of input")
        tok = tokens[state["i"]]
        if kind is not None and tok[0] != kind:
            raise ValueError(f"expected {kind!r}, got {tok[1]!r}")
        state["i"] += 1
        return tok

    def add(p, q, sign=1):
        out = dict(p)
        for e, c in q.items():
            s = out.get(e, 0) + sign * c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return out

    def mul(p, q):
        out: dict = {}
        for e1, c1 in p.items():
            for e2, c2 in q.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return {e: c for e, c in out.items() if c}

    def expr():
        sign = 1
        if peek() in ("+", "-"):
            sign = -1 if take()[0] == "-" else 1
        acc = {e: sign * c for e, c in term().items()}
        while peek() in ("+", "-"):
            s = 1 if take()[0] == "+" else -1
            acc = add(acc, term(), s)
        return acc

    def term():
        acc = power()
        while True:
            k = peek()
            if k == "*":
                take()
                acc = mul(acc, power())
            elif k in ("num", "var", "("):
                acc = mul(acc, power())  # implicit multiplication
            else:
                return acc

    def power():
        base = atom()
        if peek() == "^":
            take()
            exp = int(take("num")[1])
            result = {zero_exp: 1}
            for _ in range(exp):
                result = mul(result, base)
            return result
        return base

    def atom():
        kind, val = take()
        if kind == "num":
            return {zero_exp: Fraction(val)}
        if kind == "var":
            e = [0] * n
            e[variables.index(val)] = 1
            return {tuple(e): 1}
        if kind == "(":
            inner = expr()
            take(")")
            return inner
        if kind == "-":
            return {e: -c for e, c in atom().items()}
        raise ValueError(f"unexpected token {val!r}")

    result = expr()
    if state["i"] != len(tokens):
        raise ValueError(f"trailing input at token {tokens[state['i']][1]!r}")
    return {e: normalize(Fraction(c)) for e, c in result.items() if c}


def _format_coeff(c: Rational) -> str:
    return str(c) if isinstance(c, int) else f"{c.numerator}/{c.denominator}"


def format_poly(terms: Mapping[tuple[int, ...], Rational], variables: str = "xyz") -> str:
    """Render a term map as text that `parse_poly` reads back."""
    if not terms:
        return "0"
    parts = []
    for e in sorted(terms, reverse=True):
        c = terms[e]
        mono = "*".join(
            v if k == 1 else f"{v}^{k}" for v, k in zip(variables, e) if k
        )
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        if mono:
            body = mono if a == 1 else f"{_format_coeff(a)}*{mono}"
        else:
            body = _format_coeff(a)
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# -- univariate polynomials and resultants -----------------------------------


class UniPoly:
    """Dense univariate polynomial; ``coeffs[i]`` is the coefficient of t^i.

    Coefficients may be rationals or any ring elements with ``+ - *`` and a
    zero test via ``bool``; trailing zeros are stripped so the leading
    coefficient is nonzero unless the polynomial is zero.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [normalize(c) if isinstance(c, (int, Fraction)) else c for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def parse(cls, text: str, var: str = "u") -> "UniPoly":
        terms = parse_poly(text, var)
        deg = max((e[0] for e in terms), default=-1)
        cs = [0] * (deg + 1)
        for (k,), c in terms.items():
            cs[k] = c
        return cls(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def lead(self):
        return self.coeffs[-1] if self.coeffs else 0

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == ((other,) if other else ())
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"UniPoly({list(self.coeffs)!r})"

    def __str__(self) -> str:
        if self.coeffs and all(isinstance(c, (int, Fraction)) for c in self.coeffs):
            return format_poly({(i,): c for i, c in enumerate(self.coeffs) if c}, "u")
        return repr(self)

    def _lift(self, other):
        if isinstance(other, UniPoly):
            return other
        return UniPoly([other])

    def __add__(self, other):
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return UniPoly([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            return UniPoly([c * other for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UniPoly":
        out = UniPoly([1])
        for _ in range(n):
            out = out * self
        return out

    def __call__(self, t):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        """Euclidean division over a field of rationals."""
        if not other:
            raise ZeroDivisionError("division by zero polynomial")
        rem = [Fraction(c) for c in self.coeffs]
        lc = Fraction(other.lead())
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly(), UniPoly(rem)
        quot = [Fraction(0)] * (dq + 1)
        for k in range(dq, -1, -1):
            q = rem[k + other.degree] / lc
            quot[k] = q
            if q:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= q * b
        return UniPoly(quot), UniPoly(rem[: other.degree])

    def __floordiv__(self, other):
        return self.divmod(self._lift(other))[0]

    def __mod__(self, other):
        return self.divmod(self._lift(other))[1]

    def exact_div(self, other) -> "UniPoly":
        q, r = self.divmod(self._lift(other))
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def divides(self, other: "UniPoly") -> bool:
        return not (other % self)


def _exact_div(a, b):
    if isinstance(a, UniPoly) or isinstance(b, UniPoly):
        return UniPoly([a]).exact_div(b) if not isinstance(a, UniPoly) else a.exact_div(b)
    q = Fraction(a) / Fraction(b)
    return normalize(q)


def determinant(matrix: Sequence[Sequence]) -> object:
    """Fraction-free (Bareiss) determinant over an exact domain."""
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if not m[k][k]:
            for r in range(k + 1, n):
                if m[r][k]:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = _exact_div(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def sylvester_matrix(f: UniPoly, g: UniPoly) -> list[list]:
    m, n = f.degree, g.degree
    size = m + n
    rows = []
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for i in range(n):
        rows.append([0] * i + fc + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gc + [0] * (size - n - 1 - i))
    return rows


def resultant(f: UniPoly, g: UniPoly) -> UniPoly:
    """Sylvester resultant of two polynomials in v whose coefficients lie in Q[u].

    Scalar coefficients are allowed; the result is always returned as a
    `UniPoly` in u.
    """
    if not f or not g:
        raise ValueError("resultant of a zero polynomial")
    if f.degree == 0 and g.degree == 0:
        return UniPoly([1])
    det = determinant(sylvester_matrix(f, g))
    return det if isinstance(det, UniPoly) else UniPoly([det])


def bivariate_to_unipoly(terms: Mapping[tuple[int, int], Rational]) -> UniPoly:
    """Turn a term map in (u, v) into a polynomial in v with coefficients in Q[u]."""
    dv = max((e[1] for e in terms), default=-1)
    cols: list[dict[int, Rational]] = [dict() for _ in range(dv + 1)]
    for (i, j), c in terms.items():
        cols[j][i] = c
    out = []
    for col in cols:
        du = max(col, default=-1)
        out.append(UniPoly([col.get(k, 0) for k in range(du + 1)]))
    return UniPoly(out)
