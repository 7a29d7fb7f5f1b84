"""Integer matrices: Smith and Hermite normal forms, integer kernels."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass(frozen=True)
class IntMatrix:
    entries: tuple[tuple[int, ...], ...]
    ncols: int

    def __init__(self, rows: Sequence[Sequence[int]], ncols: int | None = None):
        rows = tuple(tuple(int(a) for a in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols required for an empty matrix")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "ncols", ncols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def transpose(self) -> "IntMatrix":
        return IntMatrix([[self.entries[i][j] for i in range(self.nrows)] for j in range(self.ncols)], self.nrows)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = other.transpose().entries
        return IntMatrix([[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.entries], other.ncols)

    def apply(self, vec: Sequence[int]) -> list[int]:
        return [sum(a * b for a, b in zip(r, vec)) for r in self.entries]

    def is_symmetric(self) -> bool:
        return self.nrows == self.ncols and all(
            self.entries[i][j] == self.entries[j][i] for i in range(self.nrows) for j in range(i)
        )


@dataclass(frozen=True)
class SmithForm:
    diag: tuple[int, ...]
    left: IntMatrix
    right: IntMatrix


def smith_normal_form(m: IntMatrix) -> SmithForm:
    """Smith normal form with unimodular transforms: ``left @ m @ right`` is diagonal.

    The diagonal has length min(rows, cols), entries are nonnegative and
    each divides the next.
    """
    r, c = m.shape
    a = m.rows()
    u = IntMatrix.identity(r).rows()
    v = IntMatrix.identity(c).rows()

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, k):
        for row in a:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    def neg_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    for t in range(min(r, c)):
        # pivot: smallest nonzero absolute value in the trailing block
        while True:
            best = None
            for i in range(t, r):
                for j in range(t, c):
                    if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return _finish(a, u, v, r, c)
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = a[t][t]
            clean = True
            for i in range(t + 1, r):
                q = a[i][t] // p
                if q:
                    add_row(i, t, -q)
                if a[i][t]:
                    clean = False
            for j in range(t + 1, c):
                q = a[t][j] // p
                if q:
                    add_col(j, t, -q)
                if a[t][j]:
                    clean = False
            if not clean:
                continue
            # enforce divisibility of the remaining block by the pivot
            bad = next(
                ((i, j) for i in range(t + 1, r) for j in range(t + 1, c) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if a[t][t] < 0:
            neg_row(t)
    return _finish(a, u, v, r, c)


def _finish(a, u, v, r, c) -> SmithForm:
    for t in range(min(r, c)):
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    diag = tuple(a[t][t] for t in range(min(r, c)))
    return SmithForm(diag, IntMatrix(u, r), IntMatrix(v, c))


def invariant_factors(m: IntMatrix) -> tuple[int, ...]:
    return smith_normal_form(m).diag


def hermite_normal_form(m: IntMatrix) -> IntMatrix:
    """Row-style HNF: echelon form, positive pivots, entries above pivots reduced; zero rows dropped."""
    a = m.rows()
    rows, cols = m.shape
    piv_row = 0
    for j in range(cols):
        if piv_row >= rows:
            break
        # euclid down the column
        while True:
            nz = [i for i in range(piv_row, rows) if a[i][j]]
            if not nz:
                break
            k = min(nz, key=lambda i: abs(a[i][j]))
            a[piv_row], a[k] = a[k], a[piv_row]
            done = True
            for i in range(piv_row + 1, rows):
                if a[i][j]:
                    q = a[i][j] // a[piv_row][j]
                    a[i] = [x - q * y for x, y in zip(a[i], a[piv_row])]
                    if a[i][j]:
                        done = False
            if done:
                break
        if piv_row < rows and a[piv_row][j]:
            if a[piv_row][j] < 0:
                a[piv_row] = [-x for x in a[piv_row]]
            p = a[piv_row][j]
            for i in range(piv_row):
                q = a[i][j] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[piv_row])]
            piv_row += 1
    return IntMatrix([row for row in a if any(row)], cols)


def hnf_kernel_basis(v: Sequence[int]) -> IntMatrix:
    """Rows form a Z-basis (in Hermite normal form) of {x : v·x = 0}."""
    v = [int(a) for a in v]
    n = len(v)
    if not any(v):
        raise ValueError("zero vector has no proper kernel")
    # column operations on v, tracked in the unimodular matrix t, until v·t = (g, 0, ..., 0)
    w = list(v)
    t = IntMatrix.identity(n).rows()  # columns of t are the transformed basis vectors
    while sum(1 for a in w if a) > 1:
        k = min((i for i in range(n) if w[i]), key=lambda i: abs(w[i]))
        for i in range(n):
            if i != k and w[i]:
                q = w[i] // w[k]
                w[i] -= q * w[k]
                for row in t:
                    row[i] -= q * row[k]
    k = next(i for i in range(n) if w[i])
    basis = [[t[r][i] for r in range(n)] for i in range(n) if i != k]
    if not basis:
        return IntMatrix([], n)
    return hermite_normal_form(IntMatrix(basis, n))


def solve_in_basis(basis: IntMatrix, vec: Sequence[int]) -> list[int]:
    """Integer coefficients c with c @ basis == vec, for a basis in row echelon form."""
    rows = basis.rows()
    rest = [Fraction(a) for a in vec]
    coeffs = []
    for row in rows:
        j = next(i for i, a in enumerate(row) if a)
        q = rest[j] / row[j]
        if q.denominator != 1:
            raise ValueError("vector is not an integer combination of the basis")
        coeffs.append(int(q))
        rest = [a - q * b for a, b in zip(rest, row)]
    if any(rest):
        raise ValueError("vector not in the span of the basis")
    return coeffs
