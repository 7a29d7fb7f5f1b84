"""Component groups of Neron models from the intersection data of a regular special fiber.

The group is ker(m) / rowspan(M), where m is the multiplicity vector viewed
as a map Z^n -> Z and M is the intersection matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from itertools import product
from typing import Mapping, Sequence

from .linalg import IntMatrix, hnf_kernel_basis, smith_normal_form, solve_in_basis


class FiberDataError(ValueError):
    pass


@dataclass(frozen=True)
class IntersectionData:
    labels: tuple[str, ...]
    mult: tuple[int, ...]
    matrix: IntMatrix

    def __post_init__(self):
        n = len(self.mult)
        if self.matrix.shape != (n, n) or len(self.labels) != n:
            raise FiberDataError("labels, multiplicities and matrix sizes disagree")
        if any(m < 1 for m in self.mult):
            raise FiberDataError("multiplicities must be positive")

    @property
    def size(self) -> int:
        return len(self.mult)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def unit(self, label: str) -> list[int]:
        e = [0] * self.size
        e[self.index(label)] = 1
        return e

    def permuted(self, order: Sequence[int]) -> "IntersectionData":
        rows = self.matrix.rows()
        return IntersectionData(
            tuple(self.labels[i] for i in order),
            tuple(self.mult[i] for i in order),
            IntMatrix([[rows[i][j] for j in order] for i in order]),
        )


def validate_fiber(data: IntersectionData) -> bool:
    """Symmetric matrix whose rows are orthogonal to the multiplicities."""
    return data.matrix.is_symmetric() and not any(data.matrix.apply(data.mult))


@dataclass(frozen=True)
class ComponentGroup:
    invariant_factors: tuple[int, ...]
    _kernel: IntMatrix
    _transform: IntMatrix
    _diag: tuple[int, ...]

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def element(self, vec: Sequence[int]) -> tuple[int, ...]:
        """Image of a degree-zero combination of components (m . vec = 0) in the group."""
        coeffs = solve_in_basis(self._kernel, vec)
        coords = IntMatrix([coeffs]) @ self._transform
        out = []
        for c, d in zip(coords.entries[0], self._diag):
            if d != 1:
                out.append(c % d)
        return tuple(out)

    def __str__(self) -> str:
        if not self.invariant_factors:
            return "0"
        return " x ".join(f"Z/{d}" for d in self.invariant_factors)


def component_group(data: IntersectionData) -> ComponentGroup:
    if not validate_fiber(data):
        raise FiberDataError("M is not symmetric or M.m != 0")
    if data.size == 1:
        return ComponentGroup((), IntMatrix([], 1), IntMatrix([], 0), ())
    kernel = hnf_kernel_basis(data.mult)
    rel = IntMatrix([solve_in_basis(kernel, row) for row in data.matrix.rows()], kernel.nrows)
    snf = smith_normal_form(rel)
    if any(d == 0 for d in snf.diag) or len(snf.diag) < kernel.nrows:
        raise FiberDataError("component group has positive free rank (disconnected dual graph?)")
    factors = tuple(d for d in snf.diag if d != 1)
    return ComponentGroup(factors, kernel, snf.right, snf.diag)


def find_isomorphism(
    group: ComponentGroup,
    targets: Mapping[tuple[int, ...], tuple[int, ...]],
) -> list[list[int]] | None:
    """A matrix A over Z/n with A.x = y for every x -> y, for a group (Z/n)^r; None if none exists.

    Only groups with all invariant factors equal are handled (enough for
    the fixtures); the search runs over all invertible r x r matrices.
    """
    factors = set(group.invariant_factors)
    if len(factors) != 1:
        raise ValueError("find_isomorphism needs a group of the form (Z/n)^r")
    n = factors.pop()
    r = len(group.invariant_factors)
    for flat in product(range(n), repeat=r * r):
        a = [list(flat[i * r:(i + 1) * r]) for i in range(r)]
        if not _invertible_mod(a, n):
            continue
        if all(
            tuple(sum(a[i][j] * x[j] for j in range(r)) % n for i in range(r)) == tuple(t % n for t in y)
            for x, y in targets.items()
        ):
            return a
    return None


def _invertible_mod(a: list[list[int]], n: int) -> bool:
    from math import gcd

    from .forms import determinant

    return gcd(int(determinant(a)) % n, n) == 1


# -- file format --------------------------------------------------------------


def parse_matrix_file(text: str) -> IntersectionData:
    """Line 1: n; line 2: multiplicities; n matrix rows; optional label line. '#' starts a comment."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    try:
        n = int(lines[0])
        mult = tuple(int(v) for v in lines[1].split())
        rows = [[int(v) for v in lines[2 + i].split()] for i in range(n)]
    except (IndexError, ValueError) as exc:
        raise FiberDataError(f"malformed matrix file: {exc}") from None
    if len(mult) != n or any(len(r) != n for r in rows):
        raise FiberDataError("dimension mismatch in matrix file")
    rest = lines[2 + n:]
    labels = tuple(rest[0].split()) if rest else tuple(f"c{i}" for i in range(n))
    if len(labels) != n:
        raise FiberDataError("label line has the wrong length")
    return IntersectionData(labels, mult, IntMatrix(rows, n))


def format_matrix_file(data: IntersectionData) -> str:
    lines = [str(data.size), " ".join(map(str, data.mult))]
    lines += [" ".join(f"{v:3d}" for v in row) for row in data.matrix.rows()]
    lines.append(" ".join(data.labels))
    return "\n".join(lines) + "\n"


def cycle_fiber(n: int) -> IntersectionData:
    """Kodaira type I_n: a cycle of n reduced components."""
    if n < 2:
        raise ValueError("n >= 2")
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = -2
        rows[i][(i + 1) % n] += 1
        rows[i][(i - 1) % n] += 1
    return IntersectionData(tuple(f"c{i}" for i in range(n)), (1,) * n, IntMatrix(rows))


@lru_cache(maxsize=None)
def fixture(name: str) -> IntersectionData:
    """Shipped fibers: ``c5_p3`` and ``c5_p2``."""
    text = resources.files("fermat237").joinpath(f"data/{name}.mat").read_text()
    return parse_matrix_file(text)
