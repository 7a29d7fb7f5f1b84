"""Mordell-Weil sieve bookkeeping on coefficient triples (n1, n2, n3).

A constraint is an explicit set of residue triples modulo a componentwise
modulus (m1, m2, m3). Combining lifts both sides to the componentwise lcm
and intersects.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from itertools import product
from math import lcm
from typing import Iterable, Sequence

from .models import component_group, fixture

Triple = tuple[int, int, int]


@dataclass(frozen=True)
class SieveConstraint:
    modulus: Triple
    allowed: frozenset[Triple]
    provenance: str = ""

    def __post_init__(self):
        if any(m < 1 for m in self.modulus):
            raise ValueError("moduli must be positive")
        for t in self.allowed:
            if any(not 0 <= a < m for a, m in zip(t, self.modulus)):
                raise ValueError(f"triple {t} not reduced modulo {self.modulus}")


@dataclass(frozen=True)
class SieveState:
    modulus: Triple
    survivors: frozenset[Triple]

    @classmethod
    def full(cls) -> "SieveState":
        return cls((1, 1, 1), frozenset({(0, 0, 0)}))

    def reduce(self, modulus: Sequence[int]) -> frozenset[Triple]:
        """Survivors reduced modulo a componentwise divisor of the state's modulus."""
        if any(m % d for m, d in zip(self.modulus, modulus)):
            raise ValueError(f"{tuple(modulus)} does not divide {self.modulus}")
        return frozenset(tuple(a % d for a, d in zip(t, modulus)) for t in self.survivors)

    def is_empty(self) -> bool:
        return not self.survivors


def _lift(triples: Iterable[Triple], old: Triple, new: Triple) -> set[Triple]:
    out = set()
    for t in triples:
        ranges = [range(a, n, o) for a, o, n in zip(t, old, new)]
        out.update(product(*ranges))
    return out


def combine(state: SieveState, c: SieveConstraint) -> SieveState:
    new = tuple(lcm(a, b) for a, b in zip(state.modulus, c.modulus))
    lifted_state = _lift(state.survivors, state.modulus, new)
    if not lifted_state:
        return SieveState(new, frozenset())
    lifted_c = _lift(c.allowed, c.modulus, new)
    return SieveState(new, frozenset(lifted_state & lifted_c))


def combine_all(constraints: Iterable[SieveConstraint], state: SieveState | None = None) -> SieveState:
    state = state or SieveState.full()
    for c in constraints:
        state = combine(state, c)
    return state


def _as_vector(v) -> tuple[int, ...]:
    return tuple(v) if isinstance(v, (tuple, list)) else (v,)


def linear_constraint(coeffs, targets, modulus: int, provenance: str = "") -> SieveConstraint:
    """{n mod m : n1 c1 + n2 c2 + n3 c3 in targets}; the c_i may be vectors over Z/m."""
    if modulus < 1:
        raise ValueError("modulus must be positive")
    cs = [_as_vector(c) for c in coeffs]
    r = len(cs[0])
    if len(cs) != 3 or any(len(c) != r for c in cs):
        raise ValueError("need three coefficient vectors of equal length")
    goal = {tuple(a % modulus for a in _as_vector(t)) for t in targets}
    allowed = set()
    for n in product(range(modulus), repeat=3):
        val = tuple(sum(n[i] * cs[i][k] for i in range(3)) % modulus for k in range(r))
        if val in goal:
            allowed.add(n)
    return SieveConstraint((modulus,) * 3, frozenset(allowed), provenance)


# -- constraint files -------------------------------------------------------

_VEC = re.compile(r"\(([^)]*)\)|(-?\d+)")


def _parse_values(text: str) -> list:
    out = []
    for m in _VEC.finditer(text):
        if m.group(1) is not None:
            out.append(tuple(int(v) for v in m.group(1).split(",")))
        else:
            out.append(int(m.group(2)))
    return out


def _parse_triple(token: str) -> Triple:
    token = token.strip()
    if "," in token or " " in token:
        vals = [int(v) for v in re.split(r"[,\s]+", token.strip("()")) if v]
    else:
        vals = [int(ch) for ch in token]  # compact form such as 021
    if len(vals) != 3:
        raise ValueError(f"bad residue triple {token!r}")
    return tuple(vals)


def parse_constraint_file(text: str) -> SieveConstraint:
    """Either ``mod m1 m2 m3`` followed by one triple per line, or a single
    ``linear c1 c2 c3 mod m targets t...`` line. ``# provenance: ...`` is kept.
    """
    provenance = ""
    modulus = None
    triples: set[Triple] = set()
    for raw in text.splitlines():
        line = raw.strip()
        if line.startswith("# provenance:"):
            provenance = line.split(":", 1)[1].strip()
            continue
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("linear"):
            m = re.fullmatch(r"linear\s+(.*?)\s+mod\s+(\d+)\s+targets\s+(.*)", line)
            if not m:
                raise ValueError(f"bad linear line {line!r}")
            coeffs = _parse_values(m.group(1))
            return linear_constraint(coeffs, _parse_values(m.group(3)), int(m.group(2)), provenance)
        if line.startswith("mod"):
            modulus = tuple(int(v) for v in line.split()[1:])
            if len(modulus) != 3:
                raise ValueError("mod line needs three moduli")
            continue
        if modulus is None:
            raise ValueError("residue triple before the mod header")
        t = _parse_triple(line)
        triples.add(tuple(a % m for a, m in zip(t, modulus)))
    if modulus is None:
        raise ValueError("missing mod header")
    return SieveConstraint(modulus, frozenset(triples), provenance)


def format_constraint(c: SieveConstraint) -> str:
    lines = []
    if c.provenance:
        lines.append(f"# provenance: {c.provenance}")
    lines.append("mod " + " ".join(map(str, c.modulus)))
    lines += [" ".join(map(str, t)) for t in sorted(c.allowed)]
    return "\n".join(lines) + "\n"


@lru_cache(maxsize=None)
def fixture_constraint(name: str) -> SieveConstraint:
    text = resources.files("fermat237").joinpath(f"data/{name}.txt").read_text()
    return parse_constraint_file(text)


# -- the C5 chain -------------------------------------------------------------

# Components met by the reductions of P0..P3, and the multiplicity-one
# components allowed for points in the 2-adic / 3-adic subsets.
C5_REDUCTIONS = {
    2: {"points": ("C", "A", "A", "F"), "allowed": ("C", "E", "F")},
    3: {"points": ("B", "C", "B", "A"), "allowed": ("C",)},
}


def component_constraint(p: int) -> SieveConstraint:
    """Condition from the component group at p, computed from the fiber fixture.

    Q_i = [P_i - P_0] maps to e(P_i) - e(P_0) in Phi; a point in the subset
    reduces to an allowed component X, so n1 Q1 + n2 Q2 + n3 Q3 must equal
    the image of e(X) - e(P_0) for some allowed X.
    """
    data = fixture(f"c5_p{p}")
    group = component_group(data)
    info = C5_REDUCTIONS[p]
    base = data.unit(info["points"][0])

    def image(label: str) -> tuple[int, ...]:
        return group.element([a - b for a, b in zip(data.unit(label), base)])

    qs = [image(lbl) for lbl in info["points"][1:]]
    targets = [image(lbl) for lbl in info["allowed"]]
    factors = set(group.invariant_factors)
    if len(factors) != 1:
        raise ValueError("expected a group (Z/n)^r")
    n = factors.pop()
    return linear_constraint(qs, targets, n, provenance=f"component group at {p}")


def c5_chain_steps() -> list[tuple[str, SieveState]]:
    """Each step's name and the state after it."""
    steps = [
        ("2", component_constraint(2)),
        ("23", fixture_constraint("sieve_p23")),
        ("3", component_constraint(3)),
        ("97", fixture_constraint("sieve_p97")),
        ("13", fixture_constraint("sieve_p13")),
    ]
    out = []
    state = SieveState.full()
    for name, c in steps:
        state = combine(state, c)
        out.append((name, state))
    return out


def run_c5_chain() -> SieveState:
    """Final state of the chain; empty means no point of the C5 subset survives.

    Assumes, as the source argument does, that the index of the subgroup
    generated by Q1, Q2, Q3 in J5(Q) is prime to 14.
    """
    return c5_chain_steps()[-1][1]
