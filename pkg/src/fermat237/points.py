"""Projective points with primitive integer coordinates."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm


@dataclass(frozen=True, order=True)
class ProjPoint:
    """A point (x:y:z) stored primitively with its first nonzero coordinate positive."""

    x: int
    y: int
    z: int

    def __post_init__(self):
        x, y, z = int(self.x), int(self.y), int(self.z)
        g = gcd(gcd(x, y), z)
        if g == 0:
            raise ValueError("(0:0:0) is not a projective point")
        first = next(c for c in (x, y, z) if c)
        if first < 0:
            g = -g
        object.__setattr__(self, "x", x // g)
        object.__setattr__(self, "y", y // g)
        object.__setattr__(self, "z", z // g)

    @classmethod
    def from_rationals(cls, *coords) -> "ProjPoint":
        fr = [Fraction(c) for c in coords]
        den = lcm(*(f.denominator for f in fr))
        return cls(*(int(f * den) for f in fr))

    @classmethod
    def parse(cls, text: str) -> "ProjPoint":
        parts = text.strip().strip("()").split(":")
        if len(parts) != 3:
            raise ValueError(f"expected x:y:z, got {text!r}")
        return cls(*(int(p) for p in parts))

    def __iter__(self):
        return iter((self.x, self.y, self.z))

    def __str__(self) -> str:
        return f"{self.x}:{self.y}:{self.z}"

    def reduce(self, p: int) -> tuple[int, int, int]:
        """Normalized image in P^2(F_p): first nonzero coordinate scaled to 1."""
        c = [self.x % p, self.y % p, self.z % p]
        first = next(v for v in c if v)
        inv = pow(first, -1, p)
        return tuple(v * inv % p for v in c)
