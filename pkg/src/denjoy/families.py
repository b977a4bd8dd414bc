"""Parameterized families of open sets: the finitely supported cube family,
blocks realized as itinerary prefixes, and irrational rotations tending to p/q."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Tuple

from .circleset import Arc, RegularOpenSet, normalize, symmetry_order
from .errors import AllZeroBlockError, EmptyGammaError
from .exactreal import Alpha, QuadraticAffine, RotationNumber
from .itinerary import context, itinerary, orbit_points

QA = QuadraticAffine


@dataclass(frozen=True)
class GammaVector:
    """Finitely supported gamma with 0 <= gamma_i <= 1/(i+2)."""

    entries: Tuple[Tuple[int, Fraction], ...]

    def __post_init__(self):
        seen = set()
        for i, g in self.entries:
            if i < 0 or i in seen:
                raise ValueError(f"bad or repeated index {i}")
            seen.add(i)
            if not 0 <= g <= Fraction(1, i + 2):
                raise ValueError(f"gamma_{i} = {g} outside [0, 1/{i + 2}]")

    @classmethod
    def from_mapping(cls, values: Mapping[int, object]) -> "GammaVector":
        return cls(tuple(sorted((int(i), Fraction(v)) for i, v in values.items())))

    @classmethod
    def parse(cls, text: str) -> "GammaVector":
        """``"0:1/4,3:1/10"``."""
        values: Dict[int, Fraction] = {}
        for part in text.split(","):
            part = part.strip()
            if part:
                i, _, v = part.partition(":")
                values[int(i)] = Fraction(v)
        return cls.from_mapping(values)

    def as_dict(self) -> Dict[int, Fraction]:
        return dict(self.entries)

    def __str__(self):
        return ",".join(f"{i}:{g}" for i, g in self.entries)


def gamma_openset(gamma: GammaVector, alpha: Alpha) -> RegularOpenSet:
    """Union over gamma_i > 0 of the arcs (1/(i+2) - gamma_i**3, 1/(i+2) + gamma_i**3)."""
    arcs = []
    for i, g in gamma.entries:
        if g > 0:
            c, rad = Fraction(1, i + 2), g ** 3
            arcs.append(Arc(alpha.qa(c - rad), alpha.qa(c + rad)))
    if not arcs:
        raise EmptyGammaError("gamma has no positive entry")
    U = normalize(arcs)
    # radii (1/(i+2))**3 stay below the center gaps 1/((i+2)(i+3)), so nothing merges
    if len(U.arcs) != len(arcs) or symmetry_order(U) != 1:
        raise AssertionError(f"gamma family invariant broken for {gamma}")
    return U


def _circle_gap(x: QA, y: QA) -> QA:
    d = (x - y).mod1()
    return d if d * 2 <= 1 else 1 - d


def density_openset(block: str, r: RotationNumber, x0) -> Tuple[RegularOpenSet, Fraction]:
    """An open set whose itinerary of x0 under r starts with ``block``.

    Balls of a dyadic radius eps around the orbit points with symbol 1, eps at
    most a third of the smallest gap among the first len(block) orbit points.
    A rational eps keeps the whole orbit of x0 off the frontier when r is
    irrational.
    """
    if "1" not in block:
        raise AllZeroBlockError("block has no 1; use the complementary block on the dual set")
    if r.is_rational:
        raise ValueError("density construction needs an irrational rotation")
    alpha = r.alpha
    x0 = alpha.qa(x0).mod1()
    pts = orbit_points(x0, r, len(block) - 1)
    gap = alpha.qa(1)
    for i in range(len(pts)):
        for j in range(i):
            d = _circle_gap(pts[i], pts[j])
            if d < gap:
                gap = d
    eps = Fraction(1, 4)
    while eps * 3 > gap:
        eps /= 2
    U = normalize(Arc((p - eps).mod1(), (p + eps).mod1()) for p, s in zip(pts, block) if s == "1")
    got = itinerary(x0, context(U, r), len(block))
    if got != block:
        raise AssertionError(f"density construction produced {got}, wanted {block}")
    return U, eps


def approximating_rotations(p: int, q: int, alpha: Alpha, k: int) -> List[RotationNumber]:
    """p/q + alpha/10**n mod 1 for n = 1..k."""
    if math.gcd(p, q) != 1 or k < 1:
        raise ValueError("need p/q in lowest terms and k >= 1")
    return [RotationNumber(QA(Fraction(p, q), Fraction(1, 10 ** n), alpha)) for n in range(1, k + 1)]
