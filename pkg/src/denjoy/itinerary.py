"""Orbits of a rigid rotation and their 0/1 itineraries relative to an open set."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from .circleset import MaybeOpenSet, RegularOpenSet, dual, rotate
from .errors import NotInBError
from .exactreal import Alpha, QuadraticAffine, RotationNumber

QA = QuadraticAffine


@dataclass(frozen=True, eq=False)
class ConstructionContext:
    """The pair (U, r) of an open set and a rotation number, with cached derived sets."""

    U: RegularOpenSet
    r: RotationNumber
    dual: RegularOpenSet = field(init=False, repr=False)
    _shifted: Dict[Tuple[str, int], RegularOpenSet] = field(init=False, repr=False, default_factory=dict)
    _blocks: Dict[str, MaybeOpenSet] = field(init=False, repr=False, default_factory=dict)

    def __post_init__(self):
        if not isinstance(self.r, RotationNumber):
            object.__setattr__(self, "r", RotationNumber(self.U.alpha.qa(self.r)))
        object.__setattr__(self, "dual", dual(self.U))

    @property
    def alpha(self) -> Alpha:
        return self.U.alpha

    def shifted(self, symbol: str, i: int) -> RegularOpenSet:
        """R_r^{-i} applied to U (symbol '1') or its dual (symbol '0')."""
        key = (symbol, i)
        s = self._shifted.get(key)
        if s is None:
            base = self.U if symbol == "1" else self.dual
            s = rotate(base, -(self.r.value * i))
            self._shifted[key] = s
        return s


def context(U: RegularOpenSet, r) -> ConstructionContext:
    return ConstructionContext(U, r if isinstance(r, RotationNumber) else RotationNumber(U.alpha.qa(r)))


def orbit_points(x: QA, r, N: int) -> List[QA]:
    """x, x + r, ..., x + N r, all mod 1."""
    step = r.value if isinstance(r, RotationNumber) else x.alpha.qa(r)
    pts = [x.mod1()]
    for _ in range(N):
        pts.append((pts[-1] + step).mod1())
    return pts


def _hits(x: QA, e: QA, r: RotationNumber) -> bool:
    """Whether x + i r = e (mod 1) for some integer i."""
    rv = r.value
    if rv.b:
        i = (e.b - x.b) / rv.b
        if i.denominator != 1:
            return False
        return (x.a + i * rv.a - e.a).denominator == 1
    if x.b != e.b:
        return False
    q = rv.a.denominator
    return any((x.a + k * rv.a - e.a).denominator == 1 for k in range(q))


def in_B(x: QA, ctx: ConstructionContext) -> bool:
    """Whether the full two-sided orbit of x avoids the frontier of U."""
    return not any(_hits(x, e, ctx.r) for e in ctx.U.endpoints())


def itinerary(x: QA, ctx: ConstructionContext, N: int) -> str:
    """First N symbols of the itinerary of x: '1' at i iff x + i r mod 1 lies in U."""
    arcs = [(a.left, a.right, a.left < a.right) for a in ctx.U.arcs]
    step = ctx.r.value
    p = x.mod1()
    out = []
    for i in range(N):
        inside = False
        for left, right, plain in arcs:
            if p == left or p == right:
                raise NotInBError(f"orbit point {i} ({p}) lies on the frontier")
            if (left < p < right) if plain else (p > left or p < right):
                inside = True
        out.append("1" if inside else "0")
        p = p + step
        if p >= 1:
            p = p - 1
    return "".join(out)

