"""Regular open subsets of the circle R/Z that are finite unions of open arcs.

Such a set is stored as a tuple of arcs sorted by left endpoint, with pairwise
disjoint closures. Its frontier is the finite endpoint set, so measure and the
symmetric-difference metrics are exact ring elements.

Operations that can produce the empty set return ``None`` in that case.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import EmptySetError, FullCircleError
from .exactreal import Alpha, QuadraticAffine, parse_point

QA = QuadraticAffine


@dataclass(frozen=True)
class Arc:
    """Open arc running counterclockwise from ``left`` to ``right``; may wrap through 0."""

    left: QA
    right: QA

    def __post_init__(self):
        if self.left == self.right:
            raise ValueError("arc endpoints must differ")
        for x in (self.left, self.right):
            if x < 0 or x >= 1:
                raise ValueError(f"arc endpoint {x} outside [0, 1)")

    @property
    def wraps(self) -> bool:
        return self.right < self.left

    @property
    def length(self) -> QA:
        d = self.right - self.left
        return d + 1 if d.sign() < 0 else d

    def pieces(self) -> List[Tuple[QA, QA]]:
        """The arc as open subintervals of [0, 1]."""
        if self.left < self.right:
            return [(self.left, self.right)]
        out = [(self.left, self.left.alpha.qa(1))]
        if self.right:
            out.append((self.left.alpha.qa(0), self.right))
        return out

    def contains(self, x: QA) -> bool:
        if self.left < self.right:
            return self.left < x < self.right
        return x > self.left or x < self.right

    def __str__(self):
        return f"{self.left}..{self.right}"


class RegularOpenSet:
    """Nonempty proper regular open subset of the circle, as disjoint arcs."""

    __slots__ = ("arcs", "_hash")

    def __init__(self, arcs: Iterable[Arc], _trusted: bool = False):
        arcs = tuple(arcs)
        if not _trusted and normalize(arcs).arcs != arcs:
            raise ValueError("arcs must be sorted with pairwise disjoint closures")
        self.arcs = arcs
        self._hash = None

    @property
    def alpha(self) -> Alpha:
        return self.arcs[0].left.alpha

    def endpoints(self) -> List[QA]:
        return [x for arc in self.arcs for x in (arc.left, arc.right)]

    def pieces(self) -> List[Tuple[QA, QA]]:
        return sorted((p for arc in self.arcs for p in arc.pieces()), key=lambda p: p[0])

    def contains(self, x: QA) -> bool:
        return any(arc.contains(x) for arc in self.arcs)

    def on_frontier(self, x: QA) -> bool:
        return any(x == arc.left or x == arc.right for arc in self.arcs)

    def __eq__(self, other):
        if not isinstance(other, RegularOpenSet):
            return NotImplemented
        return self.arcs == other.arcs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.arcs)
        return self._hash

    def __str__(self):
        return "; ".join(str(a) for a in self.arcs)

    def __repr__(self):
        return f"RegularOpenSet({str(self)!r})"


MaybeOpenSet = Optional[RegularOpenSet]


def _merge(pieces: Sequence[Tuple[QA, QA]]) -> List[List[QA]]:
    merged: List[List[QA]] = []
    for lo, hi in sorted(pieces, key=lambda p: p[0]):
        if merged and lo <= merged[-1][1]:
            if hi > merged[-1][1]:
                merged[-1][1] = hi
        else:
            merged.append([lo, hi])
    return merged


def _arcs_from_merged(merged: List[List[QA]]) -> Tuple[Arc, ...]:
    if len(merged) > 1 and merged[0][0] == 0 and merged[-1][1] == 1:
        first = merged.pop(0)
        merged[-1][1] = first[1]
    return tuple(Arc(lo, hi if hi != 1 else hi - 1) for lo, hi in merged)


def normalize(arcs: Iterable[Arc]) -> RegularOpenSet:
    """Interior of the closure of a union of arcs (touching arcs merge)."""
    merged = _merge([p for arc in arcs for p in arc.pieces()])
    if not merged:
        raise EmptySetError("union of arcs is empty")
    if len(merged) == 1 and merged[0][0] == 0 and merged[0][1] == 1:
        raise FullCircleError("closure of the union is the whole circle")
    return RegularOpenSet(_arcs_from_merged(merged), _trusted=True)


def from_intervals(alpha: Alpha, intervals: Iterable[Tuple[object, object]]) -> RegularOpenSet:
    """Build a set from ``(left, right)`` pairs of rationals or ring values, taken mod 1."""
    return normalize(Arc(alpha.qa(l).mod1(), alpha.qa(r).mod1()) for l, r in intervals)


def dual(U: RegularOpenSet) -> RegularOpenSet:
    """Interior of the complement."""
    arcs = U.arcs
    n = len(arcs)
    comp = [Arc(arcs[i].right, arcs[(i + 1) % n].left) for i in range(n)]
    comp.sort(key=lambda a: a.left)
    return RegularOpenSet(comp, _trusted=True)


def rotate(U: RegularOpenSet, eta) -> RegularOpenSet:
    eta = U.alpha.qa(eta)
    if not eta.mod1():
        return U
    arcs = [Arc((a.left + eta).mod1(), (a.right + eta).mod1()) for a in U.arcs]
    arcs.sort(key=lambda a: a.left)
    return RegularOpenSet(arcs, _trusted=True)


def intersect(U: MaybeOpenSet, V: MaybeOpenSet) -> MaybeOpenSet:
    if U is None or V is None:
        return None
    P, Q = U.pieces(), V.pieces()
    out = []
    i = j = 0
    while i < len(P) and j < len(Q):
        lo = P[i][0] if P[i][0] >= Q[j][0] else Q[j][0]
        if P[i][1] <= Q[j][1]:
            hi = P[i][1]
            i += 1
        else:
            hi = Q[j][1]
            j += 1
        if lo < hi:
            out.append([lo, hi])
    if not out:
        return None
    # pieces are already disjoint and sorted; only the seam at 0 may need joining
    return RegularOpenSet(_arcs_from_merged(out), _trusted=True)


def measure(U: MaybeOpenSet):
    """Haar measure; ``Fraction(0)`` for the empty set."""
    if U is None:
        return Fraction(0)
    total = U.arcs[0].length
    for arc in U.arcs[1:]:
        total = total + arc.length
    return total


def _zero(U: RegularOpenSet) -> QA:
    return U.alpha.qa(0)


def sym_diff_distance(U: RegularOpenSet, V: RegularOpenSet) -> QA:
    """d(U, V): measure of the symmetric difference."""
    return _zero(U) + measure(intersect(U, dual(V))) + measure(intersect(dual(U), V))


def dstar_distance(U: RegularOpenSet, V: RegularOpenSet) -> QA:
    return (sym_diff_distance(U, V) + sym_diff_distance(dual(U), dual(V))) / 2


def rho(U: RegularOpenSet, V: RegularOpenSet) -> QA:
    """Length of the longest arc inside the symmetric difference."""
    best = _zero(U)
    # components of U - V and V - U never share an endpoint lying in U or V
    for part in (intersect(U, dual(V)), intersect(dual(U), V)):
        if part is not None:
            for arc in part.arcs:
                if arc.length > best:
                    best = arc.length
    return best


def quotient_distance(U: RegularOpenSet, V: RegularOpenSet) -> Tuple[QA, QA]:
    """Minimum over eta of d_*(U, R_eta(V)), with a minimizing eta.

    The objective is piecewise linear in eta with breakpoints where an
    endpoint of R_eta(V) meets an endpoint of U, so a breakpoint attains it.
    """
    candidates = sorted({(u - v).mod1() for u in U.endpoints() for v in V.endpoints()})
    best = None
    for eta in candidates:
        value = dstar_distance(U, rotate(V, eta))
        if best is None or value < best[0]:
            best = (value, eta)
    return best


def symmetry(U: RegularOpenSet) -> Tuple[int, Optional[Fraction]]:
    """Order of the rotation group fixing U, and its generator 1/q when q > 1."""
    first = U.arcs[0]
    fixing = []
    for arc in U.arcs[1:]:
        if arc.length != first.length:
            continue
        eta = (arc.left - first.left).mod1()
        if rotate(U, eta) == U:
            fixing.append(eta)
    q = len(fixing) + 1
    if q == 1:
        return 1, None
    gen = min(fixing)
    assert gen.is_rational and gen.a == Fraction(1, q)
    return q, gen.a


def symmetry_order(U: RegularOpenSet) -> int:
    return symmetry(U)[0]


def symmetric_quotient(U: RegularOpenSet) -> Tuple[RegularOpenSet, int]:
    """Image of U under x -> q*x mod 1, where q is the symmetry order."""
    q = symmetry_order(U)
    if q == 1:
        return U, 1
    # each arc is shorter than 1/q, so multiplication by q is injective on it
    return normalize(Arc((a.left * q).mod1(), (a.right * q).mod1()) for a in U.arcs), q


def parse_openset(text: str, alpha: Alpha) -> RegularOpenSet:
    """Parse ``0..1/2; 3/4..7/8`` or ``0..a`` (``a`` is alpha)."""
    arcs = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        left, sep, right = part.partition("..")
        if not sep:
            raise ValueError(f"bad arc {part!r}; expected l..r")
        arcs.append(Arc(parse_point(left, alpha).mod1(), parse_point(right, alpha).mod1()))
    return normalize(arcs)


def format_openset(U: RegularOpenSet) -> str:
    return str(U)
