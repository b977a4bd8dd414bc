"""The invariant measure lambda(U, r) on cylinder sets, and quantities derived from it.

``lambda(U, r)[C_b]`` is the Haar measure of the preimage set U_{b,r}, so every
cylinder measure is an exact element of Q + Q*alpha.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .circleset import RegularOpenSet, measure, symmetry_order
from .errors import LengthMismatchError, RationalRotationError
from .exactreal import Alpha, QuadraticAffine, RotationNumber
from .itinerary import ConstructionContext, context, itinerary
from .subshift import (admissible_tree, block_set, canonical_rotation, language,
                       prime_root)

QA = QuadraticAffine


def all_blocks(length: int) -> Iterator[str]:
    """Blocks of one length in increasing binary value."""
    for bits in product("01", repeat=length):
        yield "".join(bits)


def block_index(b: str) -> int:
    """1-based position of b when blocks are listed by length, then binary value."""
    return (1 << len(b)) - 2 + int(b, 2) + 1


def tail_bound(L: int) -> Fraction:
    """Upper bound for the weak-metric terms beyond all blocks of length <= L."""
    return Fraction(1, 1 << ((1 << (L + 1)) - 2))


@dataclass
class CylinderTable:
    """Measures of the cylinders C_b for every block of length <= L."""

    L: int
    entries: Dict[str, QA]
    alpha: Alpha

    def __getitem__(self, b: str) -> QA:
        return self.entries[b]

    def blocks(self) -> Iterator[str]:
        for n in range(1, self.L + 1):
            yield from all_blocks(n)

    def consistency_defects(self) -> List[str]:
        """Blocks at which additivity or the partition identity fails (exact check)."""
        bad = []
        if self.entries["0"] + self.entries["1"] != 1:
            bad.append("")
        for b in self.blocks():
            if len(b) == self.L:
                break
            m = self.entries[b]
            if m != self.entries[b + "0"] + self.entries[b + "1"]:
                bad.append(b)
            elif m != self.entries["0" + b] + self.entries["1" + b]:
                bad.append(b)
        return bad

    def to_json(self) -> dict:
        return {"L": self.L, "entries": {b: self.entries[b].to_json() for b in self.blocks()}}


def cylinder_measure(ctx: ConstructionContext, b: str) -> QA:
    return ctx.alpha.qa(measure(block_set(ctx, b)))


def cylinder_table(ctx: ConstructionContext, L: int) -> CylinderTable:
    if L < 1:
        raise ValueError("L must be >= 1")
    zero = ctx.alpha.qa(0)
    entries = {b: zero for n in range(1, L + 1) for b in all_blocks(n)}
    for b in admissible_tree(ctx, L):
        entries[b] = cylinder_measure(ctx, b)
    return CylinderTable(L, entries, ctx.alpha)


@dataclass(frozen=True)
class WeakDistance:
    """Certified enclosure [lower, upper] of the weak-metric partial sum through length L.

    The full distance lies in ``[lower, upper + tail]``.
    """

    lower: Fraction
    upper: Fraction
    tail: Fraction
    exact: QA
    L: int

    @property
    def bound(self) -> Fraction:
        return self.upper + self.tail

    def to_json(self) -> dict:
        return {"lower": str(self.lower), "upper": str(self.upper), "tail": str(self.tail), "L": self.L}


def weak_distance(t1: CylinderTable, t2: CylinderTable, L: int) -> WeakDistance:
    for t in (t1, t2):
        if t.L < L:
            raise LengthMismatchError(f"table covers length {t.L} < {L}")
    total = t1.alpha.qa(0)
    for n in range(1, L + 1):
        for b in all_blocks(n):
            diff = t1.entries[b] - t2.entries[b]
            if diff:
                total = total + abs(diff) / (1 << block_index(b))
    bits = 64
    lower, upper = total.to_interval(Fraction(1, 1 << bits))
    while total and lower <= 0:
        bits *= 2
        lower, upper = total.to_interval(Fraction(1, 1 << bits))
    return WeakDistance(max(lower, Fraction(0)), upper, tail_bound(L), total, L)


@dataclass(frozen=True)
class PeriodicDecomposition:
    """lambda(U, p/q) as a convex combination of periodic-orbit measures.

    ``orbits`` maps the canonical repeating block of each orbit to its weight.
    """

    q: int
    orbits: Dict[str, QA]

    def cylinder(self, b: str, alpha: Alpha) -> QA:
        """Measure of C_b: weighted frequency of b along each periodic orbit."""
        total = alpha.qa(0)
        for w, weight in self.orbits.items():
            k = len(w)
            cyc = w * (len(b) // k + 2)
            hits = sum(1 for j in range(k) if cyc.startswith(b, j))
            if hits:
                total = total + weight * Fraction(hits, k)
        return total

    def cylinder_table(self, L: int, alpha: Alpha) -> CylinderTable:
        entries = {b: self.cylinder(b, alpha) for n in range(1, L + 1) for b in all_blocks(n)}
        return CylinderTable(L, entries, alpha)

    def to_json(self) -> dict:
        return {"q": self.q, "orbits": {w: v.to_json() for w, v in self.orbits.items()}}


def rational_decomposition(U: RegularOpenSet, p: int, q: int) -> PeriodicDecomposition:
    if math.gcd(p, q) != 1 or q < 1:
        raise ValueError("p/q must be in lowest terms with q >= 1")
    ctx = context(U, Fraction(p, q))
    orbits: Dict[str, QA] = {}
    for b in language(ctx, q):
        key = canonical_rotation(prime_root(b))
        orbits[key] = orbits.get(key, U.alpha.qa(0)) + cylinder_measure(ctx, b)
    return PeriodicDecomposition(q, dict(sorted(orbits.items(), reverse=True)))


def intrinsic_rotation(U: RegularOpenSet, r: RotationNumber) -> QA:
    """q * r mod 1, with q the order of the rotation symmetry group of U."""
    if r.is_rational:
        raise RationalRotationError("intrinsic rotation needs an irrational rotation")
    return (r.value * symmetry_order(U)).mod1()


def extrinsic_rotation(U: RegularOpenSet) -> QA:
    """Asymptotic density of ones along any itinerary: the measure of U."""
    return U.alpha.qa(measure(U))


def birkhoff_ones(block: str) -> Fraction:
    if not block:
        raise ValueError("block must be nonempty")
    return Fraction(block.count("1"), len(block))


def blown_orbit_count(U: RegularOpenSet, r: RotationNumber) -> int:
    """Number of distinct rotation orbits among the frontier points of U."""
    if r.is_rational:
        raise RationalRotationError("blown-up orbits are defined for irrational rotations")
    rv = r.value
    reps: List[QA] = []
    for e in U.endpoints():
        for f in reps:
            d = e - f
            j = d.b / rv.b
            if j.denominator == 1 and (d.a - j * rv.a).denominator == 1:
                break
        else:
            reps.append(e)
    return len(reps)


@dataclass(frozen=True)
class DiscrepancyRow:
    N: int
    error: QA
    upper: Fraction


def discrepancy_report(ctx: ConstructionContext, x: QA, lengths: Sequence[int], n: int) -> List[DiscrepancyRow]:
    """Sup over admissible length-n blocks of |empirical frequency - cylinder measure|.

    The frequency in a length-N itinerary counts the N - n + 1 windows.
    """
    lengths = sorted(lengths)
    word = itinerary(x, ctx, lengths[-1])
    blocks = list(language(ctx, n))
    target = {b: cylinder_measure(ctx, b) for b in blocks}
    counts = dict.fromkeys(blocks, 0)
    rows = []
    todo = iter(lengths)
    N = next(todo)
    for end in range(n, lengths[-1] + 1):
        w = word[end - n:end]
        if w in counts:
            counts[w] += 1
        while end == N:
            windows = N - n + 1
            err = max(abs(target[b] - Fraction(counts[b], windows)) for b in blocks)
            rows.append(DiscrepancyRow(N, err, err.to_interval(Fraction(1, 1 << 64))[1]))
            N = next(todo, None)
    return rows


def discrepancy_envelope(ctx: ConstructionContext, x: QA, lengths: Sequence[int], n: int) -> List[DiscrepancyRow]:
    """For each N, the sup of the block-frequency error over every prefix length M in [N, max(lengths)].

    Unlike the pointwise error, this tail supremum is what uniform convergence
    of the empirical frequencies controls.
    """
    lengths = sorted(lengths)
    N_max = lengths[-1]
    per_length = discrepancy_report(ctx, x, range(lengths[0], N_max + 1), n)
    rows = {}
    running = None
    for row in reversed(per_length):
        if running is None or row.error > running:
            running = row.error
        rows[row.N] = running
    return [DiscrepancyRow(N, rows[N], rows[N].to_interval(Fraction(1, 1 << 64))[1]) for N in lengths]
