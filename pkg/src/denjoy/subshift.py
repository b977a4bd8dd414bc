"""Finite-length languages of the itinerary subshift Lambda(U, r).

Blocks are strings over ``"01"``. A block b occurs in Lambda(U, r) exactly
when its preimage set U_{b,r} (the points whose itinerary starts with b) is a
nonempty open set.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterator, List, Tuple

from .circleset import MaybeOpenSet, intersect
from .itinerary import ConstructionContext


def block_set(ctx: ConstructionContext, b: str) -> MaybeOpenSet:
    """U_{b,r}: intersection of R_r^{-i}(U_{b_i}) with U_1 = U and U_0 = dual(U)."""
    if not b:
        raise ValueError("block must be nonempty")
    cache = ctx._blocks
    hit = cache.get(b, False)
    if hit is not False:
        return hit
    if len(b) == 1:
        out = ctx.U if b == "1" else ctx.dual
    else:
        out = intersect(block_set(ctx, b[:-1]), ctx.shifted(b[-1], len(b) - 1))
    cache[b] = out
    return out


@dataclass(frozen=True)
class LanguageTable:
    """All admissible blocks of length ``n``, sorted."""

    n: int
    blocks: Tuple[str, ...]

    def __len__(self):
        return len(self.blocks)

    def __iter__(self) -> Iterator[str]:
        return iter(self.blocks)

    def __contains__(self, b) -> bool:
        return b in self.blocks

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "blocks": list(self.blocks)})


def admissible_tree(ctx: ConstructionContext, n: int) -> Iterator[str]:
    """Every admissible block of length 1..n, depth first, pruning empty preimages."""
    stack = ["1", "0"]
    while stack:
        b = stack.pop()
        if block_set(ctx, b) is None:
            continue
        yield b
        if len(b) < n:
            stack.append(b + "1")
            stack.append(b + "0")


def language(ctx: ConstructionContext, n: int) -> LanguageTable:
    if n < 1:
        raise ValueError("n must be >= 1")
    return LanguageTable(n, tuple(sorted(b for b in admissible_tree(ctx, n) if len(b) == n)))


def hausdorff_resolution(ctx_a: ConstructionContext, ctx_b: ConstructionContext, n_max: int) -> int:
    """Largest N <= n_max whose centered length-(2N-1) languages agree; 0 if none."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    best = 0
    for N in range(1, n_max + 1):
        # equal languages at length L force equality at every shorter length
        if language(ctx_a, 2 * N - 1).blocks != language(ctx_b, 2 * N - 1).blocks:
            break
        best = N
    return best


def block_period(b: str) -> int:
    """Least cyclic period of b."""
    if not b:
        raise ValueError("block must be nonempty")
    n = len(b)
    for p in range(1, n + 1):
        if n % p == 0 and b == b[p:] + b[:p]:
            return p
    return n


def is_prime(b: str) -> bool:
    return block_period(b) == len(b)


def prime_root(b: str) -> str:
    """The shortest w with b = w * k."""
    return b[:block_period(b)]


def canonical_rotation(b: str) -> str:
    """Lexicographically greatest cyclic rotation, used to name periodic orbits."""
    return max(b[i:] + b[:i] for i in range(len(b)))


def occurrences(word: str, b: str) -> List[int]:
    """Start indices of (possibly overlapping) occurrences of b in word."""
    out = []
    i = word.find(b)
    while i != -1:
        out.append(i)
        i = word.find(b, i + 1)
    return out


def max_return_gap(word: str, b: str) -> int:
    """Longest stretch of ``word`` positions between successive occurrences of b.

    Counts the leading stretch before the first occurrence and the trailing one
    after the last, so a bounded value over growing words witnesses uniform
    recurrence of b.
    """
    occ = occurrences(word, b)
    if not occ:
        return len(word)
    gaps = [occ[0]] + [j - i for i, j in zip(occ, occ[1:])] + [len(word) - occ[-1]]
    return max(gaps)
