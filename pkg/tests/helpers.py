"""Shared fixtures-as-functions and hypothesis strategies."""

from fractions import Fraction as F

from hypothesis import strategies as st

from denjoy import Alpha, Arc, QuadraticAffine, from_intervals, normalize

GOLDEN = Alpha.named("golden")
SQRT2M1 = Alpha.named("sqrt2m1")


def U_(*pairs, alpha=GOLDEN):
    return from_intervals(alpha, pairs)


def qa(a=0, b=0, alpha=GOLDEN):
    return QuadraticAffine(F(a), F(b), alpha)


fractions = st.builds(F, st.integers(-40, 40), st.integers(1, 24))


@st.composite
def points(draw, alpha=GOLDEN, irrational=True):
    """Points of [0,1) in Q + Q*alpha."""
    a = draw(fractions)
    b = draw(st.builds(F, st.integers(-3, 3), st.integers(1, 6))) if irrational else F(0)
    return QuadraticAffine(a, b, alpha).mod1()


@st.composite
def opensets(draw, alpha=GOLDEN, max_arcs=3, irrational=True):
    """Finite unions of arcs with disjoint closures, possibly wrapping through 0."""
    k = draw(st.integers(1, max_arcs))
    pts = draw(st.lists(points(alpha, irrational), min_size=2 * k, max_size=2 * k, unique=True))
    pts.sort()
    shift = draw(st.booleans())
    if shift:
        # pair each point with the next one cyclically, so one arc may wrap
        pts = pts[1:] + pts[:1]
    arcs = [Arc(pts[2 * i], pts[2 * i + 1]) for i in range(k)]
    return normalize(arcs)
