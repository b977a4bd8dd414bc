"""Reproducible experiment suites with machine-readable reports.

Each ``run_*`` function returns an :class:`ExperimentReport` whose checks
carry a verdict (``pass``, ``fail`` or ``inconclusive``), the claim being
checked, and exact witnesses. Reports serialize deterministically.
"""

from __future__ import annotations

import csv
import io
import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import mpmath

from .circleset import (Arc, RegularOpenSet, dstar_distance, dual, from_intervals,
                        measure, normalize)
from .exactreal import Alpha, QuadraticAffine, RotationNumber
from .families import (GammaVector, approximating_rotations, density_openset,
                       gamma_openset)
from .itinerary import ConstructionContext, context, in_B, itinerary
from .measure import (CylinderTable, birkhoff_ones, cylinder_measure, cylinder_table,
                      extrinsic_rotation, intrinsic_rotation, rational_decomposition,
                      weak_distance)
from .subshift import canonical_rotation, language, prime_root

QA = QuadraticAffine
SCHEMA = "denjoy-report/1"

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


def _plain(obj: Any) -> Any:
    if isinstance(obj, QA):
        return obj.to_json()
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (RegularOpenSet, RotationNumber)):
        return str(obj)
    if isinstance(obj, Alpha):
        return obj.spec()
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    return obj


@dataclass
class Check:
    name: str
    claim: str
    verdict: str
    witness: Dict[str, Any] = field(default_factory=dict)


@dataclass
class ExperimentReport:
    name: str
    params: Dict[str, Any]
    checks: List[Check] = field(default_factory=list)
    series: Dict[str, List[Dict[str, Any]]] = field(default_factory=dict)

    def check(self, name: str, claim: str, ok: Optional[bool], **witness) -> bool:
        """Record a check; ``ok=None`` records an inconclusive outcome."""
        verdict = INCONCLUSIVE if ok is None else (PASS if ok else FAIL)
        self.checks.append(Check(name, claim, verdict, witness))
        return bool(ok)

    @property
    def verdict(self) -> str:
        if not self.checks:
            raise ValueError(f"report {self.name!r} has no checks")
        verdicts = {c.verdict for c in self.checks}
        if FAIL in verdicts:
            return FAIL
        return INCONCLUSIVE if INCONCLUSIVE in verdicts else PASS

    @property
    def exit_code(self) -> int:
        return {PASS: 0, FAIL: 1, INCONCLUSIVE: 2}[self.verdict]

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "experiment": self.name,
            "params": _plain(self.params),
            "verdict": self.verdict,
            "checks": [{"name": c.name, "claim": c.claim, "verdict": c.verdict,
                        "witness": _plain(c.witness)} for c in self.checks],
            "series": _plain(self.series),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def to_csv(self) -> str:
        """All series stacked, with a leading ``series`` column; the checks when there are none."""
        rows = [dict(series=name, **_plain(row)) for name, data in sorted(self.series.items()) for row in data]
        if not rows:
            rows = [{"series": "checks", "name": c.name, "verdict": c.verdict, "claim": c.claim}
                    for c in self.checks]
        cols = ["series"] + sorted({k for r in rows for k in r} - {"series"})
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        writer.writeheader()
        for r in rows:
            writer.writerow({k: (json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v)
                             for k, v in r.items()})
        return buf.getvalue()


# -- independent oracles -------------------------------------------------------

def float_alpha(alpha: Alpha, prec: int = 200):
    """alpha as an mpmath float at ``prec`` bits, picking the isolated root."""
    with mpmath.workprec(prec):
        s = mpmath.sqrt(alpha.disc)
        roots = [(-alpha.c1 + s) / (2 * alpha.c2), (-alpha.c1 - s) / (2 * alpha.c2)]
        lo, hi = mpmath.mpf(alpha.lo.numerator) / alpha.lo.denominator, mpmath.mpf(alpha.hi.numerator) / alpha.hi.denominator
        return next(x for x in roots if lo < x < hi)


def float_itinerary(x: QA, U: RegularOpenSet, r: QA, N: int, prec: int = 200) -> str:
    """Itinerary computed in ``prec``-bit floating point, independent of exact signs."""
    with mpmath.workprec(prec):
        a = float_alpha(x.alpha, prec)

        def val(v: QA):
            return mpmath.mpf(v.a.numerator) / v.a.denominator + mpmath.mpf(v.b.numerator) / v.b.denominator * a

        arcs = [(val(arc.left), val(arc.right)) for arc in U.arcs]
        p, step = val(x) % 1, val(r) % 1
        out = []
        for _ in range(N):
            inside = any((l < p < rr) if l < rr else (p > l or p < rr) for l, rr in arcs)
            out.append("1" if inside else "0")
            p = (p + step) % 1
        return "".join(out)


def orbit_oracle_decomposition(U: RegularOpenSet, p: int, q: int) -> Dict[str, QA]:
    """lambda(U, p/q) by sampling one point per cell cut out by the rotated frontier.

    Every point of a cell has the same period-q itinerary, computed by direct
    membership tests; weights are cell lengths.
    """
    alpha = U.alpha
    step = Fraction(p, q)
    cuts = sorted({(e - step * i).mod1() for e in U.endpoints() for i in range(q)})
    orbits: Dict[str, QA] = {}
    for i, lo in enumerate(cuts):
        hi = cuts[i + 1] if i + 1 < len(cuts) else cuts[0] + 1
        mid = ((lo + hi) / 2).mod1()
        word = "".join("1" if U.contains((mid + step * k).mod1()) else "0" for k in range(q))
        key = canonical_rotation(prime_root(word))
        orbits[key] = orbits.get(key, alpha.qa(0)) + (hi - lo)
    return dict(sorted(orbits.items(), reverse=True))


# -- sampling -------------------------------------------------------------------

def random_point(rng: random.Random, alpha: Alpha, irrational: bool = True, den: int = 64) -> QA:
    a = Fraction(rng.randrange(den), den)
    if irrational and rng.random() < 0.5:
        b = Fraction(rng.randint(-4, 4), rng.randint(1, 8))
        return QA(a, b, alpha).mod1()
    return QA(a, 0, alpha)


def random_openset(rng: random.Random, alpha: Alpha, max_arcs: int = 3, irrational: bool = True) -> RegularOpenSet:
    """Arcs between consecutive distinct sorted sample points, randomly rotated."""
    k = rng.randint(1, max_arcs)
    pts: set = set()
    while len(pts) < 2 * k:
        pts.add(random_point(rng, alpha, irrational))
    pts_sorted = sorted(pts)
    U = normalize(Arc(pts_sorted[2 * i], pts_sorted[2 * i + 1]) for i in range(k))
    from .circleset import rotate
    return rotate(U, random_point(rng, alpha, irrational))


def sample_point_in_B(ctx: ConstructionContext) -> QA:
    """A deterministic point of B with a small rational coordinate."""
    for den in range(3, 200):
        for num in range(1, den):
            if math.gcd(num, den) == 1:
                x = ctx.alpha.qa(Fraction(num, den))
                if in_B(x, ctx):
                    return x
    raise RuntimeError("no rational point of B found")


def perturb(U: RegularOpenSet, k: int) -> Optional[RegularOpenSet]:
    """U with one endpoint moved by 2**-k, so d_*(U, result) = 2**-k.

    Shrinks the longest arc from the right; if that would empty it, grows the
    arc into the following gap instead. None when neither fits.
    """
    if k == 0:
        return U
    delta = Fraction(1, 1 << k)
    i = max(range(len(U.arcs)), key=lambda j: (U.arcs[j].length, -j))
    arc = U.arcs[i]
    arcs = list(U.arcs)
    if arc.length > delta:
        arcs[i] = Arc(arc.left, (arc.right - delta).mod1())
    else:
        gap = Arc(arc.right, U.arcs[(i + 1) % len(U.arcs)].left).length
        if gap <= delta:
            return None
        arcs[i] = Arc(arc.left, (arc.right + delta).mod1())
    return normalize(arcs)


def equal_measure_variant(U: RegularOpenSet) -> RegularOpenSet:
    """A two-arc set with the same measure as U but a different shape."""
    m = U.alpha.qa(measure(U))
    if m * 2 > 1:
        return dual(equal_measure_variant(dual(U)))
    half = U.alpha.qa(Fraction(1, 2))
    V = normalize([Arc(U.alpha.qa(0), m / 3), Arc(half, half + m * 2 / 3)])
    return V


# -- experiments ------------------------------------------------------------------

def run_sturmian(alpha: Alpha, n_max: int = 16, prefix: int = 1000) -> ExperimentReport:
    rep = ExperimentReport("sturmian", {"alpha": alpha, "n_max": n_max, "prefix": prefix})
    U = from_intervals(alpha, [(0, alpha.value)])
    ctx = context(U, alpha.value)
    sizes = []
    for n in range(1, n_max + 1):
        size = len(language(ctx, n))
        sizes.append({"n": n, "size": size})
        rep.check(f"complexity_{n}", "the (0, alpha) itinerary set has exactly n+1 blocks of length n",
                  size == n + 1, n=n, size=size)
    rep.series["complexity"] = sizes
    x = alpha.qa(Fraction(1, 2))
    exact = itinerary(x, ctx, prefix)
    floating = float_itinerary(x, U, alpha.value, prefix)
    mismatches = sum(1 for s, t in zip(exact, floating) if s != t)
    rep.check("float_oracle", "exact itinerary of 1/2 agrees with a 200-bit floating evaluation",
              mismatches == 0, mismatches=mismatches, head=exact[:16])
    return rep


def run_rational_check(U: RegularOpenSet, p: int, q: int) -> ExperimentReport:
    rep = ExperimentReport("rational", {"U": U, "p": p, "q": q, "alpha": U.alpha})
    ctx = context(U, Fraction(p, q))
    short, doubled = language(ctx, q), language(ctx, 2 * q)
    rep.check("periodic_blocks", "rational rotation p/q: every admissible block repeats with period dividing q",
              sorted(b + b for b in short) == list(doubled.blocks), blocks=len(short))
    dec = rational_decomposition(U, p, q)
    total = sum(dec.orbits.values(), U.alpha.qa(0))
    rep.check("weights_sum", "periodic-orbit weights form a convex combination", total == 1, total=total)
    rep.check("orbit_periods", "every orbit period divides q",
              all(q % len(w) == 0 for w in dec.orbits), orbits=list(dec.orbits))
    table = cylinder_table(ctx, q)
    defects = [b for b in table.blocks() if dec.cylinder(b, U.alpha) != table[b]]
    rep.check("decomposition_equivalence", "the periodic decomposition reproduces every cylinder measure",
              not defects, defects=defects[:8])
    oracle = orbit_oracle_decomposition(U, p, q)
    rep.check("orbit_oracle", "decomposition agrees with direct orbit enumeration",
              oracle == dec.orbits, decomposition=dec.orbits, oracle=oracle)
    return rep


def run_continuity(U: RegularOpenSet, alpha: Alpha, k_max: int = 12, depth: int = 8,
                   lsc_n: int = 6) -> ExperimentReport:
    rep = ExperimentReport("continuity", {"U": U, "alpha": alpha, "k_max": k_max, "depth": depth, "lsc_n": lsc_n})
    r = alpha.value
    base = cylinder_table(context(U, r), depth)
    base_lang = set(language(context(U, r), lsc_n))
    zero = weak_distance(base, cylinder_table(context(perturb(U, 0), r), depth), depth)
    rep.check("unperturbed", "zero perturbation gives weak distance zero", zero.exact == 0)
    series, contained = [], {}
    for k in range(1, k_max + 1):
        Uk = perturb(U, k)
        if Uk is None:
            continue
        dk = dstar_distance(U, Uk)
        wd = weak_distance(base, cylinder_table(context(Uk, r), depth), depth)
        contained[k] = base_lang <= set(language(context(Uk, r), lsc_n))
        series.append({"k": k, "dstar": dk, "lower": wd.lower, "upper": wd.bound})
        rep.check(f"dstar_{k}", "perturbation has d_* exactly 2**-k", dk == Fraction(1, 1 << k), k=k)
    rep.series["weak_distance"] = series
    bounds = [row["upper"] for row in series]
    rep.check("monotone", "weak-distance upper bounds strictly decrease as the perturbation shrinks",
              len(bounds) > 1 and all(a > b for a, b in zip(bounds, bounds[1:])))
    if k_max >= 12 and series:
        rep.check("small_at_12", "weak-distance upper bound below 1e-3 once d_* = 2**-12",
                  series[-1]["upper"] < Fraction(1, 1000), upper=series[-1]["upper"])
    ks = sorted(contained)
    k0 = next((k for k in ks if all(contained[j] for j in ks if j >= k)), None)
    rep.check("lower_semicontinuity", f"length-{lsc_n} language of U is contained in that of U_k for all large k",
              k0 is not None, k0=k0)
    return rep


def _grid(n: int, g: int) -> List[GammaVector]:
    from itertools import product
    return [GammaVector(tuple((i, Fraction(j, g * (i + 2))) for i, j in enumerate(levels)))
            for levels in product(range(1, g + 1), repeat=n)]


class TableCache:
    """Lazily deepened cylinder tables, one per context."""

    def __init__(self, ctx: ConstructionContext):
        self.ctx = ctx
        self.table: Optional[CylinderTable] = None

    def at(self, L: int) -> CylinderTable:
        if self.table is None or self.table.L < L:
            self.table = cylinder_table(self.ctx, L)
        return self.table


def separation_depth(a: TableCache, b: TableCache, max_depth: int = 12):
    """Smallest depth at which the weak-distance lower bound is positive, with that distance."""
    for L in range(1, max_depth + 1):
        wd = weak_distance(a.at(L), b.at(L), L)
        if wd.lower > 0:
            return L, wd
    return None, wd


def run_ball(n: int, g: int, alpha: Alpha, max_depth: int = 12, matrix_depth: int = 4) -> ExperimentReport:
    rep = ExperimentReport("ball", {"n": n, "g": g, "alpha": alpha, "max_depth": max_depth,
                                    "matrix_depth": matrix_depth})
    pts = _grid(n, g)
    tabs = [TableCache(context(gamma_openset(p, alpha), alpha.value)) for p in pts]
    undecided = []
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            depth, _ = separation_depth(tabs[i], tabs[j], max_depth)
            if depth is None:
                undecided.append((str(pts[i]), str(pts[j])))
    rep.check("distinct_measures", "distinct grid points carry distinct invariant measures",
              True if not undecided else None, points=len(pts), undecided=undecided[:8])
    matrix = [[weak_distance(tabs[i].at(matrix_depth), tabs[j].at(matrix_depth), matrix_depth).bound
               for j in range(len(pts))] for i in range(len(pts))]
    rep.series["distance_matrix"] = [{"row": str(pts[i]), "upper": matrix[i]} for i in range(len(pts))]
    rep.check("diagonal_zero", "identical grid points are at weak distance zero (up to the tail)",
              all(matrix[i][i] == weak_distance(tabs[i].at(matrix_depth), tabs[i].at(matrix_depth),
                                                matrix_depth).tail for i in range(len(pts))))
    idx = {p: k for k, p in enumerate(pts)}
    adjacent = []
    for p in pts:
        d = p.as_dict()
        for i in range(n):
            lvl = d[i] * g * (i + 2)
            if lvl < g:
                d2 = dict(d)
                d2[i] = Fraction(lvl + 1, g * (i + 2))
                adjacent.append((idx[p], idx[GammaVector.from_mapping(d2)]))
    far = weak_distance(tabs[0].at(matrix_depth), tabs[-1].at(matrix_depth), matrix_depth)
    worst_adjacent = max(matrix[i][j] for i, j in adjacent) if adjacent else Fraction(0)
    ok = worst_adjacent < far.lower
    rep.check("continuity_modulus", "adjacent grid points are closer than opposite corners",
              True if ok else None, worst_adjacent=worst_adjacent, corner_lower=far.lower)
    return rep


def run_density(blocks: Sequence[str], alpha: Alpha, x0=Fraction(1, 2), U: Optional[RegularOpenSet] = None,
                p: int = 1, q: int = 3, depth: int = 4, k: int = 4) -> ExperimentReport:
    if U is None:
        U = from_intervals(alpha, [(0, Fraction(1, 2))])
    rep = ExperimentReport("density", {"blocks": list(blocks), "alpha": alpha, "x0": x0, "U": U,
                                       "p": p, "q": q, "depth": depth, "k": k})
    r = RotationNumber(alpha.value)
    for b in blocks:
        V, eps = density_openset(b, r, x0)
        got = itinerary(alpha.qa(x0), context(V, r), len(b))
        rep.check(f"prefix_{b}", "the constructed open set realizes the block as an itinerary prefix",
                  got == b, U=V, eps=eps)
    target = rational_decomposition(U, p, q).cylinder_table(depth, alpha)
    direct = cylinder_table(context(U, Fraction(p, q)), depth)
    rep.check("target_table", "decomposition-induced table equals the rational-rotation cylinder table",
              all(target[b] == direct[b] for b in direct.blocks()))
    series = []
    for n, rn in enumerate(approximating_rotations(p, q, alpha, k), start=1):
        wd = weak_distance(cylinder_table(context(U, rn), depth), target, depth)
        series.append({"n": n, "rotation": rn.value, "lower": wd.lower, "upper": wd.bound})
    rep.series["approximation"] = series
    bounds = [row["upper"] for row in series]
    rep.check("approach", "measures for irrational rotations tending to p/q approach the periodic measure",
              all(a > b for a, b in zip(bounds, bounds[1:])), upper=bounds)
    return rep


def run_rotation_numbers(U: RegularOpenSet, alpha: Alpha, N: int = 4096) -> ExperimentReport:
    rep = ExperimentReport("rotation", {"U": U, "alpha": alpha, "N": N})
    r = RotationNumber(alpha.value)
    ctx = context(U, r)
    m = extrinsic_rotation(U)
    rep.check("ones_measure", "measure of the cylinder [1] equals m(U)", cylinder_measure(ctx, "1") == m, m=m)
    x = sample_point_in_B(ctx)
    freq = birkhoff_ones(itinerary(x, ctx, N))
    bound = Fraction(3 * len(U.arcs) * math.ceil(math.log2(N)), N)
    err = abs(m - freq)
    rep.check("birkhoff", "density of ones along an itinerary is within the discrepancy bound of m(U)",
              err <= bound, x=x, frequency=freq, bound=bound)
    rep.check("intrinsic", "intrinsic rotation number is the symmetry order times alpha", True,
              intrinsic=intrinsic_rotation(U, r))
    V = equal_measure_variant(U)
    same = extrinsic_rotation(V) == m
    depth, wd = separation_depth(TableCache(ctx), TableCache(context(V, r)))
    rep.check("fixed_extrinsic_family", "a differently shaped set of equal measure has the same extrinsic "
              "rotation number but a different invariant measure", same and depth is not None,
              V=V, depth=depth, lower=wd.lower)
    return rep


def run_identities(alpha: Alpha, seed: int = 0, count: int = 20, depth: int = 6) -> ExperimentReport:
    """Exact identities on random open sets: ones-cylinder measure, partition, rotation invariance."""
    from .circleset import rotate
    rep = ExperimentReport("identities", {"alpha": alpha, "seed": seed, "count": count, "depth": depth})
    rng = random.Random(seed)
    for i in range(count):
        U = random_openset(rng, alpha)
        ctx = context(U, alpha.value)
        table = cylinder_table(ctx, depth)
        rep.check(f"ones_{i}", "measure of the cylinder [1] equals m(U)", table["1"] == measure(U), U=U)
        rep.check(f"consistency_{i}", "cylinder measures are additive and sum to one",
                  not table.consistency_defects(), U=U)
        eta = random_point(rng, alpha)
        moved = cylinder_table(context(rotate(U, eta), alpha.value), depth)
        rep.check(f"rotation_{i}", "rotating U leaves every cylinder measure unchanged",
                  all(moved[b] == table[b] for b in table.blocks()), U=U, eta=eta)
    return rep


EXPERIMENTS = {
    "sturmian": run_sturmian,
    "rational": run_rational_check,
    "continuity": run_continuity,
    "ball": run_ball,
    "density": run_density,
    "rotation": run_rotation_numbers,
    "identities": run_identities,
}
