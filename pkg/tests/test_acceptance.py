"""Acceptance gate: one test per acceptance criterion, at the stated tolerances.

A summary line per criterion (PASS/FAIL) is printed at the end of the pytest run.
"""

import math
import random
import time
from fractions import Fraction as F
from itertools import product

from denjoy import (GammaVector, RotationNumber, context, cylinder_table, density_openset,
                    discrepancy_envelope, gamma_openset, intersect, intrinsic_rotation, itinerary,
                    language, rational_decomposition, rotate)
from denjoy.circleset import dstar_distance, measure, sym_diff_distance, symmetric_quotient
from denjoy.harness import (TableCache, float_itinerary, orbit_oracle_decomposition, random_openset,
                            random_point, run_continuity, run_density, separation_depth)
from denjoy.measure import all_blocks

from helpers import GOLDEN, U_, qa

A = GOLDEN.value
STURM = U_((0, A))
HALF = U_((0, F(1, 2)))


def test_c01_sturmian_complexity():
    start = time.perf_counter()
    ctx = context(STURM, A)
    sizes = [len(language(ctx, n)) for n in range(1, 17)]
    elapsed = time.perf_counter() - start
    assert sizes == [n + 1 for n in range(1, 17)]
    assert elapsed < 10, f"took {elapsed:.1f}s"


def test_c02_itinerary_float_oracle():
    x = qa(F(1, 2))
    exact = itinerary(x, context(STURM, A), 10 ** 4)
    oracle = float_itinerary(x, STURM, A, 10 ** 4, prec=200)
    assert exact[:8] == "11010110"
    assert sum(s != t for s, t in zip(exact, oracle)) == 0


def test_c03_ones_cylinder_equals_measure():
    rng = random.Random(3)
    for i in range(50):
        U = random_openset(rng, GOLDEN, max_arcs=4, irrational=i % 2 == 1)
        r = RotationNumber(random_point(rng, GOLDEN, irrational=True))
        table = cylinder_table(context(U, r), 1)
        assert table["1"] == measure(U)


def _grid_cases():
    rng = random.Random(4)
    cases = []
    for i in range(20):
        U = random_openset(rng, GOLDEN, max_arcs=3, irrational=i % 3 != 0)
        if i % 2:
            r = RotationNumber(random_point(rng, GOLDEN, irrational=False))
        else:
            r = RotationNumber((random_point(rng, GOLDEN) + A).mod1())
        cases.append((U, r))
    assert any(r.is_rational for _, r in cases) and any(not r.is_rational for _, r in cases)
    return cases


def test_c04_partition_and_consistency():
    for U, r in _grid_cases():
        t = cylinder_table(context(U, r), 10)
        for n in range(1, 11):
            assert sum((t[b] for b in all_blocks(n)), qa(0)) == 1
        for n in range(1, 10):
            for b in all_blocks(n):
                assert t[b] == t[b + "0"] + t[b + "1"] == t["0" + b] + t["1" + b]


def test_c05_rational_decomposition_oracle():
    rng = random.Random(5)
    sets = [HALF, U_((0, F(1, 3))), U_((0, A))] + [random_openset(rng, GOLDEN, 3) for _ in range(5)]
    for U in sets:
        for q in range(1, 9):
            for p in range(q):
                if math.gcd(p, q) != 1:
                    continue
                dec = rational_decomposition(U, p, q)
                assert dec.orbits == orbit_oracle_decomposition(U, p, q)
                assert sum(dec.orbits.values(), qa(0)) == 1
                assert all(q % len(w) == 0 for w in dec.orbits)


def test_c06_continuity():
    rep = run_continuity(STURM, GOLDEN, k_max=12, depth=8)
    ks = [row["k"] for row in rep.series["weak_distance"]]
    ups = [row["upper"] for row in rep.series["weak_distance"]]
    assert ks == list(range(1, 13))
    assert all(row["dstar"] == F(1, 2 ** row["k"]) for row in rep.series["weak_distance"])
    assert all(a > b for a, b in zip(ups, ups[1:]))
    assert ups[-1] < F(1, 1000)
    assert rep.verdict == "pass"


def _random_gamma(rng):
    dim = rng.randint(1, 4)
    g = 12
    return GammaVector.from_mapping({i: F(rng.randint(0, g), g * (i + 2)) for i in range(dim)})


def test_c07_injectivity():
    rng = random.Random(7)
    pairs = 0
    while pairs < 100:
        g1, g2 = _random_gamma(rng), _random_gamma(rng)
        d1 = {i: v for i, v in g1.as_dict().items() if v}
        d2 = {i: v for i, v in g2.as_dict().items() if v}
        if d1 == d2 or not d1 or not d2:
            continue
        pairs += 1
        t1 = TableCache(context(gamma_openset(g1, GOLDEN), A))
        t2 = TableCache(context(gamma_openset(g2, GOLDEN), A))
        depth, wd = separation_depth(t1, t2, max_depth=12)
        assert depth is not None and wd.lower > 0, (str(g1), str(g2))


def test_c08_rotation_invariance():
    rng = random.Random(8)
    U = U_((0, F(1, 5)), (F(1, 3), A))
    base_lang = language(context(U, A), 8)
    base = cylinder_table(context(U, A), 8)
    for _ in range(10):
        eta = random_point(rng, GOLDEN)
        ctx = context(rotate(U, eta), A)
        assert language(ctx, 8) == base_lang
        moved = cylinder_table(ctx, 8)
        assert all(moved[b] == base[b] for b in base.blocks())


def test_c09_symmetric_quotient():
    U = U_((0, F(1, 4)), (F(1, 2), F(3, 4)))
    quotient, q = symmetric_quotient(U)
    assert (quotient, q) == (HALF, 2)
    double = (A * 2).mod1()
    assert language(context(U, A), 10) == language(context(HALF, double), 10)
    assert intrinsic_rotation(U, RotationNumber(A)) == double


def test_c10_discrepancy():
    lengths = [2 ** k for k in range(8, 17)]
    env = discrepancy_envelope(context(HALF, A), qa(F(1, 4)), lengths, 1)
    for row in env:
        assert row.error <= F(3 * int(math.log2(row.N)), row.N), row.N
    assert all(a.error >= b.error for a, b in zip(env, env[1:]))


def test_c11_density():
    rng = random.Random(11)
    for _ in range(20):
        n = rng.randint(1, 16)
        block = "".join(rng.choice("01") for _ in range(n))
        if "1" not in block:
            block = block[:-1] + "1"
        x0 = F(rng.randrange(1, 100), 100)
        U, _ = density_openset(block, RotationNumber(A), x0)
        assert itinerary(qa(x0), context(U, A), len(block)) == block
    rep = run_density([], GOLDEN, U=HALF, p=1, q=3, depth=4, k=4)
    ups = [row["upper"] for row in rep.series["approximation"]]
    assert len(ups) == 4 and all(a > b for a, b in zip(ups, ups[1:]))
    assert rep.verdict == "pass"


def test_c12_distance_inequalities():
    rng = random.Random(12)
    done = 0
    while done < 100:
        U, V = random_openset(rng, GOLDEN), random_openset(rng, GOLDEN)
        assert abs(measure(U) - measure(V)) <= sym_diff_distance(U, V)
        k = rng.randint(2, 3)
        As = [random_openset(rng, GOLDEN) for _ in range(k)]
        Bs = [random_openset(rng, GOLDEN) for _ in range(k)]
        ia, ib = As[0], Bs[0]
        for a, b in zip(As[1:], Bs[1:]):
            ia, ib = intersect(ia, a), intersect(ib, b)
        if ia is None or ib is None:
            continue
        assert dstar_distance(ia, ib) <= sum((dstar_distance(a, b) for a, b in zip(As, Bs)), qa(0))
        done += 1
