import json
from fractions import Fraction as F

import pytest

from denjoy import rotate
from denjoy.harness import (ExperimentReport, equal_measure_variant, orbit_oracle_decomposition, perturb,
                            run_ball, run_continuity, run_density, run_identities, run_rational_check,
                            run_rotation_numbers, run_sturmian)
from denjoy.circleset import dstar_distance, measure
from denjoy import rational_decomposition

from helpers import GOLDEN, SQRT2M1, U_, qa

A = GOLDEN.value
HALF = U_((0, F(1, 2)))


def test_report_verdicts_and_exit_codes():
    rep = ExperimentReport("x", {})
    with pytest.raises(ValueError):
        rep.verdict
    rep.check("a", "claim", True)
    assert (rep.verdict, rep.exit_code) == ("pass", 0)
    rep.check("b", "claim", None)
    assert (rep.verdict, rep.exit_code) == ("inconclusive", 2)
    rep.check("c", "claim", False)
    assert (rep.verdict, rep.exit_code) == ("fail", 1)
    data = json.loads(rep.to_json())
    assert data["schema"] == "denjoy-report/1"
    assert all(c["claim"] for c in data["checks"])


def test_sturmian():
    rep = run_sturmian(GOLDEN, 16, 500)
    assert rep.verdict == "pass"
    assert rep.series["complexity"][-1] == {"n": 16, "size": 17}
    rep = run_sturmian(GOLDEN, 2, 10)
    assert [row["size"] for row in rep.series["complexity"]] == [2, 3]
    assert run_sturmian(SQRT2M1, 8, 500).verdict == "pass"


def test_rational_check():
    for U, p, q, orbits in [(HALF, 1, 3, {"110": F(1, 2), "100": F(1, 2)}),
                            (U_((0, F(1, 3))), 0, 1, {"1": F(1, 3), "0": F(2, 3)}),
                            (HALF, 1, 2, {"10": 1})]:
        rep = run_rational_check(U, p, q)
        assert rep.verdict == "pass"
        assert orbit_oracle_decomposition(U, p, q) == orbits


def test_orbit_oracle_against_decomposition_with_irrational_endpoints():
    U = U_((0, A - F(1, 2)), (F(2, 3), A + F(1, 5)))
    for p, q in [(1, 2), (2, 5), (3, 7), (5, 8)]:
        assert orbit_oracle_decomposition(U, p, q) == rational_decomposition(U, p, q).orbits


def test_perturb():
    U = U_((0, A))
    for k in range(0, 13):
        assert dstar_distance(U, perturb(U, k)) == (F(1, 2 ** k) if k else 0)
    assert perturb(HALF, 1) is None
    assert perturb(U_((0, F(1, 8))), 2) == U_((0, F(3, 8)))


def test_continuity():
    rep = run_continuity(U_((0, A)), GOLDEN, 12, 8)
    assert rep.verdict == "pass"
    assert [row["k"] for row in rep.series["weak_distance"]] == list(range(1, 13))
    assert rep.series["weak_distance"][-1]["upper"] < F(1, 1000)
    lsc = next(c for c in rep.checks if c.name == "lower_semicontinuity")
    assert lsc.witness["k0"] <= 12


def test_ball():
    rep = run_ball(1, 4, GOLDEN)
    assert rep.verdict == "pass" and len(rep.series["distance_matrix"]) == 4
    rep = run_ball(2, 3, GOLDEN)
    assert rep.verdict == "pass" and len(rep.series["distance_matrix"]) == 9


def test_density():
    rep = run_density(["101", "1100", "1"], GOLDEN)
    assert rep.verdict == "pass"
    ups = [row["upper"] for row in rep.series["approximation"]]
    assert len(ups) == 4 and all(a > b for a, b in zip(ups, ups[1:]))


def test_rotation_numbers():
    rep = run_rotation_numbers(U_((0, A)), GOLDEN, 2048)
    assert rep.verdict == "pass"
    rep = run_rotation_numbers(U_((0, F(1, 4)), (F(1, 2), F(3, 4))), GOLDEN, 2048)
    intrinsic = next(c for c in rep.checks if c.name == "intrinsic").witness["intrinsic"]
    assert intrinsic == (A * 2).mod1()


def test_equal_measure_variant():
    for U in [HALF, U_((0, A)), U_((F(1, 10), F(9, 10)))]:
        V = equal_measure_variant(U)
        assert measure(V) == measure(U) and V != U


def test_identities_and_determinism():
    r1 = run_identities(GOLDEN, seed=7, count=5, depth=4)
    r2 = run_identities(GOLDEN, seed=7, count=5, depth=4)
    assert r1.verdict == "pass"
    assert r1.to_json() == r2.to_json()
    assert run_rational_check(HALF, 1, 3).to_json() == run_rational_check(HALF, 1, 3).to_json()
