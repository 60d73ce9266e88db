"""
Classify Helper test — regimes, the three upper bounds, the range-criterion
obstruction and the genericity verdict.

Run:
    python tests/classify_helper/test_classify_helper.py
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[2] / "src"))
from inoprodvec.classify_helper import IndeterminateError, InoClassifyHelper, Regime, Verdict
from inoprodvec.config_helper import Tolerances
from inoprodvec.fixture_helper import InoFixtureHelper
from inoprodvec.matrix_helper import InoMatrixHelper
from inoprodvec.numeric_helper import GaussianRational as G
from inoprodvec.solve_helper import InoSolveHelper
from inoprodvec.subspace_helper import InoSubspaceHelper, SubspacePair


def _self_conjugate_pair() -> SubspacePair:
    """E_perp is the entrywise conjugate of D_perp, so Q = -P."""
    A = [[1, 2], [3, G(1, 1)]]
    B = [[1, 2], [3, G(1, -1)]]
    return SubspacePair.create(2, 2, [A], [B])


def _rank_defect_pair() -> SubspacePair:
    """det L = (z+1)^2 (w-3); at z = -1 two rows of L vanish together."""
    return SubspacePair.create(
        2, 3,
        [[[1, 0, 0], [1, 0, 0]], [[0, 1, 0], [0, 1, 0]]],
        [[[0, 0, 1], [0, 0, -3]]],
    )


# ---------------------------------------------------------------------------
# regimes and bounds
# ---------------------------------------------------------------------------

def test_kiem_regime_examples():
    assert InoClassifyHelper.kiem_regime(3, 3, 1, 2).regime is Regime.INFINITE
    report = InoClassifyHelper.kiem_regime(2, 4, 3, 1)
    assert report.regime is Regime.BOUNDARY
    assert report.existence_coefficient == -2
    assert report.existence_nonzero
    assert InoClassifyHelper.kiem_regime(2, 3, 3, 3).regime is Regime.EMPTY
    assert report.to_json()["regime"] == "Boundary"


def test_existence_coefficient_m2_is_l_minus_k():
    for k in range(6):
        for l in range(6):
            assert InoClassifyHelper.existence_coefficient(2, k, l) == l - k


def test_milnor_bound():
    assert InoClassifyHelper.milnor_bound(2, 4) == 196
    assert InoClassifyHelper.milnor_bound(2, 2) == 18
    assert InoClassifyHelper.milnor_bound(3, 3) == 1875


def test_segre_degree():
    assert InoClassifyHelper.segre_degree(2, 4) == 4
    assert InoClassifyHelper.segre_degree(3, 3) == 6
    assert InoClassifyHelper.segre_degree(2, 3) == 3


def test_k2l2_bound():
    assert InoClassifyHelper.k2l2_bound(2, 1) == 5
    assert InoClassifyHelper.k2l2_bound(3, 1) == 10
    assert InoClassifyHelper.k2l2_bound(2, 2) == 8


def test_bounds_table_m2():
    table = InoClassifyHelper.bounds_table(2, 4)
    assert [(r["k"], r["l"]) for r in table] == [(0, 4), (1, 3), (2, 2), (3, 1), (4, 0)]
    assert [r["k2l2"] for r in table] == [16, 10, 8, 10, 16]
    assert [r["effective"] for r in table] == [4, 10, 8, 10, 4]
    assert all(r["milnor"] == 196 for r in table)
    table3 = InoClassifyHelper.bounds_table(2, 3)
    assert [r["effective"] for r in table3] == [3, 5, 5, 3]
    assert table3[1]["segre"] is None


def test_bounds_for_m3_has_no_k2l2():
    b = InoClassifyHelper.bounds(3, 3, 2, 2)
    assert b["k2l2"] is None
    assert b["segre"] is None
    assert b["effective"] == 1875


def test_milnor_dominates_k2l2():
    for n in range(2, 9):
        for row in InoClassifyHelper.bounds_table(2, n):
            assert row["milnor"] >= row["k2l2"]


def test_range_obstruction():
    pair = InoFixtureHelper.example_4_6()
    ob = InoClassifyHelper.range_obstruction(5, pair)
    assert ob.obstructed
    assert "dimension of D is 6" in ob.explanation
    ob = InoClassifyHelper.range_obstruction(2, InoFixtureHelper.diagonal(1, 1))
    assert ob.obstructed and ob.dim_d == 3
    ob = InoClassifyHelper.range_obstruction(8, InoFixtureHelper.example_4_6())
    assert not ob.obstructed
    assert ob.to_json()["dim_E"] == 6


# ---------------------------------------------------------------------------
# verdicts
# ---------------------------------------------------------------------------

def test_hakye_is_generic():
    pair = InoFixtureHelper.hakye_2x4(3, 1)
    res = InoClassifyHelper.algorithm1_classify(pair)
    assert res["success"]
    report = res["report"]
    assert report.verdict == Verdict.in_u()
    assert report.resultant_degree == 10
    assert report.roots_checked == 10
    assert report.bounds["k2l2"] == 10
    L = InoSubspaceHelper.build_linear_system(pair)
    for z in (G(0), G(2, -1), G(-7, 3)):
        M = L.evaluate_chart(z)
        assert InoMatrixHelper.det([row[:3] for row in M[:3]]) == -1


def test_diagonal_family_is_generic():
    for n in range(2, 6):
        for k in range(n + 1):
            report = InoClassifyHelper.classify(InoFixtureHelper.diagonal(k, n - k))
            assert report.verdict.is_in_u, (k, n - k)


def test_resultant_identically_zero():
    report = InoClassifyHelper.classify(_self_conjugate_pair())
    assert report.verdict == Verdict.not_in_u("ResultantIdenticallyZero")
    assert report.resultant_degree is None


def test_shared_factor_resultant_in_float_domain():
    # P = Q = (z - 1)(w - 1); specialising at z = 1 zeroes both polynomials
    pair = SubspacePair.create(2, 2, [[[1, 0], [-1, 0]]], [[[0, 1], [0, -1]]])
    for p in (pair, pair.approx()):
        report = InoClassifyHelper.classify(p)
        assert report.verdict == Verdict.not_in_u("ResultantIdenticallyZero")
        assert report.resultant_degree is None
        res = InoSolveHelper.count_product_vectors_2xn(p)
        assert res["success"]
        assert res["certificate"].count is None


def test_rank_defect_at_root():
    report = InoClassifyHelper.classify(_rank_defect_pair())
    assert report.verdict.status == Verdict.NOT_IN_U
    assert report.verdict.reason == "RankDefectAtRoot(-1)"


def test_other_regimes_are_routed_away():
    pair = InoFixtureHelper.random_pair(2, 3, 1, 1, 3)
    res = InoClassifyHelper.algorithm1_classify(pair)
    assert not res["success"]
    assert res["error_kind"] == "regime"
    assert res["report"].regime.regime is Regime.INFINITE
    assert "InfiniteRegime" in res["msg"]
    count = InoSolveHelper.count_product_vectors_2xn(pair)
    assert count["error_kind"] == "regime"


def test_random_boundary_cells_route_to_a_verdict():
    for n in range(2, 5):
        for k in range(n + 1):
            for seed in range(100):
                res = InoClassifyHelper.algorithm1_classify(InoFixtureHelper.random_pair(2, n, k, n - k, seed))
                report = res["report"]
                assert report.regime.regime is Regime.BOUNDARY
                assert report.verdict is not None


def test_random_pairs_are_generic():
    generic = 0
    for seed in range(7, 27):
        res = InoClassifyHelper.algorithm1_classify(InoFixtureHelper.random_pair(2, 4, 2, 2, seed))
        generic += 1 if res["success"] and res["report"].verdict.is_in_u else 0
    assert generic >= 19


def test_float_domain_agrees_with_exact():
    for pair in (InoFixtureHelper.hakye_2x4(3, 1), InoFixtureHelper.diagonal(2, 2)):
        exact = InoClassifyHelper.classify(pair)
        approx = InoClassifyHelper.classify(pair.approx())
        assert exact.verdict == approx.verdict


def test_classify_and_count_agree():
    pairs = [
        InoFixtureHelper.hakye_2x4(3, 1),
        InoFixtureHelper.diagonal(1, 2),
        _self_conjugate_pair(),
        _rank_defect_pair(),
    ] + [InoFixtureHelper.random_pair(2, 3, k, 3 - k, 40 + k) for k in range(4)]
    for pair in pairs:
        verdict = InoClassifyHelper.classify(pair).verdict
        assert InoSolveHelper.certify(pair).verdict == verdict


def test_rank_status_bands():
    tol = Tolerances()
    status, w = InoClassifyHelper.rank_status([[1, 0, 0], [0, 1, 0], [0, 0, 0]], "p", False, tol)
    assert status == "ok" and w.relative == 1.0
    status, _ = InoClassifyHelper.rank_status([[1, 0, 0], [0, 3e-8, 0], [0, 0, 0]], "p", False, tol)
    assert status == "ambiguous"
    status, _ = InoClassifyHelper.rank_status([[1, 0, 0], [0, 1e-12, 0], [0, 0, 0]], "p", False, tol)
    assert status == "deficient"
    status, w = InoClassifyHelper.rank_status([[G(1), 0], [0, 0]], "p", True, tol)
    assert status == "ok" and w.value == 1


def test_ambiguous_minor_raises():
    tol = Tolerances(tol_minor=1e-1, minor_band=1e9)
    try:
        InoClassifyHelper.classify(InoFixtureHelper.diagonal(1, 2).approx(), tol)
        assert False, "expected IndeterminateError"
    except IndeterminateError as e:
        assert "ambiguous" in str(e)
    res = InoClassifyHelper.algorithm1_classify(InoFixtureHelper.diagonal(1, 2).approx(), tol)
    assert res["error_kind"] == "indeterminate"
    assert res["report"].verdict.status == Verdict.INDETERMINATE


def test_report_json():
    data = InoClassifyHelper.classify(InoFixtureHelper.diagonal(1, 1)).to_json()
    assert data["regime"] == "Boundary"
    assert data["verdict"] == "InU"
    assert data["bounds"] == {"milnor": 18, "k2l2": 2, "segre": None, "effective": 2}
    assert data["roots_checked"] == 2
    assert len(data["witnesses"]) == 3


if __name__ == "__main__":
    test_kiem_regime_examples()
    test_existence_coefficient_m2_is_l_minus_k()
    test_milnor_bound()
    test_segre_degree()
    test_k2l2_bound()
    test_bounds_table_m2()
    test_bounds_for_m3_has_no_k2l2()
    test_milnor_dominates_k2l2()
    test_range_obstruction()
    test_hakye_is_generic()
    test_diagonal_family_is_generic()
    test_resultant_identically_zero()
    test_shared_factor_resultant_in_float_domain()
    test_rank_defect_at_root()
    test_other_regimes_are_routed_away()
    test_random_boundary_cells_route_to_a_verdict()
    test_random_pairs_are_generic()
    test_float_domain_agrees_with_exact()
    test_classify_and_count_agree()
    test_rank_status_bands()
    test_ambiguous_minor_raises()
    test_report_json()
    print("All tests passed!")
